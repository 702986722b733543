// piclat: exact-arithmetic verifier for the Picard-lattice computations of a
// (2,3)-Dolgachev elliptic surface. Every number printed is an exact
// rational; identical inputs produce byte-identical reports.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage or parse error,
// 3 bounded search exhausted.

#include "piclat/claims.hpp"
#include "piclat/collection.hpp"
#include "piclat/errors.hpp"
#include "piclat/json_io.hpp"
#include "piclat/lattice.hpp"
#include "piclat/monodromy.hpp"
#include "piclat/riemann_roch.hpp"
#include "piclat/surface.hpp"
#include "piclat/vanishing.hpp"
#include "piclat/xmodel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace piclat;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExhausted = 3;

void emit(const json& doc, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_lattice_info(const std::string& model_path, bool as_json) {
    SurfaceModel m = SurfaceModel::load(model_path);
    Lattice base = m.gram();
    Lattice transformed = change_basis(base, m.pic_basis_change());

    Rational det_gram = det(base.gram);
    Rational det_m = det(m.pic_basis_change().matrix);
    Rational det_t = det(transformed.gram);
    Signature sig = signature(base.gram);
    Signature sig_t = signature(transformed.gram);
    bool t_integral = transformed.is_integral();
    bool t_unimodular = t_integral && is_unimodular(transformed);
    bool t_odd = t_integral && parity(transformed) == Parity::odd;
    std::string cls;
    try {
        cls = classify_odd_unimodular(transformed);
    } catch (const std::exception& e) {
        cls = std::string("unclassifiable: ") + e.what();
    }
    Report validation = m.validate();

    bool ok = t_integral && t_unimodular && t_odd && validation.all_pass() &&
              sig_t.positive == 1 && sig_t.zero == 0;

    json doc{{"det_gram", det_gram.str()},
             {"det_basis_change", det_m.str()},
             {"det_transformed", det_t.str()},
             {"signature_gram", {sig.positive, sig.negative, sig.zero}},
             {"signature_transformed", {sig_t.positive, sig_t.negative, sig_t.zero}},
             {"transformed_integral", t_integral},
             {"transformed_unimodular", t_unimodular},
             {"transformed_parity", t_odd ? "odd" : "even"},
             {"classification", cls},
             {"model_valid", validation.all_pass()},
             {"pass", ok}};
    std::ostringstream os;
    os << "det(gram)              = " << det_gram << "\n"
       << "det(basis change)      = " << det_m << "\n"
       << "det(transformed gram)  = " << det_t << "\n"
       << "signature(gram)        = (" << sig.positive << "," << sig.negative << ","
       << sig.zero << ")\n"
       << "signature(transformed) = (" << sig_t.positive << "," << sig_t.negative << ","
       << sig_t.zero << ")\n"
       << "transformed integral   = " << (t_integral ? "yes" : "no") << "\n"
       << "transformed unimodular = " << (t_unimodular ? "yes" : "no") << "\n"
       << "transformed parity     = " << (t_odd ? "odd" : "even") << "\n"
       << "classification         = " << cls << "\n"
       << "model validation       = " << (validation.all_pass() ? "pass" : "FAIL") << "\n";
    for (const std::string& f : validation.failures())
        os << "  failed: " << f << "\n";
    os << (ok ? "PASS" : "FAIL") << "\n";
    emit(doc, as_json, os.str());
    return ok ? kExitPass : kExitFail;
}

int cmd_verify_collection(const std::string& model_path, const std::string& col_path,
                          long bound, bool as_json) {
    SurfaceModel m = SurfaceModel::load(model_path);
    Collection col = Collection::load(col_path);

    json doc;
    std::ostringstream os;
    std::string first_failure;

    bool integral = true;
    for (std::size_t i = 0; i < col.size() && integral; ++i)
        if (!m.is_integral(col.cls(i))) {
            integral = false;
            first_failure = "integrality of " + col.name(i);
        }
    doc["all_integral"] = integral;
    os << "integrality            = " << (integral ? "pass" : "FAIL") << "\n";

    ExceptionalityVerdict ev = verify_numerically_exceptional(m, col);
    doc["numerically_exceptional"] = ev.pass;
    if (!ev.pass) {
        doc["first_failure"] = {{"i", ev.i}, {"j", ev.j}, {"value", ev.value.str()}};
        if (first_failure.empty())
            first_failure = "chi matrix at (" + std::to_string(ev.i) + "," +
                            std::to_string(ev.j) + ") = " + ev.value.str();
    }
    os << "numerically exceptional = " << (ev.pass ? "PASS" : "FAIL");
    if (!ev.pass)
        os << " at (" << ev.i << "," << ev.j << ") value " << ev.value;
    os << "\n";

    bool k0_ok = false;
    std::string k0_det = "-";
    if (integral && col.size() == m.rank() + 2) {
        K0Check k0 = k0_generation_check(m, col);
        k0_ok = k0.generates;
        k0_det = k0.det.str();
        if (!k0_ok && first_failure.empty())
            first_failure = "K-group determinant " + k0_det;
    } else if (first_failure.empty() && col.size() != m.rank() + 2) {
        first_failure = "collection size";
    }
    doc["k0_det"] = k0_det;
    doc["k0_generates"] = k0_ok;
    os << "K-group det            = " << k0_det << " (" << (k0_ok ? "unimodular" : "FAIL")
       << ")\n";

    std::vector<PairScanHit> hits = pair_scan(m, col);
    json scan = json::array();
    os << "vertical-span scan     = " << hits.size() << " pair(s)\n";
    for (const PairScanHit& h : hits) {
        scan.push_back({{"i", h.i}, {"j", h.j}, {"difference", h.difference.str()}});
        os << "  (" << h.i << "," << h.j << ")  difference " << h.difference.str() << "\n";
    }
    doc["pair_scan"] = scan;

    SweepReport sweep = collection_sweep(m, col, bound);
    doc["sweep_bound"] = bound;
    doc["sweep_surviving"] = sweep.surviving_total;
    json axc = json::array();
    for (auto [i, j] : sweep.axiom_closed_pairs)
        axc.push_back({i, j});
    doc["axiom_closed_pairs"] = axc;
    json bip = json::array();
    for (auto [i, j] : sweep.bound_insufficient_pairs)
        bip.push_back({i, j});
    doc["bound_insufficient_pairs"] = bip;
    os << "vanishing sweep bound  = " << bound << "\n"
       << "surviving decompositions = " << sweep.surviving_total << "\n"
       << "axiom-closed pairs     = " << sweep.axiom_closed_pairs.size() << "\n";
    for (auto [i, j] : sweep.axiom_closed_pairs)
        os << "  axiom-closed (" << i << "," << j << ")\n";
    if (!sweep.bound_insufficient_pairs.empty()) {
        os << "bound-insufficient pairs = " << sweep.bound_insufficient_pairs.size() << "\n";
        if (first_failure.empty())
            first_failure = "bound " + std::to_string(bound) +
                            " cannot place required components";
    }
    if (sweep.surviving_total > 0 && first_failure.empty())
        first_failure = "surviving decompositions in the sweep";

    bool ok = integral && ev.pass && k0_ok && sweep.surviving_total == 0 &&
              sweep.bound_insufficient_pairs.empty();
    doc["pass"] = ok;
    os << (ok ? "PASS" : "FAIL: " + first_failure) << "\n";
    emit(doc, as_json, os.str());
    return ok ? kExitPass : kExitFail;
}

int cmd_run_claims(const std::string& model_path, const std::string& col_path,
                   const std::string& claims_path, bool as_json) {
    SurfaceModel m = SurfaceModel::load(model_path);
    Collection col;
    const Collection* colp = nullptr;
    if (!col_path.empty()) {
        col = Collection::load(col_path);
        colp = &col;
    }
    ClaimLedger ledger = ClaimLedger::load(claims_path);
    std::vector<ClaimResult> results = run_claims(m, colp, ledger);

    std::size_t failed = 0;
    json items = json::array();
    std::ostringstream os;
    for (const ClaimResult& r : results) {
        if (!r.pass)
            ++failed;
        items.push_back({{"description", r.description},
                         {"pass", r.pass},
                         {"computed", r.computed},
                         {"expected", r.expected}});
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.description << "  computed " << r.computed
           << "  expected " << r.expected << "\n";
    }
    os << results.size() << " claim(s), " << failed << " failure(s)\n";
    json doc{{"claims", items}, {"total", results.size()}, {"failed", failed},
             {"pass", failed == 0}};
    emit(doc, as_json, os.str());
    return failed == 0 ? kExitPass : kExitFail;
}

int cmd_derive_table(const std::string& xmodel_path, const std::string& model_path,
                     bool as_json) {
    XModel x = XModel::load(xmodel_path);
    SurfaceModel m = SurfaceModel::load(model_path);

    std::vector<XModel::TableEntry> table = x.derive_table(m);
    XModel::Div3Certificate cert = x.div3_certificate();
    bool fiber_sum_ok = x.fiber_component_sum() == x.fiber_class();

    std::size_t mismatches = 0;
    json rows = json::array();
    std::ostringstream os;
    for (const auto& e : table) {
        if (!e.match)
            ++mismatches;
        rows.push_back({{"a", e.a},
                        {"b", e.b},
                        {"derived", e.derived.str()},
                        {"expected", e.expected.str()},
                        {"match", e.match}});
        os << (e.match ? "PASS" : "FAIL") << "  (" << e.a << "," << e.b << ")  derived "
           << e.derived << "  expected " << e.expected << "\n";
    }
    os << table.size() << " pairing(s), " << mismatches << " mismatch(es)\n";
    os << "branch divisor divisible by 3 = " << (cert.divisible ? "yes" : "NO") << "\n";
    if (cert.divisible)
        os << "  witness " << cert.witness.str() << "\n";
    os << "degenerate fiber component sum = " << (fiber_sum_ok ? "pass" : "FAIL") << "\n";

    bool ok = mismatches == 0 && cert.divisible && fiber_sum_ok;
    json doc{{"table", rows},
             {"mismatches", mismatches},
             {"div3", cert.divisible},
             {"div3_witness", cert.divisible ? cert.witness.str() : ""},
             {"fiber_component_sum", fiber_sum_ok},
             {"pass", ok}};
    os << (ok ? "PASS" : "FAIL") << "\n";
    emit(doc, as_json, os.str());
    return ok ? kExitPass : kExitFail;
}

int cmd_vial_search(const std::string& model_path, long height, bool as_json) {
    SurfaceModel m = SurfaceModel::load(model_path);
    Collection col;
    try {
        col = vial_search(m, height);
    } catch (const SearchExhaustedError& e) {
        json doc{{"found", false}, {"height", height}, {"reason", e.what()}};
        emit(doc, as_json, std::string("bounded-search-exhausted: ") + e.what() + "\n");
        return kExitExhausted;
    }
    json members = json::array();
    std::ostringstream os;
    os << "collection found (height " << height << "), verified:\n";
    for (const auto& [name, cls] : col.members) {
        members.push_back({{"name", name}, {"coords", cls.str()}});
        os << "  " << name << " = " << cls.str() << "\n";
    }
    os << "PASS\n";
    json doc{{"found", true}, {"height", height}, {"members", members}, {"pass", true}};
    emit(doc, as_json, os.str());
    return kExitPass;
}

int cmd_decompose(const std::string& model_path, const std::string& col_path,
                  const std::string& expr, long bound, const std::string& support_csv,
                  bool as_json) {
    SurfaceModel m = SurfaceModel::load(model_path);
    Collection col;
    const Collection* colp = nullptr;
    if (!col_path.empty()) {
        col = Collection::load(col_path);
        colp = &col;
    }
    DivisorClass z = parse_class_expr(m, colp, expr);
    ComponentCatalog cat(m);

    std::vector<std::size_t> support;
    if (support_csv.empty()) {
        for (std::size_t i = 0; i < cat.size(); ++i)
            support.push_back(i);
    } else {
        std::istringstream in(support_csv);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            auto idx = cat.index_of(tok);
            if (!idx)
                throw ParseError("unknown catalog component \"" + tok + "\"");
            support.push_back(*idx);
        }
    }

    std::vector<std::size_t> req = required_components(m, cat, z);
    std::vector<Decomposition> ds = enumerate_decompositions(m, cat, z, bound, support);

    json items = json::array();
    std::ostringstream os;
    os << "target " << expr << " = " << z.str() << "\n";
    os << "required components:";
    for (std::size_t r : req)
        os << " " << cat.name(r);
    os << "\n";
    VerdictCounts counts;
    for (const Decomposition& d : ds) {
        Verdict v = classify(m, cat, d);
        std::string verdict = v.excluded ? "EXCLUDED(" + rule_name(v.rule) + ")" : "SURVIVING";
        switch (v.excluded ? v.rule : Rule::required_missing) {
        case Rule::fiber_multiple: counts.fiber_multiple += v.excluded; break;
        case Rule::horizontal_neg: counts.horizontal_neg += v.excluded; break;
        case Rule::omega_lt_minus2: counts.omega_lt_minus2 += v.excluded; break;
        case Rule::omega_rat_ell: counts.omega_rat_ell += v.excluded; break;
        case Rule::required_missing: break;
        }
        if (!v.excluded)
            ++counts.surviving;
        std::ostringstream mult;
        for (std::size_t i = 0; i < cat.size(); ++i)
            if (d.multiplicities[i] != 0)
                mult << " " << d.multiplicities[i] << "*" << cat.name(i);
        items.push_back({{"multiplicities", mult.str()},
                         {"residual", d.residual.str()},
                         {"residual_self", m.pair(d.residual, d.residual).str()},
                         {"omega", m.omega_degree(d.residual).str()},
                         {"verdict", verdict}});
        os << verdict << "  [" << mult.str() << " ]  residual^2 "
           << m.pair(d.residual, d.residual) << "  omega " << m.omega_degree(d.residual)
           << "\n";
    }
    os << ds.size() << " decomposition(s), surviving " << counts.surviving << "\n";
    json doc{{"target", z.str()},
             {"decompositions", items},
             {"surviving", counts.surviving}};
    emit(doc, as_json, os.str());
    return counts.surviving == 0 ? kExitPass : kExitFail;
}

std::vector<FiberConfigEntry> parse_fiber_csv(const std::string& csv) {
    std::vector<FiberConfigEntry> cfg;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ','))
        cfg.push_back({tok, 1});
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Picard-lattice verifier for a (2,3)-Dolgachev surface"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string model_path, col_path, claims_path, xmodel_path;
    long bound = 4, height = 4;

    auto* info = app.add_subcommand("lattice-info", "Gram determinants, signature, parity, "
                                                    "unimodularity of the bundled lattice");
    info->add_option("--model", model_path, "surface model file")->required();

    auto* ver = app.add_subcommand("verify-collection",
                                   "integrality, chi matrix, K-group determinant, span scan "
                                   "and the vanishing sweep");
    ver->add_option("--model", model_path)->required();
    ver->add_option("--collection", col_path)->required();
    ver->add_option("--bound", bound, "multiplicity bound for the sweep (default 4)");

    auto* rc = app.add_subcommand("run-claims", "execute the claim ledger");
    rc->add_option("--model", model_path)->required();
    rc->add_option("--collection", col_path);
    rc->add_option("--claims", claims_path)->required();

    auto* dt = app.add_subcommand("derive-table",
                                  "derive the intersection table from the blow-up model");
    dt->add_option("--xmodel", xmodel_path)->required();
    dt->add_option("--model", model_path)->required();

    auto* vs = app.add_subcommand("vial-search",
                                  "search for a diagonal basis realizing the canonical relation "
                                  "and assemble the induced collection");
    vs->add_option("--model", model_path)->required();
    vs->add_option("--height", height, "coefficient bound for the search (default 4)");

    std::string expr, support_csv;
    auto* dec = app.add_subcommand("decompose",
                                   "enumerate and classify vertical decompositions of a class");
    dec->add_option("--model", model_path)->required();
    dec->add_option("--collection", col_path);
    dec->add_option("--class", expr, "target class expression, e.g. \"-A2\"")->required();
    dec->add_option("--bound", bound, "multiplicity bound (default 4)");
    dec->add_option("--support", support_csv, "comma-separated catalog components");

    auto* mono = app.add_subcommand("monodromy", "SL2(Z) and fiber-configuration utilities");
    mono->require_subcommand(1);
    unsigned level = 3;
    std::string quad;
    std::vector<std::string> quads;
    auto* ing = mono->add_subcommand("in-gamma", "principal congruence subgroup membership");
    ing->add_option("level", level)->required();
    ing->add_option("matrix", quad, "a,b,c,d")->required();
    auto* idx = mono->add_subcommand("index", "index of the principal congruence subgroup");
    idx->add_option("level", level)->required();
    auto* rel = mono->add_subcommand("relation", "check that the ordered product is trivial");
    rel->add_option("matrices", quads, "each a,b,c,d")->required();
    std::string fibers_csv;
    long c2 = 12;
    auto* eul = mono->add_subcommand("euler", "fiber Euler-number accounting");
    eul->add_option("--fibers", fibers_csv, "comma-separated types, e.g. I9,I1,I1,I1")
        ->required();
    eul->add_option("--c2", c2, "expected second Chern number (default 12)");
    long chi_o = 1;
    std::string mults_csv;
    auto* can = mono->add_subcommand("canonical", "fiber coefficient of the canonical class");
    can->add_option("--chi", chi_o, "chi of the structure sheaf (default 1)");
    can->add_option("--mults", mults_csv, "comma-separated multiple-fiber multiplicities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*info)
            return cmd_lattice_info(model_path, as_json);
        if (*ver)
            return cmd_verify_collection(model_path, col_path, bound, as_json);
        if (*rc)
            return cmd_run_claims(model_path, col_path, claims_path, as_json);
        if (*dt)
            return cmd_derive_table(xmodel_path, model_path, as_json);
        if (*vs)
            return cmd_vial_search(model_path, height, as_json);
        if (*dec)
            return cmd_decompose(model_path, col_path, expr, bound, support_csv, as_json);
        if (*mono) {
            if (*ing) {
                bool member = in_gamma(level, SL2::parse(quad));
                std::cout << (member ? "true" : "false") << "\n";
                return kExitPass;
            }
            if (*idx) {
                std::cout << gamma_index(level).get_str() << "\n";
                return kExitPass;
            }
            if (*rel) {
                std::vector<SL2> gs;
                for (const std::string& q : quads)
                    gs.push_back(SL2::parse(q));
                bool ok = relation_check(gs);
                std::cout << (ok ? "true" : "false") << "\n";
                return ok ? kExitPass : kExitFail;
            }
            if (*eul) {
                bool ok = euler_check(parse_fiber_csv(fibers_csv), c2);
                std::cout << (ok ? "true" : "false") << "\n";
                return ok ? kExitPass : kExitFail;
            }
            if (*can) {
                std::vector<long> mults;
                std::istringstream in(mults_csv);
                std::string tok;
                while (std::getline(in, tok, ','))
                    mults.push_back(std::stol(tok));
                std::cout << canonical_formula(chi_o, mults) << "\n";
                return kExitPass;
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SearchExhaustedError& e) {
        std::cerr << "bounded-search-exhausted: " << e.what() << "\n";
        return kExitExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
