#include "piclat/claims.hpp"

#include "piclat/errors.hpp"
#include "piclat/json_io.hpp"
#include "piclat/lattice.hpp"
#include "piclat/riemann_roch.hpp"
#include "piclat/vanishing.hpp"

#include <cctype>
#include <sstream>

namespace piclat {

ClaimLedger ClaimLedger::load(const std::filesystem::path& file) {
    nlohmann::json j = load_json_file(file);
    const std::string ctx = file.filename().string();
    ClaimLedger ledger;
    try {
        for (const auto& c : j.at("claims")) {
            Claim claim;
            claim.kind = c.at("kind").get<std::string>();
            claim.note = c.value("note", "");
            claim.body = c;
            ledger.claims.push_back(std::move(claim));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    return ledger;
}

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

DivisorClass resolve_name(const SurfaceModel& m, const Collection* col, const std::string& name) {
    if (m.has_basis_class(name))
        return m.basis_class(name);
    if (col != nullptr && col->has(name))
        return col->by_name(name);
    // primed components: the implicit third component of a degenerate fiber
    if (name.size() == 2 && name[1] == '\'') {
        ComponentCatalog cat(m);
        if (auto idx = cat.index_of(name))
            return cat.component(*idx);
    }
    throw ParseError("unknown class name \"" + name + "\"");
}

} // namespace

DivisorClass parse_class_expr(const SurfaceModel& m, const Collection* col,
                              const std::string& expr) {
    DivisorClass acc = DivisorClass::zero(m.rank());
    std::size_t i = 0;
    const std::size_t n = expr.size();
    bool any = false;
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(expr[i])))
            ++i;
        if (i == n)
            break;
        bool neg = false;
        if (expr[i] == '+' || expr[i] == '-') {
            neg = expr[i] == '-';
            ++i;
            while (i < n && std::isspace(static_cast<unsigned char>(expr[i])))
                ++i;
        }
        // optional rational coefficient
        std::string coef;
        while (i < n && (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '/'))
            coef += expr[i++];
        if (i < n && expr[i] == '*')
            ++i;
        while (i < n && std::isspace(static_cast<unsigned char>(expr[i])))
            ++i;
        std::string name;
        while (i < n && is_name_char(expr[i]))
            name += expr[i++];
        if (name.empty())
            throw ParseError("bad class expression \"" + expr + "\"");
        Rational c = coef.empty() ? Rational(1) : Rational::parse(coef);
        if (neg)
            c = -c;
        acc += c * resolve_name(m, col, name);
        any = true;
    }
    if (!any)
        throw ParseError("empty class expression");
    return acc;
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

RatMatrix claim_matrix(const SurfaceModel& m, const Collection* col, const std::string& which) {
    if (which == "gram")
        return m.gram().gram;
    if (which == "pic_basis_change")
        return m.pic_basis_change().matrix;
    if (which == "transformed_gram")
        return change_basis(m.gram(), m.pic_basis_change()).gram;
    if (which == "k0") {
        if (col == nullptr)
            throw ParseError("claim needs a collection for matrix \"k0\"");
        return k0_generation_check(m, *col).matrix;
    }
    throw ParseError("unknown matrix \"" + which + "\"");
}

ClaimResult run_one(const SurfaceModel& m, const Collection* col, const Claim& c) {
    ClaimResult res;
    const nlohmann::json& b = c.body;
    std::string expected = b.at("expected").is_string()
                               ? b.at("expected").get<std::string>()
                               : b.at("expected").dump();
    res.expected = expected;

    if (c.kind == "pairing") {
        DivisorClass lhs = parse_class_expr(m, col, b.at("lhs").get<std::string>());
        DivisorClass rhs = parse_class_expr(m, col, b.at("rhs").get<std::string>());
        Rational v = m.pair(lhs, rhs);
        res.computed = v.str();
        res.pass = v == Rational::parse(expected);
        res.description = c.note.empty()
                              ? "(" + b.at("lhs").get<std::string>() + ") . (" +
                                    b.at("rhs").get<std::string>() + ")"
                              : c.note;
    } else if (c.kind == "chi") {
        Rational v;
        std::string desc;
        if (b.contains("of")) {
            v = chi_of(m, parse_class_expr(m, col, b.at("of").get<std::string>()));
            desc = "chi(" + b.at("of").get<std::string>() + ")";
        } else {
            DivisorClass from = parse_class_expr(m, col, b.at("from").get<std::string>());
            DivisorClass to = parse_class_expr(m, col, b.at("to").get<std::string>());
            v = euler_pairing(m, from, to);
            desc = "chi(" + b.at("from").get<std::string>() + ", " +
                   b.at("to").get<std::string>() + ")";
        }
        res.computed = v.str();
        res.pass = v == Rational::parse(expected);
        res.description = c.note.empty() ? desc : c.note;
    } else if (c.kind == "span") {
        DivisorClass d = parse_class_expr(m, col, b.at("of").get<std::string>());
        bool v = in_vertical_span(m, d);
        res.computed = bool_str(v);
        res.pass = res.computed == expected;
        res.description =
            c.note.empty() ? "vertical span membership of " + b.at("of").get<std::string>()
                           : c.note;
    } else if (c.kind == "det") {
        Rational v = det(claim_matrix(m, col, b.at("matrix").get<std::string>()));
        res.computed = v.str();
        res.pass = v == Rational::parse(expected);
        res.description = c.note.empty() ? "det(" + b.at("matrix").get<std::string>() + ")"
                                         : c.note;
    } else if (c.kind == "signature") {
        Signature s = signature(claim_matrix(m, col, b.at("matrix").get<std::string>()));
        std::ostringstream os;
        os << "(" << s.positive << "," << s.negative << "," << s.zero << ")";
        res.computed = os.str();
        res.pass = res.computed == expected;
        res.description = c.note.empty()
                              ? "signature(" + b.at("matrix").get<std::string>() + ")"
                              : c.note;
    } else if (c.kind == "verdict") {
        const std::string check = b.at("check").get<std::string>();
        if (check == "numerically_exceptional") {
            if (col == nullptr)
                throw ParseError("verdict claim needs a collection");
            ExceptionalityVerdict v = verify_numerically_exceptional(m, *col);
            res.computed = v.pass ? "PASS" : "FAIL";
        } else if (check == "integral") {
            DivisorClass d = parse_class_expr(m, col, b.at("of").get<std::string>());
            res.computed = bool_str(m.is_integral(d));
        } else if (check == "unimodular_transformed") {
            res.computed = bool_str(is_unimodular(change_basis(m.gram(), m.pic_basis_change())));
        } else if (check == "parity_transformed") {
            res.computed =
                parity(change_basis(m.gram(), m.pic_basis_change())) == Parity::odd ? "odd"
                                                                                    : "even";
        } else if (check == "classification_transformed") {
            res.computed = classify_odd_unimodular(change_basis(m.gram(), m.pic_basis_change()));
        } else {
            throw ParseError("unknown verdict check \"" + check + "\"");
        }
        res.pass = res.computed == expected;
        res.description = c.note.empty() ? "verdict " + check : c.note;
    } else {
        throw ParseError("unknown claim kind \"" + c.kind + "\"");
    }
    return res;
}

} // namespace

std::vector<ClaimResult> run_claims(const SurfaceModel& m, const Collection* col,
                                    const ClaimLedger& ledger) {
    std::vector<ClaimResult> out;
    out.reserve(ledger.claims.size());
    for (const Claim& c : ledger.claims)
        out.push_back(run_one(m, col, c));
    return out;
}

} // namespace piclat
