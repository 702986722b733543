#include "piclat/vanishing.hpp"

#include "piclat/errors.hpp"
#include "piclat/riemann_roch.hpp"

#include <algorithm>
#include <map>

namespace piclat {

ComponentCatalog::ComponentCatalog(const SurfaceModel& m) {
    const DivisorClass fiber = m.fiber_class();
    for (const FiberDescriptor& f : m.fibers()) {
        if (f.components.size() != 2)
            continue;
        DivisorClass c1 = m.basis_class(f.components[0]);
        DivisorClass c2 = m.basis_class(f.components[1]);
        names_.push_back(f.components[0]);
        classes_.push_back(c1);
        names_.push_back(f.components[1]);
        classes_.push_back(c2);
        names_.push_back(f.components[0].substr(0, 1) + "'");
        classes_.push_back(fiber - c1 - c2);
    }
    for (const DivisorClass& c : classes_) {
        if (m.pair(c, c) != Rational(-2) || !m.k_degree(c).is_zero())
            throw std::domain_error("ComponentCatalog: component fails the (-2, K-trivial) check");
    }
}

std::optional<std::size_t> ComponentCatalog::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

std::string rule_name(Rule r) {
    switch (r) {
    case Rule::required_missing: return "REQUIRED_MISSING";
    case Rule::fiber_multiple: return "FIBER_MULTIPLE";
    case Rule::horizontal_neg: return "HORIZONTAL_NEG";
    case Rule::omega_lt_minus2: return "OMEGA_LT_MINUS2";
    case Rule::omega_rat_ell: return "OMEGA_RAT_ELL";
    }
    return "?";
}

std::string witness_status_name(WitnessStatus s) {
    switch (s) {
    case WitnessStatus::excluded_k_negative: return "EXCLUDED_K_NEGATIVE";
    case WitnessStatus::excluded_not_vertical: return "EXCLUDED_NOT_VERTICAL";
    case WitnessStatus::axiom_vertical_span: return "AXIOM_VERTICAL_SPAN";
    case WitnessStatus::axiom_k_degree_2: return "AXIOM_K_DEGREE_2";
    case WitnessStatus::swept: return "SWEPT";
    case WitnessStatus::bound_insufficient: return "BOUND_INSUFFICIENT";
    }
    return "?";
}

std::vector<std::size_t> required_components(const SurfaceModel& m, const ComponentCatalog& cat,
                                             const DivisorClass& z) {
    std::vector<std::size_t> req;
    for (std::size_t i = 0; i < cat.size(); ++i)
        if (m.pair(z, cat.component(i)).is_negative())
            req.push_back(i);
    return req;
}

std::vector<Decomposition> enumerate_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound) {
    std::vector<std::size_t> all(cat.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return enumerate_decompositions(m, cat, z, bound, all);
}

std::vector<Decomposition> enumerate_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound,
                                                    const std::vector<std::size_t>& support) {
    if (bound < 0)
        throw std::domain_error("enumerate_decompositions: negative bound");
    std::vector<std::size_t> req = required_components(m, cat, z);
    std::vector<Decomposition> out;
    // required components outside the support can never be satisfied
    for (std::size_t r : req)
        if (std::find(support.begin(), support.end(), r) == support.end())
            return out;

    std::vector<long> mult(cat.size(), 0);
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == support.size()) {
            DivisorClass res = z;
            for (std::size_t i = 0; i < cat.size(); ++i)
                if (mult[i] != 0)
                    res -= Rational(mult[i]) * cat.component(i);
            out.push_back({z, mult, std::move(res)});
            return;
        }
        std::size_t idx = support[k];
        bool required = std::find(req.begin(), req.end(), idx) != req.end();
        for (long v = required ? 1 : 0; v <= bound; ++v) {
            mult[idx] = v;
            self(self, k + 1);
        }
        mult[idx] = 0;
    };
    rec(rec, 0);
    return out;
}

Verdict classify(const SurfaceModel& m, const ComponentCatalog& cat, const Decomposition& d) {
    // required presence
    for (std::size_t i = 0; i < cat.size(); ++i)
        if (m.pair(d.target, cat.component(i)).is_negative() && d.multiplicities[i] < 1)
            return {true, Rule::required_missing};
    // full fiber dominated by the vertical part
    for (std::size_t f = 0; f < cat.fiber_count(); ++f) {
        auto mem = cat.fiber_members(f);
        if (d.multiplicities[mem[0]] >= 1 && d.multiplicities[mem[1]] >= 1 &&
            d.multiplicities[mem[2]] >= 1)
            return {true, Rule::fiber_multiple};
    }
    for (std::size_t i = 0; i < cat.size(); ++i)
        if (m.pair(d.residual, cat.component(i)).is_negative())
            return {true, Rule::horizontal_neg};
    Rational omega = m.omega_degree(d.residual);
    if (omega < Rational(-2))
        return {true, Rule::omega_lt_minus2};
    if (omega == Rational(-2) || omega.is_zero())
        return {true, Rule::omega_rat_ell};
    return {false, Rule::required_missing};
}

namespace {

// Per-fiber factorization: components of distinct fibers are orthogonal, so
// a decomposition's verdict data splits into per-fiber triples
//   (dominates the fiber?, some residual pairing negative?, s = v.v - 2 z.v)
// and the dualizing degree of the residual is omega(z) + sum of the s.
struct FiberTriples {
    std::vector<std::uint64_t> plain; // per (full, neg) class counts
    // s-histogram over triples that are neither full nor negative
    std::map<mpz_class, std::uint64_t> shist;
    std::uint64_t total = 0, full = 0, neg_not_full = 0;
};

FiberTriples fiber_triples(const SurfaceModel& m, const ComponentCatalog& cat,
                           const DivisorClass& z, const std::vector<std::size_t>& req,
                           std::size_t f, long bound) {
    FiberTriples out;
    auto mem = cat.fiber_members(f);
    std::array<bool, 3> required{};
    for (int t = 0; t < 3; ++t)
        required[t] = std::find(req.begin(), req.end(), mem[t]) != req.end();
    // pairing data within the fiber
    std::array<Rational, 3> zc;
    std::array<std::array<Rational, 3>, 3> cc;
    for (int a = 0; a < 3; ++a) {
        zc[a] = m.pair(z, cat.component(mem[a]));
        for (int b = 0; b < 3; ++b)
            cc[a][b] = m.pair(cat.component(mem[a]), cat.component(mem[b]));
    }
    for (long x = required[0] ? 1 : 0; x <= bound; ++x)
        for (long y = required[1] ? 1 : 0; y <= bound; ++y)
            for (long w = required[2] ? 1 : 0; w <= bound; ++w) {
                ++out.total;
                const bool full = x >= 1 && y >= 1 && w >= 1;
                if (full) {
                    ++out.full;
                    continue;
                }
                const long mult[3] = {x, y, w};
                bool neg = false;
                Rational vv(0), zv(0);
                for (int a = 0; a < 3; ++a) {
                    Rational res = zc[a];
                    for (int b = 0; b < 3; ++b)
                        res -= Rational(mult[b]) * cc[a][b];
                    if (res.is_negative())
                        neg = true;
                    zv += Rational(mult[a]) * zc[a];
                    for (int b = 0; b < 3; ++b)
                        vv += Rational(mult[a]) * Rational(mult[b]) * cc[a][b];
                }
                if (neg) {
                    ++out.neg_not_full;
                    continue;
                }
                Rational s = vv - Rational(2) * zv; // integer: catalog is integral
                ++out.shist[s.to_integer()];
            }
    return out;
}

} // namespace

VerdictCounts count_verdicts(const SurfaceModel& m, const ComponentCatalog& cat,
                             const DivisorClass& z, long bound) {
    if (bound < 0)
        throw std::domain_error("count_verdicts: negative bound");
    std::vector<std::size_t> req = required_components(m, cat, z);
    const std::size_t nf = cat.fiber_count();
    std::vector<FiberTriples> per;
    per.reserve(nf);
    for (std::size_t f = 0; f < nf; ++f)
        per.push_back(fiber_triples(m, cat, z, req, f, bound));

    VerdictCounts counts;
    std::uint64_t total = 1, not_full = 1, clean = 1;
    for (const FiberTriples& p : per) {
        total *= p.total;
        not_full *= p.total - p.full;
        clean *= p.total - p.full - p.neg_not_full;
    }
    counts.fiber_multiple = total - not_full;
    counts.horizontal_neg = not_full - clean;

    // convolve the s-histograms of the clean triples
    std::map<mpz_class, std::uint64_t> hist{{mpz_class(0), 1}};
    for (const FiberTriples& p : per) {
        std::map<mpz_class, std::uint64_t> next;
        for (const auto& [s0, c0] : hist)
            for (const auto& [s1, c1] : p.shist)
                next[s0 + s1] += c0 * c1;
        hist = std::move(next);
    }
    const Rational omega_z = m.omega_degree(z);
    for (const auto& [s, c] : hist) {
        Rational omega = omega_z + Rational(s);
        if (omega < Rational(-2))
            counts.omega_lt_minus2 += c;
        else if (omega == Rational(-2) || omega.is_zero())
            counts.omega_rat_ell += c;
        else
            counts.surviving += c;
    }
    return counts;
}

std::vector<Decomposition> surviving_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound) {
    // Explicit scan, pruned fiber by fiber: skip any fiber triple that is
    // already full or negative, mirroring the counting path exactly.
    std::vector<std::size_t> req = required_components(m, cat, z);
    std::vector<Decomposition> out;
    std::vector<long> mult(cat.size(), 0);
    const std::size_t nf = cat.fiber_count();
    auto rec = [&](auto&& self, std::size_t f) -> void {
        if (f == nf) {
            DivisorClass res = z;
            for (std::size_t i = 0; i < cat.size(); ++i)
                if (mult[i] != 0)
                    res -= Rational(mult[i]) * cat.component(i);
            Decomposition d{z, mult, std::move(res)};
            if (!classify(m, cat, d).excluded)
                out.push_back(std::move(d));
            return;
        }
        auto mem = cat.fiber_members(f);
        std::array<bool, 3> required{};
        for (int t = 0; t < 3; ++t)
            required[t] = std::find(req.begin(), req.end(), mem[t]) != req.end();
        for (long x = required[0] ? 1 : 0; x <= bound; ++x)
            for (long y = required[1] ? 1 : 0; y <= bound; ++y)
                for (long w = required[2] ? 1 : 0; w <= bound; ++w) {
                    if (x >= 1 && y >= 1 && w >= 1)
                        continue; // full fiber: never survives
                    mult[mem[0]] = x;
                    mult[mem[1]] = y;
                    mult[mem[2]] = w;
                    bool neg = false;
                    for (int a = 0; a < 3 && !neg; ++a) {
                        Rational res = m.pair(z, cat.component(mem[a]));
                        for (int b = 0; b < 3; ++b)
                            res -= Rational(mult[mem[b]]) *
                                   m.pair(cat.component(mem[a]), cat.component(mem[b]));
                        if (res.is_negative())
                            neg = true;
                    }
                    if (neg)
                        continue;
                    self(self, f + 1);
                }
        mult[mem[0]] = mult[mem[1]] = mult[mem[2]] = 0;
    };
    rec(rec, 0);
    return out;
}

bool ExtVanishingReport::axiom_closed() const {
    return h0.status == WitnessStatus::axiom_vertical_span ||
           h0.status == WitnessStatus::axiom_k_degree_2 ||
           h2.status == WitnessStatus::axiom_vertical_span ||
           h2.status == WitnessStatus::axiom_k_degree_2;
}

std::uint64_t ExtVanishingReport::surviving() const {
    std::uint64_t s = 0;
    if (h0.status == WitnessStatus::swept)
        s += h0.counts.surviving;
    if (h2.status == WitnessStatus::swept)
        s += h2.counts.surviving;
    return s;
}

namespace {

WitnessReport analyze_witness(const SurfaceModel& m, const ComponentCatalog& cat,
                              const DivisorClass& z, long bound) {
    WitnessReport rep;
    rep.witness = z;
    rep.k_degree = m.k_degree(z);
    if (rep.k_degree.is_negative()) {
        // model axiom: every effective class splits into vertical parts of
        // K-degree 0 and horizontal parts of positive K-degree
        rep.status = WitnessStatus::excluded_k_negative;
        return rep;
    }
    if (rep.k_degree.is_zero()) {
        // an effective representative would be purely vertical
        rep.status = in_vertical_span(m, z) ? WitnessStatus::axiom_vertical_span
                                            : WitnessStatus::excluded_not_vertical;
        return rep;
    }
    if (rep.k_degree >= Rational(2)) {
        // a horizontal part of K-degree 2 may split; outside the rule set
        rep.status = WitnessStatus::axiom_k_degree_2;
        return rep;
    }
    std::vector<std::size_t> req = required_components(m, cat, z);
    if (!req.empty() && bound < 1) {
        rep.status = WitnessStatus::bound_insufficient;
        return rep;
    }
    rep.status = WitnessStatus::swept;
    rep.counts = count_verdicts(m, cat, z, bound);
    if (rep.counts.surviving > 0)
        rep.survivors = surviving_decompositions(m, cat, z, bound);
    return rep;
}

} // namespace

ExtVanishingReport ext_vanishing_report(const SurfaceModel& m, const ComponentCatalog& cat,
                                        const DivisorClass& l1, const DivisorClass& l2,
                                        long bound) {
    ExtVanishingReport rep;
    rep.chi = euler_pairing(m, l1, l2);
    rep.chi_zero = rep.chi.is_zero();
    rep.h0 = analyze_witness(m, cat, l2 - l1, bound);
    rep.h2 = analyze_witness(m, cat, m.canonical() + l1 - l2, bound);
    return rep;
}

SweepReport collection_sweep(const SurfaceModel& m, const Collection& col, long bound) {
    ComponentCatalog cat(m);
    SweepReport rep;
    for (std::size_t i = 1; i < col.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            SweepPair p;
            p.i = i + 1;
            p.j = j + 1;
            p.report = ext_vanishing_report(m, cat, col.cls(i), col.cls(j), bound);
            rep.surviving_total += p.report.surviving();
            if (p.report.axiom_closed())
                rep.axiom_closed_pairs.emplace_back(p.i, p.j);
            if (p.report.h0.status == WitnessStatus::bound_insufficient ||
                p.report.h2.status == WitnessStatus::bound_insufficient)
                rep.bound_insufficient_pairs.emplace_back(p.i, p.j);
            rep.pairs.push_back(std::move(p));
        }
    return rep;
}

} // namespace piclat
