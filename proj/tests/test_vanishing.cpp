#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "piclat/collection.hpp"
#include "piclat/riemann_roch.hpp"
#include "piclat/surface.hpp"
#include "piclat/vanishing.hpp"

#include "testutil.hpp"

#include <set>

using namespace piclat;
using namespace piclat::testutil;

namespace {

SurfaceModel bundled() { return SurfaceModel::load(data_file("dolgachev23.json")); }

Collection thm_collection() { return Collection::load(data_file("thm24_collection.json")); }

std::set<std::string> required_names(const SurfaceModel& m, const ComponentCatalog& cat,
                                     const DivisorClass& z) {
    std::set<std::string> names;
    for (std::size_t i : required_components(m, cat, z))
        names.insert(cat.name(i));
    return names;
}

std::vector<std::size_t> support_of(const ComponentCatalog& cat,
                                    const std::vector<std::string>& names) {
    std::vector<std::size_t> s;
    for (const std::string& n : names)
        s.push_back(*cat.index_of(n));
    return s;
}

Decomposition make_decomp(const SurfaceModel& m, const ComponentCatalog& cat,
                          const DivisorClass& z,
                          const std::vector<std::pair<std::string, long>>& mults) {
    Decomposition d;
    d.target = z;
    d.multiplicities.assign(cat.size(), 0);
    d.residual = z;
    for (const auto& [name, v] : mults) {
        std::size_t i = *cat.index_of(name);
        d.multiplicities[i] = v;
        d.residual -= Rational(v) * cat.component(i);
    }
    return d;
}

} // namespace

TEST_CASE("the component catalog holds twelve (-2)-classes in four fibers") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    REQUIRE(cat.size() == 12);
    REQUIRE(cat.fiber_count() == 4);
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(m.pair(cat.component(i), cat.component(i)) == Rational(-2));
        CHECK(m.k_degree(cat.component(i)).is_zero());
    }
    // six-section degrees forced by the Gram: 2 on the cyclic fibers,
    // profile (0,1,5) on the chain fiber
    DivisorClass r8 = m.basis_class("R8");
    CHECK(m.pair(cat.component(*cat.index_of("R2")), r8).is_zero());
    CHECK(m.pair(cat.component(*cat.index_of("R5")), r8) == Rational(1));
    CHECK(m.pair(cat.component(*cat.index_of("R'")), r8) == Rational(5));
    for (const std::string& n : {"H1", "H2", "H'", "F1", "F2", "F'", "G1", "G2", "G'"})
        CHECK(m.pair(cat.component(*cat.index_of(n)), r8) == Rational(2));
}

TEST_CASE("required components of the bundled witnesses") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();
    CHECK(required_names(m, cat, -col.by_name("A2")) == std::set<std::string>{"R2"});
    CHECK(required_names(m, cat, -col.by_name("A6")) == std::set<std::string>{"R2", "F1"});
    CHECK(required_names(m, cat, m.canonical() + col.by_name("A11")).empty());
}

TEST_CASE("bounded enumeration respects the required components") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();
    DivisorClass z = -col.by_name("A2");

    CHECK(enumerate_decompositions(m, cat, z, 0).empty());

    std::vector<Decomposition> small =
        enumerate_decompositions(m, cat, z, 1, support_of(cat, {"R2", "H1", "F1"}));
    CHECK(small.size() == 4); // R2 forced to 1; H1, F1 free in {0,1}
    for (const Decomposition& d : small)
        CHECK(d.multiplicities[*cat.index_of("R2")] == 1);

    // residual recomputation is exact
    for (const Decomposition& d : small) {
        DivisorClass r = z;
        for (std::size_t i = 0; i < cat.size(); ++i)
            r -= Rational(d.multiplicities[i]) * cat.component(i);
        CHECK(d.residual == r);
    }
}

TEST_CASE("the full-bound enumeration includes the restricted grid") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();
    DivisorClass z = -col.by_name("A4");
    std::vector<Decomposition> grid =
        enumerate_decompositions(m, cat, z, 2, support_of(cat, {"R2", "R5", "H1", "F1"}));
    CHECK(grid.size() == 81); // free 3^4 grid: nothing is required
    std::vector<Decomposition> full = enumerate_decompositions(m, cat, z, 2);
    std::set<std::vector<long>> all;
    for (const Decomposition& d : full)
        all.insert(d.multiplicities);
    for (const Decomposition& d : grid)
        CHECK(all.count(d.multiplicities) == 1);
}

TEST_CASE("classification of the worked examples") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();

    // single chain curve of multiplicity one
    DivisorClass z2 = -col.by_name("A2");
    Decomposition d1 = make_decomp(m, cat, z2, {{"R2", 1}});
    CHECK(m.pair(d1.residual, d1.residual) == Rational(-1));
    CHECK(m.omega_degree(d1.residual).is_zero());
    CHECK(classify(m, cat, d1) == Verdict{true, Rule::omega_rat_ell});

    DivisorClass z4 = -col.by_name("A4");
    Decomposition d2 = make_decomp(m, cat, z4, {{"R2", 1}, {"R5", 1}});
    CHECK(m.pair(d2.residual, d2.residual) == Rational(-3));
    CHECK(m.omega_degree(d2.residual) == Rational(-2));
    CHECK(classify(m, cat, d2) == Verdict{true, Rule::omega_rat_ell});

    DivisorClass z5 = -col.by_name("A5");
    Decomposition d3 = make_decomp(m, cat, z5, {{"R2", 1}});
    CHECK(m.pair(d3.residual, d3.residual) == Rational(-3));
    CHECK(classify(m, cat, d3) == Verdict{true, Rule::omega_rat_ell});

    // missing required component
    Decomposition d4 = make_decomp(m, cat, z2, {{"H1", 1}});
    CHECK(classify(m, cat, d4) == Verdict{true, Rule::required_missing});

    // a full fiber in the vertical part
    Decomposition d5 = make_decomp(m, cat, z2, {{"R2", 1}, {"H1", 1}, {"H2", 1}, {"H'", 1}});
    CHECK(classify(m, cat, d5) == Verdict{true, Rule::fiber_multiple});

    // a positively-met component forces a negative residual pairing
    Decomposition d6 = make_decomp(m, cat, z2, {{"R2", 1}, {"H2", 1}});
    CHECK(classify(m, cat, d6) == Verdict{true, Rule::horizontal_neg});

    // deep multiplicities push the dualizing degree below -2
    Decomposition d7 = make_decomp(m, cat, z2, {{"R2", 1}, {"H1", 1}, {"F1", 1}});
    CHECK(m.pair(d7.residual, d7.residual) == Rational(-5));
    CHECK(classify(m, cat, d7) == Verdict{true, Rule::omega_lt_minus2});
}

TEST_CASE("residual self-intersections match the closed forms up to multiplicity six") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();

    DivisorClass z2 = -col.by_name("A2");
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b)
            for (long c = 0; c <= 6; ++c) {
                Decomposition d = make_decomp(m, cat, z2, {{"R2", a}, {"H1", b}, {"F1", c}});
                Rational expect(-1 + 2 * a - 2 * a * a - 2 * b * b - 2 * c * c);
                CHECK(m.pair(d.residual, d.residual) == expect);
                CHECK(m.k_degree(d.residual) == m.k_degree(z2));
            }

    DivisorClass z4 = -col.by_name("A4");
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b)
            for (long c = 0; c <= 6; ++c)
                for (long dd = 0; dd <= 6; ++dd) {
                    Decomposition d = make_decomp(
                        m, cat, z4, {{"R2", a}, {"R5", b}, {"H1", c}, {"F1", dd}});
                    Rational expect(-1 + 2 * a * b - 2 * a * a - 2 * b * b - 2 * c * c -
                                    2 * dd * dd);
                    CHECK(m.pair(d.residual, d.residual) == expect);
                }

    DivisorClass z5 = -col.by_name("A5");
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b) {
            Decomposition d = make_decomp(m, cat, z5, {{"R2", a}, {"F1", b}});
            CHECK(m.pair(d.residual, d.residual) == Rational(-1 - 2 * a * a - 2 * b * b));
        }
}

TEST_CASE("factorized verdict counts equal the explicit enumeration") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();
    for (const std::string& name : {"A2", "A5"}) {
        DivisorClass z = -col.by_name(name);
        for (long bound = 0; bound <= 1; ++bound) {
            VerdictCounts fast = count_verdicts(m, cat, z, bound);
            VerdictCounts slow;
            for (const Decomposition& d : enumerate_decompositions(m, cat, z, bound)) {
                Verdict v = classify(m, cat, d);
                if (!v.excluded)
                    ++slow.surviving;
                else if (v.rule == Rule::fiber_multiple)
                    ++slow.fiber_multiple;
                else if (v.rule == Rule::horizontal_neg)
                    ++slow.horizontal_neg;
                else if (v.rule == Rule::omega_lt_minus2)
                    ++slow.omega_lt_minus2;
                else if (v.rule == Rule::omega_rat_ell)
                    ++slow.omega_rat_ell;
            }
            CHECK(fast == slow);
        }
    }
    // frozen instance (cross-checked against an independent prototype)
    VerdictCounts c = count_verdicts(m, cat, -thm_collection().by_name("A2"), 1);
    CHECK(c.fiber_multiple == 1019);
    CHECK(c.horizontal_neg == 805);
    CHECK(c.omega_lt_minus2 == 220);
    CHECK(c.omega_rat_ell == 4);
    CHECK(c.surviving == 0);
}

TEST_CASE("witness analysis statuses") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();

    // (2,1): the Serre-dual witness meets K negatively
    ExtVanishingReport r21 =
        ext_vanishing_report(m, cat, col.by_name("A2"), col.by_name("A1"), 2);
    CHECK(r21.chi_zero);
    CHECK(r21.h0.status == WitnessStatus::swept);
    CHECK(r21.h2.status == WitnessStatus::excluded_k_negative);
    CHECK(r21.h0.counts.surviving == 0);

    // (12,11): K-degree two on the candidate-curve side
    ExtVanishingReport r1211 =
        ext_vanishing_report(m, cat, col.by_name("A12"), col.by_name("A11"), 2);
    DivisorClass z = col.by_name("A11") - col.by_name("A12");
    CHECK(m.pair(z, z).is_zero());
    CHECK(m.k_degree(z) == Rational(2));
    CHECK(m.pair(z, m.basis_class("R2")) == Rational(-1));
    CHECK(r1211.h0.status == WitnessStatus::axiom_k_degree_2);
    CHECK(r1211.h2.status == WitnessStatus::excluded_k_negative);
    CHECK(r1211.axiom_closed());

    // (7,6): both witnesses are K-trivial vertical candidates
    ExtVanishingReport r76 =
        ext_vanishing_report(m, cat, col.by_name("A7"), col.by_name("A6"), 2);
    CHECK(r76.h0.status == WitnessStatus::axiom_vertical_span);
    CHECK(r76.h2.status == WitnessStatus::axiom_vertical_span);

    // (3,2): K-trivial but not vertical on either side
    ExtVanishingReport r32 =
        ext_vanishing_report(m, cat, col.by_name("A3"), col.by_name("A2"), 2);
    CHECK(r32.h0.status == WitnessStatus::excluded_not_vertical);
    CHECK(r32.h2.status == WitnessStatus::excluded_not_vertical);

    // bound 0 cannot place a required component
    ExtVanishingReport r0 =
        ext_vanishing_report(m, cat, col.by_name("A2"), col.by_name("A1"), 0);
    CHECK(r0.h0.status == WitnessStatus::bound_insufficient);
}

TEST_CASE("the full sweep at bound 4 closes every pair") {
    SurfaceModel m = bundled();
    Collection col = thm_collection();
    SweepReport rep = collection_sweep(m, col, 4);
    CHECK(rep.pairs.size() == 66);
    CHECK(rep.surviving_total == 0);
    CHECK(rep.bound_insufficient_pairs.empty());

    std::set<std::pair<std::size_t, std::size_t>> axiom(rep.axiom_closed_pairs.begin(),
                                                        rep.axiom_closed_pairs.end());
    const std::set<std::pair<std::size_t, std::size_t>> expected{
        {4, 3},  {7, 6},  {9, 5},  {10, 2}, {12, 6}, {12, 7}, {11, 2}, {11, 3},
        {11, 4}, {11, 5}, {11, 6}, {11, 7}, {11, 9}, {11, 10}, {12, 11}};
    CHECK(axiom == expected);

    // spot-check the swept side of a deep pair against the frozen prototype
    for (const SweepPair& p : rep.pairs)
        if (p.i == 2 && p.j == 1) {
            CHECK(p.report.h0.counts.fiber_multiple == 187141184ULL);
            CHECK(p.report.h0.counts.horizontal_neg == 8164026ULL);
            CHECK(p.report.h0.counts.omega_lt_minus2 == 7286ULL);
            CHECK(p.report.h0.counts.omega_rat_ell == 4ULL);
            CHECK(p.report.h0.counts.total() == 195312500ULL); // 4 * 5^11: R2 forced
        }
}

TEST_CASE("verdicts do not depend on the enumeration path") {
    SurfaceModel m = bundled();
    ComponentCatalog cat(m);
    Collection col = thm_collection();
    DivisorClass z = -col.by_name("A6");
    // classify is a pure function of the multiplicity map: recomputing from
    // a reconstructed decomposition gives the same verdict
    for (const Decomposition& d : enumerate_decompositions(m, cat, z, 1)) {
        std::vector<std::pair<std::string, long>> mults;
        for (std::size_t i = 0; i < cat.size(); ++i)
            if (d.multiplicities[i])
                mults.emplace_back(cat.name(i), d.multiplicities[i]);
        Decomposition rebuilt = make_decomp(m, cat, z, mults);
        CHECK(classify(m, cat, rebuilt) == classify(m, cat, d));
    }
}
