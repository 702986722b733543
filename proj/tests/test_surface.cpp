#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "piclat/collection.hpp"
#include "piclat/errors.hpp"
#include "piclat/surface.hpp"

#include "testutil.hpp"

#include <json.hpp>

#include <fstream>

using namespace piclat;
using namespace piclat::testutil;

namespace {

SurfaceModel bundled() { return SurfaceModel::load(data_file("dolgachev23.json")); }

Collection thm_collection() { return Collection::load(data_file("thm24_collection.json")); }

} // namespace

TEST_CASE("bundled model loads and validates") {
    SurfaceModel m = bundled();
    CHECK(m.rank() == 10);
    CHECK(m.basis_names().front() == "K_Y");
    CHECK(m.chi_structure_sheaf() == 1);
    CHECK(m.c2() == 12);
    Report r = m.validate();
    for (const std::string& f : r.failures())
        MESSAGE(f);
    CHECK(r.all_pass());
}

TEST_CASE("pairing spot values") {
    SurfaceModel m = bundled();
    CHECK(m.pair(m.basis_class("K_Y"), m.basis_class("R8")) == Rational(1));
    CHECK(m.pair(m.basis_class("R8"), m.basis_class("H1")) == Rational(2));
    CHECK(m.pair(m.basis_class("R8"), m.basis_class("R8")) == Rational(-1));
    DivisorClass zero = DivisorClass::zero(10);
    CHECK(m.pair(m.basis_class("G2"), zero).is_zero());
    CHECK_THROWS_AS(m.pair(DivisorClass::zero(9), zero), DimensionError);
}

TEST_CASE("pairing is bilinear and symmetric") {
    SurfaceModel m = bundled();
    Rng rng;
    for (int t = 0; t < 60; ++t) {
        std::vector<Rational> a, b, c;
        for (int i = 0; i < 10; ++i) {
            a.push_back(rng.rational());
            b.push_back(rng.rational());
            c.push_back(rng.rational());
        }
        DivisorClass da(a), db(b), dc(c);
        Rational s = rng.rational();
        CHECK(m.pair(da, db) == m.pair(db, da));
        CHECK(m.pair(da + db, dc) == m.pair(da, dc) + m.pair(db, dc));
        CHECK(m.pair(s * da, db) == s * m.pair(da, db));
    }
}

TEST_CASE("K-degree and dualizing degree examples") {
    SurfaceModel m = bundled();
    Collection col = thm_collection();
    DivisorClass dual_a2 = -col.by_name("A2");
    CHECK(m.k_degree(dual_a2) == Rational(1));
    CHECK(m.pair(dual_a2, dual_a2) == Rational(-1));
    CHECK(m.omega_degree(dual_a2).is_zero());
    CHECK(m.omega_degree(m.canonical()).is_zero());
    CHECK(m.omega_degree(m.basis_class("R2")) == Rational(-2));
}

TEST_CASE("dualizing degree is even on integer classes") {
    SurfaceModel m = bundled();
    Rng rng;
    for (int t = 0; t < 80; ++t) {
        std::vector<Rational> v;
        for (int i = 0; i < 10; ++i)
            v.push_back(Rational(rng.integer(-5, 5)));
        Rational omega = m.omega_degree(DivisorClass(v));
        REQUIRE(omega.is_integer());
        CHECK(omega.to_integer() % 2 == 0);
    }
}

TEST_CASE("fiber components are K-trivial, the six-section is not") {
    SurfaceModel m = bundled();
    for (const std::string& c : {"R2", "R5", "H1", "H2", "F1", "F2", "G1", "G2"})
        CHECK(m.k_degree(m.basis_class(c)).is_zero());
    CHECK(m.k_degree(m.basis_class("R8")) == Rational(1));
}

TEST_CASE("Pic membership") {
    SurfaceModel m = bundled();
    Collection col = thm_collection();
    CHECK(m.is_integral(m.canonical()));
    CHECK(m.is_integral(col.by_name("A2")));
    CHECK(!m.is_integral(Rational(1, 3) * m.basis_class("R2")));
}

TEST_CASE("Pic membership is closed under addition and negation") {
    SurfaceModel m = bundled();
    Rng rng;
    for (int t = 0; t < 40; ++t) {
        // random integral classes via the Pic basis
        std::vector<Rational> x, y;
        for (int i = 0; i < 10; ++i) {
            x.push_back(Rational(rng.integer(-3, 3)));
            y.push_back(Rational(rng.integer(-3, 3)));
        }
        DivisorClass dx(m.pic_basis_change().matrix * x);
        DivisorClass dy(m.pic_basis_change().matrix * y);
        REQUIRE(m.is_integral(dx));
        REQUIRE(m.is_integral(dy));
        CHECK(m.is_integral(dx + dy));
        CHECK(m.is_integral(-dx));
    }
}

TEST_CASE("fiber consistency suite passes on the bundled model") {
    SurfaceModel m = bundled();
    Report r = m.fiber_consistency_suite();
    for (const std::string& f : r.failures())
        MESSAGE(f);
    CHECK(r.all_pass());
    CHECK(m.pair(m.fiber_class(), m.fiber_class()).is_zero());
    CHECK(m.fiber_class() == Rational(6) * m.canonical());
}

TEST_CASE("a corrupted model is reported with the failing identity") {
    nlohmann::json j;
    {
        std::ifstream in(data_file("dolgachev23.json"));
        in >> j;
    }
    j["gram"][4][4] = "-3"; // H1^2 = -3
    auto tmp = std::filesystem::temp_directory_path() / "piclat_corrupt_model.json";
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    SurfaceModel m = SurfaceModel::load(tmp);
    Report r = m.fiber_consistency_suite();
    CHECK(!r.all_pass());
    bool names_h1 = false;
    for (const std::string& f : r.failures())
        if (f.find("H1^2") != std::string::npos)
            names_h1 = true;
    CHECK(names_h1);
    std::filesystem::remove(tmp);
}

TEST_CASE("a non-symmetric gram fails validation naming the entry pair") {
    nlohmann::json j;
    {
        std::ifstream in(data_file("dolgachev23.json"));
        in >> j;
    }
    j["gram"][0][1] = "5";
    auto tmp = std::filesystem::temp_directory_path() / "piclat_nonsym_model.json";
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    SurfaceModel m = SurfaceModel::load(tmp);
    Report r = m.validate();
    CHECK(!r.all_pass());
    bool names_pair = false;
    for (const std::string& f : r.failures())
        if (f.find("K_Y") != std::string::npos && f.find("R2") != std::string::npos)
            names_pair = true;
    CHECK(names_pair);
    std::filesystem::remove(tmp);
}

TEST_CASE("malformed rationals are parse errors with context") {
    nlohmann::json j;
    {
        std::ifstream in(data_file("dolgachev23.json"));
        in >> j;
    }
    j["gram"][0][0] = "1/0";
    auto tmp = std::filesystem::temp_directory_path() / "piclat_badrat_model.json";
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    CHECK_THROWS_AS(SurfaceModel::load(tmp), ParseError);
    std::filesystem::remove(tmp);
    CHECK_THROWS_AS(SurfaceModel::load("/nonexistent/piclat.json"), ParseError);
}
