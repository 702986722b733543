#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "piclat/surface.hpp"
#include "piclat/xmodel.hpp"

#include "testutil.hpp"

using namespace piclat;
using namespace piclat::testutil;

namespace {

XModel bundled_x() { return XModel::load(data_file("halphen_x.json")); }

XClass xcls(const std::vector<std::string>& coords) {
    std::vector<Rational> v;
    for (const std::string& s : coords)
        v.push_back(Rational::parse(s));
    return XClass(v);
}

} // namespace

TEST_CASE("diagonal pairing on named classes") {
    XModel x = bundled_x();
    CHECK(x.x_pair(x.cls("L1"), x.cls("R3")) == Rational(1));
    CHECK(x.x_pair(x.cls("C"), x.cls("C")).is_zero());
    CHECK(x.x_pair(x.cls("F_X"), x.cls("F_X")).is_zero());
    // the contracted configuration is three orthogonal chains
    for (const auto& [a, b] : x.contracted_pairs()) {
        CHECK(x.x_pair(x.cls(a), x.cls(a)) == Rational(-2));
        CHECK(x.x_pair(x.cls(b), x.cls(b)) == Rational(-2));
        CHECK(x.x_pair(x.cls(a), x.cls(b)) == Rational(1));
    }
}

TEST_CASE("anticanonical bookkeeping") {
    XModel x = bundled_x();
    CHECK(x.cls("K_X") == -x.cls("C"));
    CHECK(x.x_pair(x.cls("K_X"), x.cls("F_X")).is_zero());
}

TEST_CASE("relatively trivial lifts") {
    XModel x = bundled_x();
    // lift(R8) = R8 + 2/3 R7 + 1/3 R6, i.e. (E6 + E7 + E8)/3
    XClass lifted = x.phi_trivial_lift(x.cls("R8"));
    XClass expected = x.cls("R8") + Rational(2, 3) * x.cls("R7") + Rational(1, 3) * x.cls("R6");
    CHECK(lifted == expected);

    // the fiber is already orthogonal to every contracted curve
    CHECK(x.phi_trivial_lift(x.cls("F_X")) == x.cls("F_X"));

    // full correction of R5 touches both neighbouring chains
    XClass lift5 = x.phi_trivial_lift(x.cls("R5"));
    XClass expected5 = x.cls("R5") + Rational(2, 3) * x.cls("L2") + Rational(1, 3) * x.cls("R1") +
                       Rational(2, 3) * x.cls("R6") + Rational(1, 3) * x.cls("R7");
    CHECK(lift5 == expected5);
}

TEST_CASE("lift is an idempotent projection orthogonal to the contracted curves") {
    XModel x = bundled_x();
    for (const std::string& name :
         {"L1", "L2", "Q", "C", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "F_X"}) {
        XClass z = x.cls(name);
        XClass lz = x.phi_trivial_lift(z);
        CHECK(x.phi_trivial_lift(lz) == lz);
        for (const auto& [a, b] : x.contracted_pairs()) {
            CHECK(x.x_pair(lz, x.cls(a)).is_zero());
            CHECK(x.x_pair(lz, x.cls(b)).is_zero());
        }
    }
}

TEST_CASE("pushed-down pairing values") {
    XModel x = bundled_x();
    CHECK(x.y_pairing(x.cls("R8"), x.cls("R8")) == Rational(-1));
    CHECK(x.y_pairing(x.cls("R5"), x.cls("R8")) == Rational(1));
    CHECK(x.y_pairing(x.cls("K_Y"), x.cls("R8")) == Rational(1));
}

TEST_CASE("pushed-down pairing: symmetry, bilinearity, projection formula") {
    XModel x = bundled_x();
    const std::vector<std::string> names{"K_Y", "R2", "R5", "R8", "Q", "C", "F_X", "R9"};
    for (const std::string& a : names)
        for (const std::string& b : names) {
            XClass za = x.cls(a), zb = x.cls(b);
            CHECK(x.y_pairing(za, zb) == x.y_pairing(zb, za));
            // one-sided lift suffices
            CHECK(x.y_pairing(za, zb) ==
                  Rational(x.covering_degree()) * x.x_pair(x.phi_trivial_lift(za), zb));
        }
    XClass s = x.cls("R5") + x.cls("R8");
    CHECK(x.y_pairing(s, x.cls("R8")) ==
          x.y_pairing(x.cls("R5"), x.cls("R8")) + x.y_pairing(x.cls("R8"), x.cls("R8")));
    // contracted curves become trivial
    for (const auto& [a, b] : x.contracted_pairs()) {
        CHECK(x.y_pairing(x.cls("R8"), x.cls(a)).is_zero());
        CHECK(x.y_pairing(x.cls("Q"), x.cls(b)).is_zero());
    }
}

TEST_CASE("the derived table matches the bundled surface Gram") {
    XModel x = bundled_x();
    SurfaceModel y = SurfaceModel::load(data_file("dolgachev23.json"));
    std::vector<XModel::TableEntry> table = x.derive_table(y);
    CHECK(table.size() == 10); // all pairs among K_Y, R2, R5, R8
    for (const auto& e : table) {
        CAPTURE(e.a);
        CAPTURE(e.b);
        CHECK(e.derived == e.expected);
        CHECK(e.match);
    }
}

TEST_CASE("branch divisor is divisible by three with the expected witness") {
    XModel x = bundled_x();
    XModel::Div3Certificate cert = x.div3_certificate();
    REQUIRE(cert.divisible);
    XClass expected =
        xcls({"3", "-1", "-2", "-1", "-1", "-1", "0", "-1", "-1", "-1"});
    CHECK(cert.witness == expected);
    CHECK(Rational(3) * cert.witness == cert.divisor);
}

TEST_CASE("degenerate fiber components sum to the fiber class") {
    XModel x = bundled_x();
    CHECK(x.fiber_component_sum() == x.fiber_class());
}
