#pragma once

#include "piclat/rational.hpp"
#include "piclat/surface.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace piclat {

/// Class on the blown-up plane X: exact coordinates over (H, E1, ..., E9)
/// with the standard diagonal pairing diag(1, -1, ..., -1).
struct XClass {
    std::vector<Rational> coords;

    XClass() = default;
    explicit XClass(std::vector<Rational> c) : coords(std::move(c)) {}

    XClass operator-() const;
    XClass& operator+=(const XClass& o);
    XClass& operator-=(const XClass& o);
    friend XClass operator+(XClass a, const XClass& b) { return a += b; }
    friend XClass operator-(XClass a, const XClass& b) { return a -= b; }
    friend XClass operator*(const Rational& s, const XClass& d);
    friend bool operator==(const XClass&, const XClass&) = default;

    std::string str() const;
};

/// The blow-up model: named classes on X, the configuration of curves
/// contracted by the map to the quotient, and the degree of the cyclic
/// covering used to push pairings down to the covering surface.
class XModel {
public:
    static XModel load(const std::filesystem::path& file);

    const std::vector<std::string>& basis() const { return basis_; }
    bool has_class(const std::string& name) const;
    XClass cls(const std::string& name) const;
    const std::vector<std::pair<std::string, std::string>>& contracted_pairs() const {
        return contracted_pairs_;
    }
    long covering_degree() const { return covering_degree_; }

    Rational x_pair(const XClass& a, const XClass& b) const;

    /// The unique correction of z by contracted-curve classes that is
    /// orthogonal to every contracted curve. Idempotent.
    XClass phi_trivial_lift(const XClass& z) const;

    /// covering_degree * x_pair(lift(z1), lift(z2)): the pairing induced on
    /// the covering surface.
    Rational y_pairing(const XClass& z1, const XClass& z2) const;

    struct TableEntry {
        std::string a, b;
        Rational derived;
        Rational expected;
        bool match = false;
    };
    /// All pairings among the named classes this model maps onto the
    /// surface basis, compared entry by entry against the surface Gram.
    std::vector<TableEntry> derive_table(const SurfaceModel& y) const;

    struct Div3Certificate {
        bool divisible = false;
        XClass divisor;  // the branch divisor D
        XClass witness;  // D/3 when divisible
    };
    Div3Certificate div3_certificate() const;

    /// Sum of the named components of the degree-9 degenerate fiber; equals
    /// the fiber class when the model data is consistent.
    XClass fiber_component_sum() const;
    XClass fiber_class() const { return cls(fiber_name_); }

private:
    XModel() = default;

    std::vector<std::string> basis_;
    std::vector<std::pair<std::string, std::vector<Rational>>> classes_;
    std::vector<std::pair<std::string, std::string>> contracted_pairs_;
    std::vector<std::string> table_classes_;
    std::vector<std::pair<Rational, std::string>> branch_divisor_;
    std::vector<std::string> fiber_components_;
    std::string fiber_name_;
    long covering_degree_ = 3;

    std::vector<XClass> contracted_classes() const;
};

} // namespace piclat
