#pragma once

#include "piclat/lattice.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace piclat {

/// Numerical divisor class: exact coordinates over the model's named basis.
struct DivisorClass {
    std::vector<Rational> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Rational> c) : coords(std::move(c)) {}
    static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Rational>(rank)); }

    std::size_t size() const { return coords.size(); }
    bool is_zero() const;

    DivisorClass operator-() const;
    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& s, const DivisorClass& d);
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

    std::string str() const; // coordinate list of rational strings
};

struct FiberDescriptor {
    std::string label;
    std::vector<std::string> components; // named basis classes present
    int multiplicity = 1;
    std::string kodaira_type;     // "I3", "smooth", ...
    bool section_chain = false;   // the fiber met by the 6-section along its chain
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::vector<std::string> failures() const;
};

/// The surface under study: named basis, intersection Gram, canonical class,
/// the unimodularizing basis change for Pic, and the fiber catalog.
/// Immutable after load; all operations are const.
class SurfaceModel {
public:
    static SurfaceModel load(const std::filesystem::path& file);

    const std::vector<std::string>& basis_names() const { return basis_names_; }
    std::size_t rank() const { return basis_names_.size(); }
    /// The intersection form as a lattice; throws if the stored matrix is
    /// not symmetric (validate() reports that case instead).
    Lattice gram() const { return Lattice(gram_matrix_); }
    const RatMatrix& gram_matrix() const { return gram_matrix_; }
    const DivisorClass& canonical() const { return canonical_; }
    const BasisChange& pic_basis_change() const { return pic_basis_change_; }
    const std::vector<FiberDescriptor>& fibers() const { return fibers_; }
    int chi_structure_sheaf() const { return chi_structure_sheaf_; }
    int c2() const { return c2_; }

    /// Basis class by name (unit coordinate vector). Throws if unknown.
    DivisorClass basis_class(const std::string& name) const;
    bool has_basis_class(const std::string& name) const;

    /// Intersection pairing, exact and symmetric.
    Rational pair(const DivisorClass& d1, const DivisorClass& d2) const;
    Rational k_degree(const DivisorClass& d) const;      // d . K
    Rational self_intersection(const DivisorClass& d) const;
    Rational omega_degree(const DivisorClass& d) const;  // d.d + d.K

    /// Membership in Pic: the coordinates over the unimodular basis are
    /// all integers.
    bool is_integral(const DivisorClass& d) const;
    /// Coordinates of d over the unimodular Pic basis (exact solve).
    std::vector<Rational> pic_coordinates(const DivisorClass& d) const;

    /// Numerical class of a full fiber (multiplicity times the support).
    DivisorClass fiber_class() const;

    Report validate() const;
    Report fiber_consistency_suite() const;

private:
    SurfaceModel() = default;

    std::vector<std::string> basis_names_;
    RatMatrix gram_matrix_;
    DivisorClass canonical_;
    BasisChange pic_basis_change_;
    std::vector<FiberDescriptor> fibers_;
    int chi_structure_sheaf_ = 1;
    int c2_ = 0;
};

} // namespace piclat
