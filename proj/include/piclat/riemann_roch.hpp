#pragma once

#include "piclat/collection.hpp"
#include "piclat/surface.hpp"

#include <vector>

namespace piclat {

/// Euler characteristic of a line bundle with first Chern class d:
/// chi(O) + (d.d - d.K)/2, exact.
Rational chi_of(const SurfaceModel& m, const DivisorClass& d);

/// chi(l1, l2) = chi_of(l2 - l1).
Rational euler_pairing(const SurfaceModel& m, const DivisorClass& l1, const DivisorClass& l2);

/// K-group coordinates of a line-bundle class: rank 1, the integral Picard
/// coordinates, and the (integer) Euler characteristic.
struct ChernCoords {
    long rank = 1;
    std::vector<mpz_class> c1;
    mpz_class chi;

    std::vector<mpz_class> flat() const; // length rank-of-Pic + 2
};

/// Throws std::domain_error when the class is not integral.
ChernCoords chern_coords(const SurfaceModel& m, const DivisorClass& l);

/// Rows are the ChernCoords of the members; generation of the K-group is
/// equivalent to determinant +-1.
struct K0Check {
    RatMatrix matrix;
    Rational det;
    bool generates = false;
};

K0Check k0_generation_check(const SurfaceModel& m, const Collection& col);

} // namespace piclat
