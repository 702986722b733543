#pragma once

#include "piclat/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace piclat {

/// Element of SL2(Z). Construction enforces det = 1.
struct SL2 {
    mpz_class a, b, c, d;

    SL2(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_);
    static SL2 identity() { return SL2(1, 0, 0, 1); }

    /// Parses "a,b,c,d".
    static SL2 parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const SL2&, const SL2&) = default;
};

SL2 mul(const SL2& x, const SL2& y);
SL2 inverse(const SL2& x);
SL2 power(const SL2& x, long n); // any integer exponent

/// g = identity mod n, i.e. membership in the principal congruence
/// subgroup of level n.
bool in_gamma(unsigned n, const SL2& g);

/// Index of the level-n principal congruence subgroup:
/// n^3 prod_{p | n} (1 - 1/p^2), exact.
mpz_class gamma_index(unsigned n);

/// Ordered product equals the identity.
bool relation_check(std::span<const SL2> gs);

struct FiberConfigEntry {
    std::string kodaira_type; // "I<k>" (k >= 0) or "smooth"
    int multiplicity = 1;
};

/// Topological Euler number of a fiber type: I_k -> k, smooth -> 0.
/// Throws std::domain_error on unsupported labels.
long fiber_euler_number(const std::string& kodaira_type);

/// Sum of fiber Euler numbers equals the expected second Chern number.
bool euler_check(const std::vector<FiberConfigEntry>& cfg, long expected_c2);

/// Fiber coefficient of the canonical class of a relatively minimal
/// elliptic fibration over the projective line:
/// (chi_O - 2) + sum (m_i - 1)/m_i over the multiple-fiber multiplicities.
Rational canonical_formula(long chi_structure_sheaf, const std::vector<long>& multiplicities);

} // namespace piclat
