#include "piclat/monodromy.hpp"

#include "piclat/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace piclat {

SL2::SL2(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c != 1)
        throw std::domain_error("SL2: determinant is not 1");
}

SL2 SL2::parse(const std::string& text) {
    std::vector<mpz_class> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        // trim blanks
        std::size_t b0 = cur.find_first_not_of(" \t");
        std::size_t b1 = cur.find_last_not_of(" \t");
        if (b0 == std::string::npos)
            throw ParseError("SL2: empty entry in \"" + text + "\"");
        cur = cur.substr(b0, b1 - b0 + 1);
        Rational r = Rational::parse(cur);
        if (!r.is_integer())
            throw ParseError("SL2: non-integer entry \"" + cur + "\"");
        parts.push_back(r.to_integer());
    }
    if (parts.size() != 4)
        throw ParseError("SL2: expected four comma-separated integers, got \"" + text + "\"");
    return SL2(parts[0], parts[1], parts[2], parts[3]);
}

std::string SL2::str() const {
    return a.get_str() + "," + b.get_str() + "," + c.get_str() + "," + d.get_str();
}

SL2 mul(const SL2& x, const SL2& y) {
    return SL2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
               x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

SL2 inverse(const SL2& x) {
    return SL2(x.d, -x.b, -x.c, x.a);
}

SL2 power(const SL2& x, long n) {
    SL2 base = n < 0 ? inverse(x) : x;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    SL2 acc = SL2::identity();
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool in_gamma(unsigned n, const SL2& g) {
    if (n < 2)
        throw std::domain_error("in_gamma: level must be >= 2");
    mpz_class m(n);
    return (g.a - 1) % m == 0 && g.b % m == 0 && g.c % m == 0 && (g.d - 1) % m == 0;
}

mpz_class gamma_index(unsigned n) {
    if (n < 2)
        throw std::domain_error("gamma_index: level must be >= 2");
    mpz_class idx = mpz_class(n) * n * n;
    unsigned rest = n;
    for (unsigned p = 2; p * p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        idx = idx / (p * p) * (p * p - 1);
        while (rest % p == 0)
            rest /= p;
    }
    if (rest > 1)
        idx = idx / (mpz_class(rest) * rest) * (mpz_class(rest) * rest - 1);
    return idx;
}

bool relation_check(std::span<const SL2> gs) {
    if (gs.empty())
        throw std::domain_error("relation_check: empty word");
    SL2 p = SL2::identity();
    for (const SL2& g : gs)
        p = mul(p, g);
    return p == SL2::identity();
}

long fiber_euler_number(const std::string& kodaira_type) {
    if (kodaira_type == "smooth")
        return 0;
    if (kodaira_type.size() >= 2 && kodaira_type[0] == 'I') {
        const std::string num = kodaira_type.substr(1);
        if (!num.empty() &&
            std::all_of(num.begin(), num.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            return std::stol(num);
    }
    throw std::domain_error("fiber_euler_number: unsupported fiber type \"" + kodaira_type + "\"");
}

bool euler_check(const std::vector<FiberConfigEntry>& cfg, long expected_c2) {
    long sum = 0;
    for (const FiberConfigEntry& f : cfg) {
        if (f.multiplicity < 1)
            throw std::domain_error("euler_check: multiplicity must be >= 1");
        sum += fiber_euler_number(f.kodaira_type);
    }
    return sum == expected_c2;
}

Rational canonical_formula(long chi_structure_sheaf, const std::vector<long>& multiplicities) {
    Rational coef(chi_structure_sheaf - 2);
    for (long m : multiplicities) {
        if (m < 2)
            throw std::domain_error("canonical_formula: multiple-fiber multiplicity must be >= 2");
        coef += Rational(m - 1, m);
    }
    return coef;
}

} // namespace piclat
