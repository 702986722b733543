#include "piclat/riemann_roch.hpp"

#include "piclat/errors.hpp"

namespace piclat {

Rational chi_of(const SurfaceModel& m, const DivisorClass& d) {
    return Rational(m.chi_structure_sheaf()) +
           Rational(1, 2) * (m.pair(d, d) - m.k_degree(d));
}

Rational euler_pairing(const SurfaceModel& m, const DivisorClass& l1, const DivisorClass& l2) {
    return chi_of(m, l2 - l1);
}

std::vector<mpz_class> ChernCoords::flat() const {
    std::vector<mpz_class> v;
    v.reserve(c1.size() + 2);
    v.emplace_back(rank);
    v.insert(v.end(), c1.begin(), c1.end());
    v.push_back(chi);
    return v;
}

ChernCoords chern_coords(const SurfaceModel& m, const DivisorClass& l) {
    std::vector<Rational> x = m.pic_coordinates(l);
    ChernCoords cc;
    cc.c1.reserve(x.size());
    for (const Rational& r : x) {
        if (!r.is_integer())
            throw std::domain_error("chern_coords: class is not integral in Pic");
        cc.c1.push_back(r.to_integer());
    }
    Rational chi = chi_of(m, l);
    if (!chi.is_integer())
        throw std::domain_error("chern_coords: non-integer Euler characteristic");
    cc.chi = chi.to_integer();
    return cc;
}

K0Check k0_generation_check(const SurfaceModel& m, const Collection& col) {
    const std::size_t n = m.rank() + 2;
    if (col.size() != n)
        throw DimensionError("k0_generation_check: collection must have rank(Pic) + 2 members");
    K0Check out;
    out.matrix = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> row = chern_coords(m, col.cls(i)).flat();
        for (std::size_t j = 0; j < n; ++j)
            out.matrix.at(i, j) = Rational(row[j]);
    }
    out.det = det(out.matrix);
    out.generates = out.det == Rational(1) || out.det == Rational(-1);
    return out;
}

} // namespace piclat
