#include "piclat/collection.hpp"

#include "piclat/errors.hpp"
#include "piclat/json_io.hpp"
#include "piclat/riemann_roch.hpp"

#include <algorithm>

namespace piclat {

Collection Collection::load(const std::filesystem::path& file) {
    nlohmann::json j = load_json_file(file);
    const std::string ctx = file.filename().string();
    Collection col;
    try {
        for (const auto& e : j.at("classes")) {
            std::string name = e.at("name").get<std::string>();
            DivisorClass d(json_rational_vector(e.at("coords"), ctx + "." + name));
            col.members.emplace_back(std::move(name), std::move(d));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    return col;
}

bool Collection::has(const std::string& name) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const auto& p) { return p.first == name; });
}

const DivisorClass& Collection::by_name(const std::string& name) const {
    for (const auto& [n, d] : members)
        if (n == name)
            return d;
    throw std::domain_error("Collection: unknown member \"" + name + "\"");
}

ChiMatrix chi_matrix(const SurfaceModel& m, const Collection& col) {
    const std::size_t n = col.size();
    ChiMatrix cm{RatMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cm.entries.at(i, j) = euler_pairing(m, col.cls(i), col.cls(j));
    return cm;
}

ExceptionalityVerdict verify_numerically_exceptional(const SurfaceModel& m,
                                                     const Collection& col) {
    ChiMatrix cm = chi_matrix(m, col);
    const std::size_t n = col.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& v = cm.entries.at(i, j);
            if (i == j && v != Rational(1))
                return {false, i + 1, j + 1, v};
            if (i > j && !v.is_zero())
                return {false, i + 1, j + 1, v};
        }
    return {};
}

bool in_vertical_span(const SurfaceModel& m, const DivisorClass& d) {
    // Column system: canonical class plus every listed fiber component.
    std::vector<DivisorClass> cols;
    cols.push_back(m.canonical());
    for (const FiberDescriptor& f : m.fibers())
        for (const std::string& c : f.components)
            cols.push_back(m.basis_class(c));
    const std::size_t n = m.rank(), k = cols.size();

    // Exact integral solve: row-reduce the augmented (n x k | d) system over
    // the rationals, then demand an all-integer solution and consistency.
    RatMatrix w(n, k + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            w.at(i, j) = cols[j].coords[i];
    for (std::size_t i = 0; i < n; ++i)
        w.at(i, k) = d.coords[i];

    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < k && row < n; ++c) {
        std::size_t p = row;
        while (p < n && w.at(p, c).is_zero())
            ++p;
        if (p == n)
            continue;
        if (p != row)
            for (std::size_t j = 0; j <= k; ++j)
                std::swap(w.at(p, j), w.at(row, j));
        Rational inv = Rational(1) / w.at(row, c);
        for (std::size_t j = c; j <= k; ++j)
            w.at(row, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || w.at(i, c).is_zero())
                continue;
            Rational f = w.at(i, c);
            for (std::size_t j = c; j <= k; ++j)
                w.at(i, j) -= f * w.at(row, j);
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (!w.at(i, k).is_zero())
            return false; // inconsistent: not even a rational combination
    for (std::size_t r = 0; r < row; ++r)
        if (!w.at(r, k).is_integer())
            return false;
    // The spanning classes generate a saturated sublattice here (unit
    // coordinate vectors and the canonical class), so integrality of the
    // reduced solution decides membership.
    return true;
}

std::vector<PairScanHit> pair_scan(const SurfaceModel& m, const Collection& col) {
    std::vector<PairScanHit> hits;
    for (std::size_t i = 2; i < col.size(); ++i)
        for (std::size_t j = 1; j < i; ++j) {
            DivisorClass diff = col.cls(j) - col.cls(i);
            if (!m.k_degree(diff).is_zero())
                continue;
            DivisorClass serre = m.canonical() + col.cls(i) - col.cls(j);
            if (in_vertical_span(m, diff) || in_vertical_span(m, serre))
                hits.push_back({i + 1, j + 1, diff});
        }
    return hits;
}

namespace {

DivisorClass from_pic(const SurfaceModel& m, const IntVec& pic) {
    std::vector<Rational> r(pic.size());
    for (std::size_t i = 0; i < pic.size(); ++i)
        r[i] = Rational(pic[i]);
    return DivisorClass(m.pic_basis_change().matrix * r);
}

} // namespace

Collection vial_search(const SurfaceModel& m, long height) {
    const std::size_t n = m.rank();
    Lattice pic = change_basis(m.gram(), m.pic_basis_change());
    if (!pic.is_integral() || !is_unimodular(pic) || parity(pic) != Parity::odd)
        throw std::domain_error("vial_search: Picard presentation is not odd unimodular");

    // canonical class in Pic coordinates (integral)
    std::vector<Rational> kq = m.pic_coordinates(m.canonical());
    IntVec k(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!kq[i].is_integer())
            throw std::domain_error("vial_search: canonical class is not integral in Pic");
        k[i] = kq[i].to_integer();
    }

    auto ip = [&](const IntVec& u, const IntVec& v) {
        mpz_class s(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] == 0)
                continue;
            mpz_class row(0);
            for (std::size_t j = 0; j < n; ++j)
                if (v[j] != 0)
                    row += pic.gram.at(i, j).to_integer() * v[j];
            s += u[i] * row;
        }
        return s;
    };

    // Split vectors e0 with e0^2 = 1 and K.e0 = -3 (sign-normalized), tried
    // smallest box first. For each, write K + 3 e0 as a sum of nine
    // orthonormal norm-(-1) vectors of the complement, each meeting K in -1,
    // by backtracking over the exact norm enumeration.
    std::vector<IntVec> basis_found;
    IntVec e0_found;
    bool ok = lattice_detail::visit_norm_vectors_layered(pic, 1, height, [&](const IntVec& cand) {
        mpz_class kd = ip(k, cand);
        if (kd != 3 && kd != -3)
            return false;
        IntVec e0 = cand;
        if (kd == 3)
            for (mpz_class& c : e0)
                c = -c;

        IntVec w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = k[i] + 3 * e0[i];

        std::vector<mpz_class> row(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                row[i] += pic.gram.at(i, j).to_integer() * e0[j];
        std::vector<IntVec> kernel = lattice_detail::integer_row_kernel(row);
        if (kernel.size() != n - 1)
            return false;

        // coordinates of w in the complement (exact; integral by saturation)
        RatMatrix b(n, n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                b.at(i, j) = Rational(kernel[j][i]);
        RatMatrix gsub = b.transposed() * pic.gram * b;
        std::vector<Rational> rhs(n - 1);
        {
            std::vector<Rational> wr(n);
            for (std::size_t i = 0; i < n; ++i)
                wr[i] = Rational(w[i]);
            std::vector<Rational> gw = pic.gram * wr;
            for (std::size_t j = 0; j + 1 < n; ++j) {
                Rational s(0);
                for (std::size_t i = 0; i < n; ++i)
                    s += Rational(kernel[j][i]) * gw[i];
                rhs[j] = s;
            }
        }
        std::vector<Rational> wcq = solve(gsub, rhs);
        IntVec wc(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!wcq[i].is_integer())
                return false;
            wc[i] = wcq[i].to_integer();
        }

        auto rec = [&](auto&& self, const RatMatrix& g, const IntVec& wcur,
                       std::vector<IntVec>& acc) -> bool {
            const std::size_t mdim = g.rows();
            if (mdim == 0)
                return std::all_of(wcur.begin(), wcur.end(),
                                   [](const mpz_class& x) { return x == 0; });
            RatMatrix neg(mdim, mdim);
            for (std::size_t i = 0; i < mdim; ++i)
                for (std::size_t j = 0; j < mdim; ++j)
                    neg.at(i, j) = -g.at(i, j);
            std::vector<IntVec> units = lattice_detail::enumerate_fixed_norm_posdef(neg, 1);
            for (const IntVec& u : units) {
                // u . w must be -1 so that flipping is never needed
                mpz_class uw(0);
                for (std::size_t i = 0; i < mdim; ++i) {
                    mpz_class r(0);
                    for (std::size_t j = 0; j < mdim; ++j)
                        r += g.at(i, j).to_integer() * wcur[j];
                    uw += u[i] * r;
                }
                if (uw != -1)
                    continue;
                std::vector<mpz_class> urow(mdim, 0);
                for (std::size_t i = 0; i < mdim; ++i)
                    for (std::size_t j = 0; j < mdim; ++j)
                        urow[i] += g.at(i, j).to_integer() * u[j];
                std::vector<IntVec> ker = lattice_detail::integer_row_kernel(urow);
                if (ker.size() != mdim - 1)
                    continue;
                RatMatrix bs(mdim, mdim - 1);
                for (std::size_t j = 0; j + 1 < mdim; ++j)
                    for (std::size_t i = 0; i < mdim; ++i)
                        bs.at(i, j) = Rational(ker[j][i]);
                RatMatrix gnext = bs.transposed() * g * bs;
                // w - u in sublattice coordinates
                std::vector<Rational> rhs2(mdim - 1);
                {
                    std::vector<Rational> wr(mdim);
                    for (std::size_t i = 0; i < mdim; ++i)
                        wr[i] = Rational(wcur[i] - u[i]);
                    std::vector<Rational> gw = g * wr;
                    for (std::size_t j = 0; j + 1 < mdim; ++j) {
                        Rational s(0);
                        for (std::size_t i = 0; i < mdim; ++i)
                            s += Rational(ker[j][i]) * gw[i];
                        rhs2[j] = s;
                    }
                }
                bool integral = true;
                IntVec wnext(mdim - 1);
                if (mdim > 1) {
                    std::vector<Rational> sols = solve(gnext, rhs2);
                    for (std::size_t i = 0; i + 1 < mdim; ++i) {
                        if (!sols[i].is_integer()) {
                            integral = false;
                            break;
                        }
                        wnext[i] = sols[i].to_integer();
                    }
                } else {
                    // rank 0 next: require w == u
                    for (std::size_t i = 0; i < mdim; ++i)
                        if (wcur[i] != u[i])
                            integral = false;
                }
                if (!integral)
                    continue;
                std::vector<IntVec> sub;
                if (self(self, gnext, wnext, sub)) {
                    acc.clear();
                    acc.push_back(u);
                    for (const IntVec& s : sub) {
                        IntVec lifted(mdim, 0);
                        for (std::size_t a = 0; a + 1 < mdim; ++a)
                            for (std::size_t i = 0; i < mdim; ++i)
                                lifted[i] += ker[a][i] * s[a];
                        acc.push_back(lifted);
                    }
                    return true;
                }
            }
            return false;
        };

        std::vector<IntVec> chain;
        if (!rec(rec, gsub, wc, chain))
            return false;
        basis_found.clear();
        for (const IntVec& c : chain) {
            IntVec amb(n, 0);
            for (std::size_t a = 0; a + 1 < n; ++a)
                for (std::size_t i = 0; i < n; ++i)
                    amb[i] += kernel[a][i] * c[a];
            basis_found.push_back(amb);
        }
        e0_found = e0;
        return true;
    });
    if (!ok)
        throw SearchExhaustedError("vial_search: no diagonal basis within height " +
                                   std::to_string(height));

    // Assemble (O, e_1..e_9, e_0, 2 e_0) and verify everything exactly.
    Collection col;
    col.members.emplace_back("A1", DivisorClass::zero(n));
    for (std::size_t a = 0; a < basis_found.size(); ++a)
        col.members.emplace_back("A" + std::to_string(a + 2), from_pic(m, basis_found[a]));
    DivisorClass e0cls = from_pic(m, e0_found);
    col.members.emplace_back("A11", e0cls);
    col.members.emplace_back("A12", e0cls + e0cls);

    // prescribed norms and orthogonality
    for (std::size_t a = 1; a <= basis_found.size(); ++a) {
        if (m.pair(col.cls(a), col.cls(a)) != Rational(-1))
            throw SearchExhaustedError("vial_search: norm verification failed");
        for (std::size_t b2 = a + 1; b2 <= basis_found.size(); ++b2)
            if (!m.pair(col.cls(a), col.cls(b2)).is_zero())
                throw SearchExhaustedError("vial_search: orthogonality verification failed");
        if (!m.pair(col.cls(a), e0cls).is_zero())
            throw SearchExhaustedError("vial_search: orthogonality verification failed");
    }
    if (m.pair(e0cls, e0cls) != Rational(1))
        throw SearchExhaustedError("vial_search: norm verification failed");
    // K relation: sum of the nine norm-(-1) members minus three times e_0
    DivisorClass krel = DivisorClass::zero(n);
    for (std::size_t a = 1; a <= basis_found.size(); ++a)
        krel += col.cls(a);
    krel -= Rational(3) * e0cls;
    if (!(krel == m.canonical()))
        throw SearchExhaustedError("vial_search: canonical relation verification failed");
    for (std::size_t a = 0; a < col.size(); ++a)
        if (!m.is_integral(col.cls(a)))
            throw SearchExhaustedError("vial_search: integrality verification failed");
    ExceptionalityVerdict v = verify_numerically_exceptional(m, col);
    if (!v.pass)
        throw SearchExhaustedError("vial_search: verifier rejected the assembled collection");
    return col;
}

} // namespace piclat
