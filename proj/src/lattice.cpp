#include "piclat/lattice.hpp"

#include "piclat/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace piclat {

Lattice::Lattice(RatMatrix g) : gram(std::move(g)) {
    if (!gram.is_symmetric())
        throw std::domain_error("Lattice: Gram matrix is not symmetric");
}

Lattice change_basis(const Lattice& l, const BasisChange& t) {
    if (t.matrix.rows() != l.rank() || !t.matrix.is_square())
        throw DimensionError("change_basis: transform shape mismatch");
    return Lattice(t.matrix.transposed() * l.gram * t.matrix);
}

bool is_unimodular(const Lattice& l) {
    if (!l.is_integral())
        throw std::domain_error("is_unimodular: lattice is not integral");
    Rational d = det(l.gram);
    return d == Rational(1) || d == Rational(-1);
}

Parity parity(const Lattice& l) {
    if (!l.is_integral())
        throw std::domain_error("parity: lattice is not integral");
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (l.gram.at(i, i).to_integer() % 2 != 0)
            return Parity::odd;
    return Parity::even;
}

std::string classify_odd_unimodular(const Lattice& l) {
    if (!is_unimodular(l))
        throw ClassificationError("classify_odd_unimodular: lattice is not unimodular");
    if (l.rank() > 0 && parity(l) == Parity::even)
        throw ClassificationError("classify_odd_unimodular: lattice is even");
    Signature s = signature(l.gram);
    if (!(s.positive > 0 && s.negative > 0) && l.rank() > 1)
        throw ClassificationError(
            "classify_odd_unimodular: definite lattice of rank >= 2 not supported");
    return "I(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

namespace {

// Box enumeration of v with max|v_i| <= height, visiting in lexicographic
// order. `layer_only` restricts to vectors with max|v_i| == height exactly.
// Visitor returns true to stop the walk. Two arithmetic paths: int64 when
// the worst-case partial sums provably fit, mpz otherwise.
struct BoxWalk {
    const std::size_t n;
    const long height;
    const bool layer_only;

    template <class Int, class Visit>
    bool run_typed(const std::vector<Int>& gz, const Int& norm, Visit&& visit) const {
        std::vector<long> v(n, 0);
        std::vector<Int> rowacc(n, Int(0));
        Int q(0);
        std::size_t at_edge = 0; // coordinates with |x| == height so far
        auto rec = [&](auto&& self, std::size_t depth) -> bool {
            if (depth == n) {
                if (q == norm && (!layer_only || at_edge > 0))
                    return visit(v);
                return false;
            }
            for (long x = -height; x <= height; ++x) {
                v[depth] = x;
                Int dq = Int(2) * rowacc[depth] * Int(x) +
                         gz[depth * n + depth] * Int(x) * Int(x);
                q += dq;
                if (x != 0)
                    for (std::size_t r = 0; r < n; ++r)
                        rowacc[r] += gz[r * n + depth] * Int(x);
                bool edge = (x == height || x == -height);
                at_edge += edge ? 1 : 0;
                bool stop = self(self, depth + 1);
                at_edge -= edge ? 1 : 0;
                if (x != 0)
                    for (std::size_t r = 0; r < n; ++r)
                        rowacc[r] -= gz[r * n + depth] * Int(x);
                q -= dq;
                if (stop)
                    return true;
            }
            v[depth] = 0;
            return false;
        };
        return rec(rec, 0);
    }
};

// visit(v) -> true to stop; returns whether stopped
bool walk_norm_vectors(const Lattice& l, const mpz_class& norm, long height, bool layer_only,
                       const std::function<bool(const std::vector<long>&)>& visit) {
    const std::size_t n = l.rank();
    if (n == 0) {
        if (norm == 0 && !layer_only)
            return visit({});
        return false;
    }
    mpz_class maxg(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class a = ::abs(l.gram.at(i, j).to_integer());
            if (a > maxg)
                maxg = a;
        }
    BoxWalk walk{n, height, layer_only};
    // worst-case |q| <= n^2 h^2 maxg; keep a wide margin below 2^62
    mpz_class bound = maxg * height * height * static_cast<long>(n * n) * 4 + 16;
    if (bound.fits_slong_p() && mpz_class(::abs(norm)) < (mpz_class(1) << 60)) {
        std::vector<std::int64_t> gz(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gz[i * n + j] = l.gram.at(i, j).to_integer().get_si();
        return walk.run_typed<std::int64_t>(gz, norm.get_si(), visit);
    }
    std::vector<mpz_class> gz(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gz[i * n + j] = l.gram.at(i, j).to_integer();
    return walk.run_typed<mpz_class>(gz, norm, visit);
}

} // namespace

std::vector<IntVec> enumerate_norm_vectors(const Lattice& l, const mpz_class& norm,
                                           long height) {
    if (!l.is_integral())
        throw std::domain_error("enumerate_norm_vectors: lattice is not integral");
    if (height < 0)
        throw std::domain_error("enumerate_norm_vectors: negative height");
    std::vector<IntVec> out;
    walk_norm_vectors(l, norm, height, false, [&](const std::vector<long>& v) {
        out.emplace_back(v.begin(), v.end());
        return false;
    });
    return out;
}

namespace lattice_detail {

bool visit_norm_vectors_layered(const Lattice& l, const mpz_class& norm, long height,
                                const std::function<bool(const IntVec&)>& visit) {
    if (!l.is_integral())
        throw std::domain_error("visit_norm_vectors_layered: lattice is not integral");
    for (long h = 0; h <= height; ++h) {
        bool stopped = walk_norm_vectors(l, norm, h, h > 0, [&](const std::vector<long>& v) {
            return visit(IntVec(v.begin(), v.end()));
        });
        if (stopped)
            return true;
    }
    return false;
}

std::vector<IntVec> integer_row_kernel(const std::vector<mpz_class>& row) {
    // Unimodular column elimination leaves a single nonzero entry; the other
    // columns of the accumulated transform span the (saturated) kernel.
    const std::size_t n = row.size();
    std::vector<mpz_class> r = row;
    std::vector<IntVec> v(n, IntVec(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        v[j][j] = 1;
    for (;;) {
        std::size_t p = n;
        for (std::size_t j = 0; j < n; ++j)
            if (r[j] != 0 && (p == n || ::abs(r[j]) < ::abs(r[p])))
                p = j;
        if (p == n) { // zero row
            return v;
        }
        bool done = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == p || r[j] == 0)
                continue;
            mpz_class q = r[j] / r[p]; // truncated: remainder shrinks
            if (q != 0) {
                r[j] -= q * r[p];
                for (std::size_t i = 0; i < n; ++i)
                    v[j][i] -= q * v[p][i];
            }
            if (r[j] != 0)
                done = false;
        }
        if (done) {
            std::vector<IntVec> kernel;
            kernel.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (j != p)
                    kernel.push_back(v[j]);
            return kernel;
        }
    }
}

std::vector<IntVec> enumerate_fixed_norm_posdef(const RatMatrix& g, const mpz_class& value) {
    const std::size_t n = g.rows();
    if (n == 0)
        return value == 0 ? std::vector<IntVec>{{}} : std::vector<IntVec>{};
    // Exact LDL^T: q(v) = sum_j d_j (v_j + sum_{i>j} L[i][j] v_i)^2.
    std::vector<std::vector<Rational>> L(n, std::vector<Rational>(n));
    std::vector<Rational> dcoef(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rational s = g.at(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= L[i][k] * L[j][k] * dcoef[k];
            L[i][j] = s / dcoef[j];
        }
        Rational s = g.at(i, i);
        for (std::size_t k = 0; k < i; ++k)
            s -= L[i][k] * L[i][k] * dcoef[k];
        if (!s.is_positive())
            throw std::domain_error("enumerate_fixed_norm_posdef: matrix not positive definite");
        dcoef[i] = s;
        L[i][i] = Rational(1);
    }

    std::vector<IntVec> out;
    std::vector<mpz_class> v(n, 0);
    // Enumerate from the last coordinate down; remaining budget shrinks exactly.
    auto rec = [&](auto&& self, std::size_t jp1, const Rational& rem) -> void {
        if (jp1 == 0) {
            if (rem.is_zero())
                out.emplace_back(v);
            return;
        }
        const std::size_t j = jp1 - 1;
        Rational c(0);
        for (std::size_t i = j + 1; i < n; ++i)
            if (v[i] != 0)
                c += L[i][j] * Rational(v[i]);
        // integers x with d_j (x + c)^2 <= rem, walking out from floor(-c)
        mpz_class start;
        {
            mpz_class nn = -c.num();
            mpz_fdiv_q(start.get_mpz_t(), nn.get_mpz_t(), c.den().get_mpz_t());
        }
        for (mpz_class x = start;; --x) {
            Rational t = Rational(x) + c;
            Rational used = dcoef[j] * t * t;
            if (used > rem)
                break;
            v[j] = x;
            self(self, j, rem - used);
        }
        for (mpz_class x = start + 1;; ++x) {
            Rational t = Rational(x) + c;
            Rational used = dcoef[j] * t * t;
            if (used > rem)
                break;
            v[j] = x;
            self(self, j, rem - used);
        }
        v[j] = 0;
    };
    rec(rec, n, Rational(value));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace lattice_detail

namespace {

using lattice_detail::enumerate_fixed_norm_posdef;
using lattice_detail::integer_row_kernel;

// Gram of an integral sublattice basis, computed in integer arithmetic.
RatMatrix gram_of_columns(const RatMatrix& g, const std::vector<IntVec>& cols) {
    const std::size_t n = g.rows(), m = cols.size();
    std::vector<mpz_class> gz(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gz[i * n + j] = g.at(i, j).to_integer();
    // gcol[b] = g . cols[b]
    std::vector<std::vector<mpz_class>> gcol(m, std::vector<mpz_class>(n, 0));
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t j = 0; j < n; ++j) {
            if (cols[b][j] == 0)
                continue;
            for (std::size_t i = 0; i < n; ++i)
                gcol[b][i] += gz[i * n + j] * cols[b][j];
        }
    RatMatrix out(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            mpz_class s(0);
            for (std::size_t i = 0; i < n; ++i)
                if (cols[a][i] != 0)
                    s += cols[a][i] * gcol[b][i];
            out.at(a, b) = Rational(s);
            out.at(b, a) = Rational(s);
        }
    return out;
}

IntVec apply_basis(const std::vector<IntVec>& cols, const IntVec& coeffs) {
    IntVec r(cols.empty() ? 0 : cols[0].size(), 0);
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] += cols[a][i] * coeffs[a];
    return r;
}

// Orthonormal chain of norm-(-1) vectors spanning a negative-definite
// unimodular lattice, in the coordinates of `g`. Backtracks over candidates;
// fails only when no chain exists down some branch.
bool orthonormalize_negdef(const RatMatrix& g, std::vector<IntVec>& chain) {
    const std::size_t m = g.rows();
    if (m == 0)
        return true;
    // an even lattice has no vectors of odd norm at all
    bool has_odd_diag = false;
    for (std::size_t i = 0; i < m && !has_odd_diag; ++i)
        if (g.at(i, i).to_integer() % 2 != 0)
            has_odd_diag = true;
    if (!has_odd_diag)
        return false;
    RatMatrix neg(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            neg.at(i, j) = -g.at(i, j);
    std::vector<IntVec> units = enumerate_fixed_norm_posdef(neg, 1);
    for (const IntVec& u : units) {
        // u and -u split off the same complement; keep one representative
        bool canonical = true;
        for (const mpz_class& c : u) {
            if (c != 0) {
                canonical = c > 0;
                break;
            }
        }
        if (!canonical)
            continue;
        std::vector<mpz_class> row(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                row[i] += g.at(i, j).to_integer() * u[j];
        std::vector<IntVec> kernel = integer_row_kernel(row);
        if (kernel.size() != m - 1)
            continue;
        RatMatrix sub = gram_of_columns(g, kernel);
        std::vector<IntVec> subchain;
        if (!orthonormalize_negdef(sub, subchain))
            continue;
        chain.clear();
        chain.push_back(u);
        for (const IntVec& s : subchain)
            chain.push_back(apply_basis(kernel, s));
        return true;
    }
    return false;
}

} // namespace

BasisChange diagonalize_unimodular(const Lattice& l, long height) {
    if (!l.is_integral())
        throw std::domain_error("diagonalize_unimodular: lattice is not integral");
    const std::size_t n = l.rank();
    if (n == 0 || !is_unimodular(l) || parity(l) != Parity::odd)
        throw std::domain_error("diagonalize_unimodular: lattice is not odd unimodular");
    Signature s = signature(l.gram);
    if (s.positive != 1 || s.negative != n - 1)
        throw std::domain_error("diagonalize_unimodular: signature is not (1, rank-1)");

    RatMatrix want(n, n);
    want.at(0, 0) = Rational(1);
    for (std::size_t i = 1; i < n; ++i)
        want.at(i, i) = Rational(-1);

    // Splitting vectors are tried smallest box first, lexicographically
    // within a layer; the first candidate whose complement orthonormalizes
    // wins, so the result is deterministic.
    std::vector<mpz_class> gz(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gz[i * n + j] = l.gram.at(i, j).to_integer();
    BasisChange result;
    bool found = lattice_detail::visit_norm_vectors_layered(
        l, 1, height, [&](const IntVec& e0) {
            std::vector<mpz_class> row(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    row[i] += gz[i * n + j] * e0[j];
            std::vector<IntVec> kernel = integer_row_kernel(row);
            if (kernel.size() != n - 1)
                return false;
            RatMatrix comp = gram_of_columns(l.gram, kernel);
            std::vector<IntVec> chain;
            if (!orthonormalize_negdef(comp, chain))
                return false;
            RatMatrix t(n, n);
            for (std::size_t i = 0; i < n; ++i)
                t.at(i, 0) = Rational(e0[i]);
            for (std::size_t a = 0; a < chain.size(); ++a) {
                IntVec amb = apply_basis(kernel, chain[a]);
                for (std::size_t i = 0; i < n; ++i)
                    t.at(i, a + 1) = Rational(amb[i]);
            }
            // Accept only on the exact defining identity.
            if (t.transposed() * l.gram * t == want) {
                result = BasisChange{t};
                return true;
            }
            return false;
        });
    if (!found)
        throw SearchExhaustedError("diagonalize_unimodular: no splitting vector within height " +
                                   std::to_string(height));
    return result;
}

} // namespace piclat
