#include "piclat/matrix.hpp"

#include "piclat/errors.hpp"

#include <algorithm>
#include <utility>

namespace piclat {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        throw DimensionError("RatMatrix: entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = Rational(1);
    return m;
}

bool RatMatrix::is_symmetric() const {
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i))
                return false;
    return true;
}

bool RatMatrix::is_integral() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& r) { return r.is_integer(); });
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionError("RatMatrix: product shape mismatch");
    RatMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                p.at(i, j) += a * o.at(k, j);
        }
    return p;
}

std::vector<Rational> RatMatrix::operator*(const std::vector<Rational>& v) const {
    if (cols_ != v.size())
        throw DimensionError("RatMatrix: vector length mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r[i] += at(i, j) * v[j];
    return r;
}

Rational det(const RatMatrix& m) {
    if (!m.is_square())
        throw DimensionError("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return Rational(1);

    // Clear denominators row by row; det scales by the product of the lcms.
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    mpz_class scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l(1);
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& r = m.at(i, j);
            a[i][j] = r.num() * (l / r.den());
        }
        scale *= l;
    }

    // Bareiss: every division below is exact.
    int sign = 1;
    mpz_class prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return Rational(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mpz_class d = a[n - 1][n - 1];
    if (sign < 0)
        d = -d;
    return Rational(d, scale);
}

std::vector<Rational> solve(const RatMatrix& a, const std::vector<Rational>& b) {
    if (!a.is_square())
        throw DimensionError("solve: matrix is not square");
    const std::size_t n = a.rows();
    if (b.size() != n)
        throw DimensionError("solve: right-hand side length mismatch");

    // Gauss-Jordan on the augmented matrix, exact.
    RatMatrix w(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            w.at(i, j) = a.at(i, j);
        w.at(i, n) = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w.at(p, c).is_zero())
            ++p;
        if (p == n)
            throw SingularMatrixError("solve: singular matrix");
        if (p != c)
            for (std::size_t j = 0; j <= n; ++j)
                std::swap(w.at(p, j), w.at(c, j));
        Rational inv = Rational(1) / w.at(c, c);
        for (std::size_t j = c; j <= n; ++j)
            w.at(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w.at(i, c).is_zero())
                continue;
            Rational f = w.at(i, c);
            for (std::size_t j = c; j <= n; ++j)
                w.at(i, j) -= f * w.at(c, j);
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = w.at(i, n);
    return x;
}

Signature signature(const RatMatrix& s) {
    if (!s.is_symmetric())
        throw std::domain_error("signature: matrix is not symmetric");
    RatMatrix g = s;
    const std::size_t n = g.rows();
    Signature sig;
    std::size_t k = 0;
    while (k < n) {
        // Prefer a nonzero diagonal pivot.
        std::size_t p = k;
        while (p < n && g.at(p, p).is_zero())
            ++p;
        if (p == n) {
            // All remaining diagonal entries vanish: either the block is
            // zero, or a congruence row-add creates a nonzero diagonal.
            std::size_t oi = n, oj = n;
            for (std::size_t i = k; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!g.at(i, j).is_zero()) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi == n) {
                sig.zero += n - k;
                return sig;
            }
            // e_oi <- e_oi + e_oj gives diagonal entry 2 g(oi, oj).
            for (std::size_t j = 0; j < n; ++j)
                g.at(oi, j) += g.at(oj, j);
            for (std::size_t i = 0; i < n; ++i)
                g.at(i, oi) += g.at(i, oj);
            p = oi;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(g.at(p, j), g.at(k, j));
            for (std::size_t i = 0; i < n; ++i)
                std::swap(g.at(i, p), g.at(i, k));
        }
        const Rational d = g.at(k, k);
        if (d.is_positive())
            ++sig.positive;
        else
            ++sig.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (g.at(i, k).is_zero())
                continue;
            Rational f = g.at(i, k) / d;
            for (std::size_t j = 0; j < n; ++j)
                g.at(i, j) -= f * g.at(k, j);
            for (std::size_t j = 0; j < n; ++j)
                g.at(j, i) -= f * g.at(j, k);
        }
        ++k;
    }
    return sig;
}

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

void swap_rows(ZMat& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(ZMat& m, std::size_t a, std::size_t b) {
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// row[a] -= q * row[b]
void row_sub(ZMat& m, std::size_t a, std::size_t b, const mpz_class& q) {
    for (std::size_t j = 0; j < m[a].size(); ++j)
        m[a][j] -= q * m[b][j];
}

void col_sub(ZMat& m, std::size_t a, std::size_t b, const mpz_class& q) {
    for (auto& row : m)
        row[a] -= q * row[b];
}

} // namespace

SmithResult smith_normal_form(const RatMatrix& m) {
    if (!m.is_integral())
        throw std::domain_error("smith_normal_form: non-integral entry");
    const std::size_t r = m.rows(), c = m.cols();
    ZMat d(r, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            d[i][j] = m.at(i, j).to_integer();
    ZMat L(r, std::vector<mpz_class>(r)), R(c, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i)
        L[i][i] = 1;
    for (std::size_t j = 0; j < c; ++j)
        R[j][j] = 1;

    const std::size_t k = std::min(r, c);
    for (std::size_t t = 0; t < k; ++t) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        std::size_t pi = r, pj = c;
        mpz_class best;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (d[i][j] != 0) {
                    mpz_class a = ::abs(d[i][j]);
                    if (pi == r || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
        if (pi == r)
            break; // trailing block zero
        if (pi != t) {
            swap_rows(d, pi, t);
            swap_rows(L, pi, t);
        }
        if (pj != t) {
            swap_cols(d, pj, t);
            swap_rows(R, pj, t); // R tracked transposed; fixed below
        }
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i)
                if (d[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                    row_sub(d, i, t, q);
                    row_sub(L, i, t, q);
                    if (d[i][t] != 0) { // remainder becomes the new, smaller pivot
                        swap_rows(d, i, t);
                        swap_rows(L, i, t);
                        clean = false;
                    }
                }
            for (std::size_t j = t + 1; j < c; ++j)
                if (d[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                    col_sub(d, j, t, q);
                    row_sub(R, j, t, q);
                    if (d[t][j] != 0) {
                        swap_cols(d, j, t);
                        swap_rows(R, j, t);
                        clean = false;
                    }
                }
            if (!clean)
                continue;
            // Pivot must divide the whole trailing block.
            std::size_t bi = r, bj = c;
            for (std::size_t i = t + 1; i < r && bi == r; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi == r)
                break;
            (void)bj;
            row_sub(d, t, bi, mpz_class(-1)); // row_t += row_bi
            row_sub(L, t, bi, mpz_class(-1));
        }
    }
    // Positive diagonal.
    for (std::size_t t = 0; t < k; ++t)
        if (d[t][t] < 0) {
            for (std::size_t j = 0; j < c; ++j)
                d[t][j] = -d[t][j];
            for (std::size_t j = 0; j < r; ++j)
                L[t][j] = -L[t][j];
        }

    SmithResult out;
    out.factors.resize(k);
    for (std::size_t t = 0; t < k; ++t)
        out.factors[t] = d[t][t];
    out.left = RatMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.left.at(i, j) = Rational(L[i][j]);
    out.right = RatMatrix(c, c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.right.at(i, j) = Rational(R[j][i]); // undo the transposed tracking
    return out;
}

} // namespace piclat
