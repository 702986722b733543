#pragma once

#include "piclat/rational.hpp"

#include <cstddef>
#include <vector>

namespace piclat {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_symmetric() const;
    bool is_integral() const;

    RatMatrix transposed() const;
    RatMatrix operator*(const RatMatrix& o) const;
    std::vector<Rational> operator*(const std::vector<Rational>& v) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

/// Exact determinant by fraction-free (Bareiss) elimination on the
/// row-denominator-cleared integer matrix. Throws DimensionError on
/// non-square input.
Rational det(const RatMatrix& m);

/// Solves a.x = b exactly for square nonsingular a. Throws DimensionError /
/// SingularMatrixError.
std::vector<Rational> solve(const RatMatrix& a, const std::vector<Rational>& b);

/// Sign counts of a symmetric matrix under congruence.
struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact congruence diagonalization (symmetric pivoting, with the 2x2
/// off-diagonal step when every remaining diagonal entry vanishes).
/// Throws std::domain_error on non-symmetric input.
Signature signature(const RatMatrix& s);

/// Smith normal form of an integer matrix: left * m * right is diagonal with
/// factors[k] | factors[k+1], factors nonnegative, transforms unimodular.
struct SmithResult {
    std::vector<mpz_class> factors;
    RatMatrix left;
    RatMatrix right;
};

/// Throws std::domain_error if some entry is not an integer.
SmithResult smith_normal_form(const RatMatrix& m);

} // namespace piclat
