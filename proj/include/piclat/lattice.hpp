#pragma once

#include "piclat/matrix.hpp"

#include <functional>
#include <string>
#include <vector>

namespace piclat {

/// Free finite-rank lattice presented by the Gram matrix of a basis.
struct Lattice {
    RatMatrix gram;

    Lattice() = default;
    explicit Lattice(RatMatrix g);
    std::size_t rank() const { return gram.rows(); }
    bool is_integral() const { return gram.is_integral(); }
};

/// Columns are the new basis vectors in old coordinates.
struct BasisChange {
    RatMatrix matrix;
};

/// New Gram = t^T . gram . t, exact.
Lattice change_basis(const Lattice& l, const BasisChange& t);

/// |det gram| = 1. Throws std::domain_error on non-integral lattices.
bool is_unimodular(const Lattice& l);

enum class Parity { odd, even };

/// Even iff every diagonal Gram entry is even.
Parity parity(const Lattice& l);

/// Isomorphism class "I(p,q)" of an odd indefinite unimodular lattice
/// (or rank <= 1). Throws ClassificationError otherwise.
std::string classify_odd_unimodular(const Lattice& l);

using IntVec = std::vector<mpz_class>;

/// All integer vectors v with max|v_i| <= height and v.gram.v = norm,
/// in lexicographic order. Deterministic.
std::vector<IntVec> enumerate_norm_vectors(const Lattice& l, const mpz_class& norm,
                                           long height);

/// Integral T with T^T . gram . T = diag(1, -1, ..., -1), for an odd
/// unimodular lattice of signature (1, rank-1). Splits off a norm-(+1)
/// vector found within the height bound, then orthonormalizes the
/// negative-definite complement by exhaustive norm-(-1) enumeration.
/// Throws SearchExhaustedError when no splitting succeeds within the bound.
BasisChange diagonalize_unimodular(const Lattice& l, long height);

namespace lattice_detail {

/// Visits vectors with v.gram.v = norm in (box size, lex) order: all vectors
/// of max-norm 0, then the layer of max-norm exactly 1, and so on up to
/// `height`. Visitor returns true to stop; returns whether it stopped.
bool visit_norm_vectors_layered(const Lattice& l, const mpz_class& norm, long height,
                                const std::function<bool(const IntVec&)>& visit);

/// Saturated integer basis (as columns) of { x : row . x = 0 }.
std::vector<IntVec> integer_row_kernel(const std::vector<mpz_class>& row);

/// All integer v with v^T g v = value for positive-definite integral g;
/// complete, exact (Fincke-Pohst on the rational LDL^T factorization).
/// Output sorted lexicographically.
std::vector<IntVec> enumerate_fixed_norm_posdef(const RatMatrix& g, const mpz_class& value);

} // namespace lattice_detail

} // namespace piclat
