#pragma once

#include <stdexcept>
#include <string>

namespace piclat {

/// Row/column count mismatch (distinct from singularity).
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Square system with no unique solution.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Lattice outside the supported classification (even, non-unimodular,
/// or definite of rank >= 2).
struct ClassificationError : std::runtime_error {
    explicit ClassificationError(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search ran out of candidates. Not a disproof.
struct SearchExhaustedError : std::runtime_error {
    explicit SearchExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or string; carries file/field context in the message.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace piclat
