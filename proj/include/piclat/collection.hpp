#pragma once

#include "piclat/surface.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace piclat {

/// Ordered list of named divisor classes, the candidate line-bundle
/// collection.
struct Collection {
    std::vector<std::pair<std::string, DivisorClass>> members;

    static Collection load(const std::filesystem::path& file);

    std::size_t size() const { return members.size(); }
    const DivisorClass& cls(std::size_t i) const { return members[i].second; }
    const std::string& name(std::size_t i) const { return members[i].first; }
    bool has(const std::string& name) const;
    const DivisorClass& by_name(const std::string& name) const;
};

/// Matrix of Euler pairings chi(A_i, A_j), 0-indexed entry (i, j).
struct ChiMatrix {
    RatMatrix entries;
};

ChiMatrix chi_matrix(const SurfaceModel& m, const Collection& col);

/// PASS iff the chi matrix has unit diagonal and zeros strictly below it.
/// On failure reports the first offending entry in row-major scan order
/// (1-indexed) and its value.
struct ExceptionalityVerdict {
    bool pass = true;
    std::size_t i = 0, j = 0; // 1-indexed position of the first failure
    Rational value;
};

ExceptionalityVerdict verify_numerically_exceptional(const SurfaceModel& m,
                                                     const Collection& col);

/// Pairs (i, j), i > j > 1 (1-indexed), whose K-trivial difference lies in
/// the integral span of the canonical class and the fiber components -- the
/// candidates a purely fiberwise curve could realize.
struct PairScanHit {
    std::size_t i = 0, j = 0;
    DivisorClass difference; // A_j - A_i
};

std::vector<PairScanHit> pair_scan(const SurfaceModel& m, const Collection& col);

/// Is d an integral combination of the canonical class and the listed fiber
/// components (exact integral solve over that column system)?
bool in_vertical_span(const SurfaceModel& m, const DivisorClass& d);

/// Searches, within the height bound, for an orthogonal basis of the
/// unimodular Picard presentation realizing the canonical class as
/// sum(e_1..e_9) - 3 e_0, and assembles the induced maximal collection
/// (O, e_1, ..., e_9, e_0, 2 e_0). The result is re-verified before it is
/// returned. Throws SearchExhaustedError when the bounded search fails.
Collection vial_search(const SurfaceModel& m, long height);

} // namespace piclat
