#pragma once

#include "piclat/collection.hpp"
#include "piclat/surface.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace piclat {

/// The twelve reduced fiber-component classes of the degenerate fibers:
/// for each fiber the two listed basis components plus the implicit third
/// (fiber class minus the listed pair), grouped fiber by fiber.
class ComponentCatalog {
public:
    explicit ComponentCatalog(const SurfaceModel& m);

    std::size_t size() const { return classes_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const DivisorClass& component(std::size_t i) const { return classes_[i]; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    std::size_t fiber_count() const { return size() / 3; }
    /// indices of the three components of fiber f (in catalog order)
    std::array<std::size_t, 3> fiber_members(std::size_t f) const {
        return {3 * f, 3 * f + 1, 3 * f + 2};
    }

private:
    std::vector<std::string> names_;
    std::vector<DivisorClass> classes_;
};

/// One candidate splitting of a target class into a residual plus
/// nonnegative multiples of catalog components.
struct Decomposition {
    DivisorClass target;
    std::vector<long> multiplicities; // catalog order
    DivisorClass residual;            // target - sum m_c . c
};

/// Exclusion rules, in firing order.
enum class Rule {
    required_missing, // a component the target meets negatively is absent
    fiber_multiple,   // the vertical part dominates a full fiber
    horizontal_neg,   // residual meets some component negatively
    omega_lt_minus2,  // dualizing degree of the residual below -2
    omega_rat_ell,    // dualizing degree -2 or 0 (excluded-genus axiom)
};

std::string rule_name(Rule r);

struct Verdict {
    bool excluded = false;
    Rule rule = Rule::required_missing; // meaningful only when excluded
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Catalog components the target necessarily contains: pair(z, c) < 0.
std::vector<std::size_t> required_components(const SurfaceModel& m, const ComponentCatalog& cat,
                                             const DivisorClass& z);

/// All multiplicity maps bounded by `bound`, each required component
/// present, support restricted to the given catalog indices (or the whole
/// catalog). Deterministic lexicographic order over the catalog order.
std::vector<Decomposition> enumerate_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound);
std::vector<Decomposition> enumerate_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound,
                                                    const std::vector<std::size_t>& support);

Verdict classify(const SurfaceModel& m, const ComponentCatalog& cat, const Decomposition& d);

struct VerdictCounts {
    std::uint64_t fiber_multiple = 0;
    std::uint64_t horizontal_neg = 0;
    std::uint64_t omega_lt_minus2 = 0;
    std::uint64_t omega_rat_ell = 0;
    std::uint64_t surviving = 0;
    std::uint64_t total() const {
        return fiber_multiple + horizontal_neg + omega_lt_minus2 + omega_rat_ell + surviving;
    }
    friend bool operator==(const VerdictCounts&, const VerdictCounts&) = default;
};

/// Verdict counts over every decomposition enumerate_decompositions would
/// yield at this bound, computed by fiber-wise factorization (the fibers are
/// mutually orthogonal); exact and identical to classifying the explicit
/// enumeration.
VerdictCounts count_verdicts(const SurfaceModel& m, const ComponentCatalog& cat,
                             const DivisorClass& z, long bound);

/// The surviving decompositions listed explicitly (normally none).
std::vector<Decomposition> surviving_decompositions(const SurfaceModel& m,
                                                    const ComponentCatalog& cat,
                                                    const DivisorClass& z, long bound);

enum class WitnessStatus {
    excluded_k_negative,  // no effective class meets K negatively (model axiom)
    excluded_not_vertical, // K-trivial but not an integral vertical combination
    axiom_vertical_span,  // K-trivial vertical candidate; closed by geometry
    axiom_k_degree_2,     // K-degree 2: outside the mechanized rule set
    swept,                // bounded decomposition analysis ran
    bound_insufficient,   // required component cannot be included at this bound
};

std::string witness_status_name(WitnessStatus s);

struct WitnessReport {
    DivisorClass witness;
    Rational k_degree;
    WitnessStatus status = WitnessStatus::swept;
    VerdictCounts counts;                 // when swept
    std::vector<Decomposition> survivors; // when swept and nonzero
};

struct ExtVanishingReport {
    Rational chi;
    bool chi_zero = false;
    WitnessReport h0; // candidate curve class l2 - l1
    WitnessReport h2; // Serre-dual candidate K + l1 - l2
    bool axiom_closed() const;
    std::uint64_t surviving() const;
};

ExtVanishingReport ext_vanishing_report(const SurfaceModel& m, const ComponentCatalog& cat,
                                        const DivisorClass& l1, const DivisorClass& l2,
                                        long bound);

struct SweepPair {
    std::size_t i = 0, j = 0; // 1-indexed, i > j
    ExtVanishingReport report;
};

struct SweepReport {
    std::vector<SweepPair> pairs;
    std::uint64_t surviving_total = 0;
    std::vector<std::pair<std::size_t, std::size_t>> axiom_closed_pairs;
    std::vector<std::pair<std::size_t, std::size_t>> bound_insufficient_pairs;
};

/// Vanishing analysis over all ordered pairs (i > j) of the collection.
SweepReport collection_sweep(const SurfaceModel& m, const Collection& col, long bound);

} // namespace piclat
