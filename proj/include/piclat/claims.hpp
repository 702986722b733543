#pragma once

#include "piclat/collection.hpp"
#include "piclat/surface.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace piclat {

/// One executable claim: an exact value the model and collection must
/// reproduce. Kinds: pairing | chi | span | verdict | det | signature.
struct Claim {
    std::string kind;
    std::string note; // human-readable description of what is being checked
    nlohmann::json body;
};

struct ClaimLedger {
    std::vector<Claim> claims;
    static ClaimLedger load(const std::filesystem::path& file);
};

struct ClaimResult {
    std::string description;
    bool pass = false;
    std::string computed;
    std::string expected;
};

/// Parses a linear-combination expression over named classes, e.g.
/// "-A2", "K_Y+A11", "6K_Y-F1-F2", "1/3R2". Names resolve against the model
/// basis, the primed fiber components (implicit thirds), and the collection.
DivisorClass parse_class_expr(const SurfaceModel& m, const Collection* col,
                              const std::string& expr);

/// Executes every claim. Unresolvable operands throw ParseError.
std::vector<ClaimResult> run_claims(const SurfaceModel& m, const Collection* col,
                                    const ClaimLedger& ledger);

} // namespace piclat
