// Ground-truth feasibility checking for all eight variants.

#ifndef ROUTEBENCH_VERIFIER_HPP
#define ROUTEBENCH_VERIFIER_HPP

#include <string>
#include <vector>

#include "routebench/core.hpp"

namespace routebench {

enum class ConstraintId {
    ROUTE_COUNT,     // wrong number of routes for the fleet
    ENDPOINT,        // route does not start/end at its depot
    UNKNOWN_ID,      // visit references a location that does not exist
    DEPOT_INTERIOR,  // a depot appears between route endpoints
    COVERAGE,        // all-exactly-once rule broken (missing or repeated)
    K_COUNT,         // k-TSP visit count wrong
    CLUSTER,         // GTSP one-per-cluster rule broken
    CAPACITY,        // CVRP route demand exceeds Q
    EMPTY_ROUTE,     // robot idle where the variant forbids it
};

const std::string& constraint_id_name(ConstraintId id);

struct Violation {
    ConstraintId id;
    std::string detail;
};

struct VerdictReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

// Evaluates the variant's full constraint set; every violated rule is
// reported, not just the first. Unknown ids are violations, not errors.
VerdictReport check_feasible(const ProblemInstance& instance, const Solution& solution,
                             const FeasibilityRules& rules = {});

}  // namespace routebench

#endif
