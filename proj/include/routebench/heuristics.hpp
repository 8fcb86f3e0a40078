// Fast feasible solutions: branch-and-bound incumbents and report baselines.

#ifndef ROUTEBENCH_HEURISTICS_HPP
#define ROUTEBENCH_HEURISTICS_HPP

#include <optional>

#include "routebench/core.hpp"

namespace routebench {

// Greedy tour from the depot, always to the nearest unvisited location
// (ties broken by smaller id).
Solution nearest_neighbor(const DistanceMatrix& dm, int depot);

// Best-improvement 2-opt on a single closed tour until no exchange improves
// the SUM objective; ties broken by the lexicographically smallest (i, j).
Solution two_opt(const DistanceMatrix& dm, const Solution& solution);

struct SavingsResult {
    Solution solution;
    // False when more routes than robots remained even after greedy merging;
    // the cost is then only usable as a bound, not as a feasible incumbent.
    bool fleet_feasible = true;
};

// Clarke-Wright parallel savings construction for CVRP, merged down toward
// the fleet size and padded with empty routes up to it.
SavingsResult savings_cvrp(const ProblemInstance& instance);

// Feasible starting solution for any multi-robot instance, or nullopt when
// the construction cannot satisfy the variant's rules.
std::optional<Solution> multirobot_incumbent(const ProblemInstance& instance,
                                             const DistanceMatrix& dm,
                                             const FeasibilityRules& rules = {});

}  // namespace routebench

#endif
