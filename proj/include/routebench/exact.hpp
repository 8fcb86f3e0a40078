// Optimal baselines: Held-Karp dynamic programs for the single-robot
// variants and a canonical-partition branch-and-bound for the fleets.

#ifndef ROUTEBENCH_EXACT_HPP
#define ROUTEBENCH_EXACT_HPP

#include <string>
#include <vector>

#include "routebench/core.hpp"

namespace routebench {

enum class CertificateStatus { PROVEN_OPTIMAL, BOUND_ONLY };

const std::string& certificate_status_name(CertificateStatus s);

struct OptimalCertificate {
    ObjectiveValue value;
    Solution solution;
    CertificateStatus status = CertificateStatus::PROVEN_OPTIMAL;
    double lower_bound = 0.0;
    double solve_time = 0.0;  // seconds
};

// Largest instance the bitmask dynamic programs accept.
constexpr int kMaxExactLocations = 24;
// Largest instance the fleet branch-and-bound accepts.
constexpr int kMaxMultirobotLocations = 23;
// Largest cluster count the GTSP dynamic program accepts.
constexpr int kMaxGtspClusters = 20;

OptimalCertificate solve_tsp(const DistanceMatrix& dm, int depot);
OptimalCertificate solve_btsp(const DistanceMatrix& dm, int depot);
OptimalCertificate solve_ktsp(const DistanceMatrix& dm, int depot, int k);
OptimalCertificate solve_gtsp(const DistanceMatrix& dm, int depot,
                              const std::vector<std::vector<int>>& clusters);

// Branch-and-bound over customer-to-robot partitions with per-subset route
// costs from a memoized Held-Karp sweep. Returns BOUND_ONLY when the
// wall-clock budget runs out; timeout is a status, not an error.
OptimalCertificate solve_multirobot(const ProblemInstance& instance,
                                    const FeasibilityRules& rules = {},
                                    double budget_seconds = 600.0);

// Dispatch on the instance's variant kind.
OptimalCertificate solve_instance(const ProblemInstance& instance,
                                  const FeasibilityRules& rules = {},
                                  double budget_seconds = 600.0);

std::string certificate_to_json(const OptimalCertificate& cert);
OptimalCertificate certificate_from_json(const std::string& text);

}  // namespace routebench

#endif
