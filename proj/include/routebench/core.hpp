// Domain types shared by every other module: instances, distances,
// solutions, and objective evaluation.

#ifndef ROUTEBENCH_CORE_HPP
#define ROUTEBENCH_CORE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace routebench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a file or blob does not conform to its format.
struct ParseError : Error {
    ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
    int line;
};

struct Location {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int demand = 0;  // nonzero only for CVRP customers
};

enum class VariantKind { TSP, BTSP, KTSP, GTSP, MTSP, MINMAX_MTSP, MD_MTSP, CVRP };

constexpr bool is_single_robot(VariantKind k) {
    return k == VariantKind::TSP || k == VariantKind::BTSP || k == VariantKind::KTSP ||
           k == VariantKind::GTSP;
}
constexpr bool is_multi_robot(VariantKind k) { return !is_single_robot(k); }

const std::string& variant_kind_name(VariantKind k);
VariantKind variant_kind_from_name(const std::string& name);
std::vector<VariantKind> all_variant_kinds();

// Which parameters are present is dictated by `kind`; validate() enforces it.
struct VariantSpec {
    VariantKind kind = VariantKind::TSP;
    std::optional<int> k;                                   // KTSP
    std::optional<std::vector<std::vector<int>>> clusters;  // GTSP
    std::optional<int> num_robots;                          // multi-robot kinds
    std::optional<int> capacity;                            // CVRP
    std::vector<int> depot_ids;

    int robots() const { return num_robots.value_or(1); }
};

enum class Metric { EXACT_EUCLIDEAN, TSPLIB_ROUNDED };

const std::string& metric_name(Metric m);
Metric metric_from_name(const std::string& name);

struct ProblemInstance {
    std::string name;
    VariantSpec variant;
    std::vector<Location> locations;
    Metric metric = Metric::EXACT_EUCLIDEAN;
    std::optional<std::uint64_t> seed;  // generated instances only

    int size() const { return static_cast<int>(locations.size()); }
    bool is_depot(int id) const;
    std::vector<int> customer_ids() const;

    // Throws Error naming the offending field when an invariant is broken.
    void validate() const;
};

class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    DistanceMatrix(int n, std::vector<double> values);

    int size() const { return n_; }
    double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }

  private:
    int n_ = 0;
    std::vector<double> d_;
};

struct Route {
    std::vector<int> visits;  // includes the depot at both ends

    int customer_count() const { return static_cast<int>(visits.size()) - (visits.size() >= 2 ? 2 : 1); }
    bool empty_route() const { return customer_count() <= 0; }
};

struct Solution {
    std::vector<Route> routes;  // one per robot
};

enum class ObjectiveKind { SUM, BOTTLENECK, MINMAX };

const std::string& objective_kind_name(ObjectiveKind k);
ObjectiveKind objective_kind_for(VariantKind k);

struct ObjectiveValue {
    double value = 0.0;
    ObjectiveKind kind = ObjectiveKind::SUM;
};

// Per-variant feasibility switches (defaults follow the harness conventions:
// m-TSP style fleets may not idle robots, CVRP fleets may).
struct FeasibilityRules {
    bool mtsp_require_nonempty = true;
    bool cvrp_allow_empty = true;
};

double euclidean(const Location& a, const Location& b);

// TSPLIB nearest-integer rounding, half away from zero.
double tsplib_nint(double x);

DistanceMatrix build_distance_matrix(const ProblemInstance& instance);

// Objective of a structurally valid solution. Structural defects (wrong
// route count, non-depot endpoints, unknown ids) raise Error.
ObjectiveValue evaluate(const ProblemInstance& instance, const Solution& solution);

// Comparison convention: relative 1e-9 for float metrics, exact for the
// integer TSPLIB metric.
bool objective_close(double a, double b, Metric metric);

}  // namespace routebench

#endif
