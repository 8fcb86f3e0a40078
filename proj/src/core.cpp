#include "routebench/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace routebench {

namespace {

const std::array<std::string, 8> kKindNames = {
    "TSP", "BTSP", "KTSP", "GTSP", "MTSP", "MINMAX_MTSP", "MD_MTSP", "CVRP"};

const std::array<std::string, 2> kMetricNames = {"EXACT_EUCLIDEAN", "TSPLIB_ROUNDED"};

const std::array<std::string, 3> kObjectiveNames = {"SUM", "BOTTLENECK", "MINMAX"};

}  // namespace

const std::string& variant_kind_name(VariantKind k) { return kKindNames[static_cast<int>(k)]; }

VariantKind variant_kind_from_name(const std::string& name) {
    for (size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<VariantKind>(i);
    }
    throw Error("unknown variant kind: " + name);
}

std::vector<VariantKind> all_variant_kinds() {
    std::vector<VariantKind> out;
    for (size_t i = 0; i < kKindNames.size(); ++i) out.push_back(static_cast<VariantKind>(i));
    return out;
}

const std::string& metric_name(Metric m) { return kMetricNames[static_cast<int>(m)]; }

Metric metric_from_name(const std::string& name) {
    for (size_t i = 0; i < kMetricNames.size(); ++i) {
        if (kMetricNames[i] == name) return static_cast<Metric>(i);
    }
    throw Error("unknown metric: " + name);
}

const std::string& objective_kind_name(ObjectiveKind k) {
    return kObjectiveNames[static_cast<int>(k)];
}

ObjectiveKind objective_kind_for(VariantKind k) {
    switch (k) {
        case VariantKind::BTSP: return ObjectiveKind::BOTTLENECK;
        case VariantKind::MINMAX_MTSP: return ObjectiveKind::MINMAX;
        default: return ObjectiveKind::SUM;
    }
}

bool ProblemInstance::is_depot(int id) const {
    for (int d : variant.depot_ids) {
        if (d == id) return true;
    }
    return false;
}

std::vector<int> ProblemInstance::customer_ids() const {
    std::vector<int> out;
    out.reserve(locations.size());
    for (const auto& loc : locations) {
        if (!is_depot(loc.id)) out.push_back(loc.id);
    }
    return out;
}

void ProblemInstance::validate() const {
    const int n = size();
    if (n < 2) throw Error("locations: need at least 2, got " + std::to_string(n));

    std::unordered_set<int> ids;
    for (const auto& loc : locations) {
        if (!ids.insert(loc.id).second)
            throw Error("locations: duplicate id " + std::to_string(loc.id));
        if (loc.id < 0 || loc.id >= n)
            throw Error("locations: id " + std::to_string(loc.id) +
                        " outside contiguous range [0, " + std::to_string(n) + ")");
        if (loc.demand < 0)
            throw Error("locations: negative demand at id " + std::to_string(loc.id));
        if (!std::isfinite(loc.x) || !std::isfinite(loc.y))
            throw Error("locations: non-finite coordinate at id " + std::to_string(loc.id));
    }

    if (variant.depot_ids.empty()) throw Error("variant.depot_ids: empty");
    std::set<int> depot_set;
    for (int d : variant.depot_ids) {
        if (!ids.count(d)) throw Error("variant.depot_ids: unknown id " + std::to_string(d));
        if (!depot_set.insert(d).second)
            throw Error("variant.depot_ids: duplicate id " + std::to_string(d));
    }
    for (const auto& loc : locations) {
        if (is_depot(loc.id) && loc.demand != 0)
            throw Error("locations: depot " + std::to_string(loc.id) + " has nonzero demand");
    }

    const VariantKind kind = variant.kind;
    auto require = [&](bool present, bool wanted, const std::string& field) {
        if (wanted && !present)
            throw Error("variant." + field + ": required for " + variant_kind_name(kind));
        if (!wanted && present)
            throw Error("variant." + field + ": not allowed for " + variant_kind_name(kind));
    };
    require(variant.k.has_value(), kind == VariantKind::KTSP, "k");
    require(variant.clusters.has_value(), kind == VariantKind::GTSP, "clusters");
    require(variant.num_robots.has_value(), is_multi_robot(kind), "num_robots");
    require(variant.capacity.has_value(), kind == VariantKind::CVRP, "capacity");

    if (kind == VariantKind::MD_MTSP) {
        if (static_cast<int>(variant.depot_ids.size()) > variant.robots())
            throw Error("variant.depot_ids: more depots than robots");
    } else if (variant.depot_ids.size() != 1) {
        throw Error("variant.depot_ids: exactly one depot expected for " +
                    variant_kind_name(kind));
    }

    if (variant.k) {
        if (*variant.k <= 1 || *variant.k > n)
            throw Error("variant.k: must satisfy 1 < k <= n, got " + std::to_string(*variant.k));
    }
    if (variant.num_robots && *variant.num_robots < 1)
        throw Error("variant.num_robots: must be >= 1");
    if (variant.capacity && *variant.capacity <= 0) throw Error("variant.capacity: must be > 0");

    if (variant.clusters) {
        std::unordered_set<int> seen;
        for (const auto& cluster : *variant.clusters) {
            if (cluster.empty()) throw Error("variant.clusters: empty cluster");
            for (int id : cluster) {
                if (!ids.count(id) || is_depot(id))
                    throw Error("variant.clusters: id " + std::to_string(id) +
                                " is not a customer");
                if (!seen.insert(id).second)
                    throw Error("variant.clusters: id " + std::to_string(id) +
                                " appears in two clusters");
            }
        }
        for (const auto& loc : locations) {
            if (!is_depot(loc.id) && !seen.count(loc.id))
                throw Error("variant.clusters: customer " + std::to_string(loc.id) +
                            " is in no cluster");
        }
    }
}

DistanceMatrix::DistanceMatrix(int n, std::vector<double> values) : n_(n), d_(std::move(values)) {
    if (d_.size() != static_cast<size_t>(n) * n) throw Error("distance matrix: bad dimensions");
}

double euclidean(const Location& a, const Location& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

double tsplib_nint(double x) { return std::floor(x + 0.5); }

DistanceMatrix build_distance_matrix(const ProblemInstance& instance) {
    const int n = instance.size();
    std::vector<const Location*> by_id(n, nullptr);
    for (const auto& loc : instance.locations) by_id[loc.id] = &loc;

    std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double v = euclidean(*by_id[i], *by_id[j]);
            if (instance.metric == Metric::TSPLIB_ROUNDED) v = tsplib_nint(v);
            d[static_cast<size_t>(i) * n + j] = v;
            d[static_cast<size_t>(j) * n + i] = v;
        }
    }
    return DistanceMatrix(n, std::move(d));
}

namespace {

// Depot a given robot is anchored to. Multi-depot fleets assign robots to
// depots round-robin; every other variant has a single depot.
int depot_for_robot(const VariantSpec& variant, int robot) {
    const auto& depots = variant.depot_ids;
    return depots[robot % depots.size()];
}

}  // namespace

ObjectiveValue evaluate(const ProblemInstance& instance, const Solution& solution) {
    const int n = instance.size();
    const int expected_routes = is_single_robot(instance.variant.kind) ? 1 : instance.variant.robots();
    if (static_cast<int>(solution.routes.size()) != expected_routes)
        throw Error("evaluate: expected " + std::to_string(expected_routes) + " routes, got " +
                    std::to_string(solution.routes.size()));

    const DistanceMatrix dm = build_distance_matrix(instance);
    const ObjectiveKind kind = objective_kind_for(instance.variant.kind);

    double sum = 0.0;
    double bottleneck = 0.0;
    double minmax = 0.0;
    for (size_t r = 0; r < solution.routes.size(); ++r) {
        const auto& visits = solution.routes[r].visits;
        if (visits.empty()) throw Error("evaluate: route " + std::to_string(r) + " has no visits");
        const int depot = depot_for_robot(instance.variant, static_cast<int>(r));
        if (visits.front() != depot || visits.back() != depot)
            throw Error("evaluate: route " + std::to_string(r) + " does not start and end at depot " +
                        std::to_string(depot));
        double route_len = 0.0;
        for (size_t i = 0; i + 1 < visits.size(); ++i) {
            const int a = visits[i];
            const int b = visits[i + 1];
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw Error("evaluate: route " + std::to_string(r) + " visits unknown id " +
                            std::to_string(a < 0 || a >= n ? a : b));
            const double hop = dm(a, b);
            route_len += hop;
            bottleneck = std::max(bottleneck, hop);
        }
        sum += route_len;
        minmax = std::max(minmax, route_len);
    }

    switch (kind) {
        case ObjectiveKind::SUM: return {sum, kind};
        case ObjectiveKind::BOTTLENECK: return {bottleneck, kind};
        case ObjectiveKind::MINMAX: return {minmax, kind};
    }
    throw Error("evaluate: unreachable");
}

bool objective_close(double a, double b, Metric metric) {
    if (metric == Metric::TSPLIB_ROUNDED) return a == b;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-9 * scale;
}

}  // namespace routebench
