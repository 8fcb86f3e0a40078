#include "routebench/verifier.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

namespace routebench {

namespace {

const std::array<std::string, 9> kConstraintNames = {
    "ROUTE_COUNT", "ENDPOINT",  "UNKNOWN_ID", "DEPOT_INTERIOR", "COVERAGE",
    "K_COUNT",     "CLUSTER",   "CAPACITY",   "EMPTY_ROUTE"};

}  // namespace

const std::string& constraint_id_name(ConstraintId id) {
    return kConstraintNames[static_cast<int>(id)];
}

VerdictReport check_feasible(const ProblemInstance& instance, const Solution& solution,
                             const FeasibilityRules& rules) {
    VerdictReport report;
    auto violate = [&](ConstraintId id, std::string detail) {
        report.violations.push_back({id, std::move(detail)});
    };

    const int n = instance.size();
    const VariantKind kind = instance.variant.kind;
    const int expected_routes = is_single_robot(kind) ? 1 : instance.variant.robots();
    const auto& depots = instance.variant.depot_ids;

    std::vector<int> demand_by_id(n, 0);
    for (const auto& loc : instance.locations) demand_by_id[loc.id] = loc.demand;

    if (static_cast<int>(solution.routes.size()) != expected_routes)
        violate(ConstraintId::ROUTE_COUNT,
                "expected " + std::to_string(expected_routes) + " routes, got " +
                    std::to_string(solution.routes.size()));

    const bool route_count_ok = static_cast<int>(solution.routes.size()) == expected_routes;

    // Per-route structure: endpoints, depot placement, capacity, idleness.
    for (size_t r = 0; r < solution.routes.size(); ++r) {
        const auto& visits = solution.routes[r].visits;
        const std::string route_tag = "route " + std::to_string(r);

        for (int id : visits) {
            if (id < 0 || id >= n)
                violate(ConstraintId::UNKNOWN_ID, route_tag + " visits unknown id " + std::to_string(id));
        }

        if (visits.size() < 2) {
            violate(ConstraintId::ENDPOINT, route_tag + " has fewer than 2 visits");
            continue;
        }

        // Which depot this route must use. Robots map to depots round-robin
        // for the multi-depot kind; every other kind has one depot. When the
        // route count is wrong the mapping is meaningless for MD, so the
        // endpoint rule is only checked against the full depot set then.
        if (route_count_ok || depots.size() == 1) {
            const int depot = depots[r % depots.size()];
            if (visits.front() != depot)
                violate(ConstraintId::ENDPOINT, route_tag + " starts at " +
                                                    std::to_string(visits.front()) + ", expected depot " +
                                                    std::to_string(depot));
            if (visits.back() != depot)
                violate(ConstraintId::ENDPOINT, route_tag + " ends at " +
                                                    std::to_string(visits.back()) + ", expected depot " +
                                                    std::to_string(depot));
        }

        for (size_t i = 1; i + 1 < visits.size(); ++i) {
            if (instance.is_depot(visits[i]))
                violate(ConstraintId::DEPOT_INTERIOR,
                        route_tag + " visits depot " + std::to_string(visits[i]) +
                            " between its endpoints");
        }

        const bool empty = std::none_of(visits.begin() + 1, visits.end() - 1, [&](int id) {
            return id >= 0 && id < n && !instance.is_depot(id);
        });
        const bool require_nonempty =
            (kind == VariantKind::MTSP || kind == VariantKind::MINMAX_MTSP ||
             kind == VariantKind::MD_MTSP)
                ? rules.mtsp_require_nonempty
                : (kind == VariantKind::CVRP ? !rules.cvrp_allow_empty : false);
        if (empty && require_nonempty && route_count_ok)
            violate(ConstraintId::EMPTY_ROUTE, route_tag + " visits no location");

        if (kind == VariantKind::CVRP) {
            long long load = 0;
            for (int id : visits) {
                if (id >= 0 && id < n && !instance.is_depot(id)) load += demand_by_id[id];
            }
            if (load > *instance.variant.capacity)
                violate(ConstraintId::CAPACITY, route_tag + " serves demand " + std::to_string(load) +
                                                    " > capacity " +
                                                    std::to_string(*instance.variant.capacity));
        }
    }

    // Coverage rules across all routes. Visit counts index customers by id;
    // unknown ids were already reported and are skipped here.
    std::vector<int> visit_count(n, 0);
    for (const auto& route : solution.routes) {
        if (route.visits.size() < 2) continue;
        for (size_t i = 1; i + 1 < route.visits.size(); ++i) {
            const int id = route.visits[i];
            if (id >= 0 && id < n && !instance.is_depot(id)) ++visit_count[id];
        }
    }

    switch (kind) {
        case VariantKind::KTSP: {
            int visited = 0;
            for (int id = 0; id < n; ++id) {
                if (instance.is_depot(id)) continue;
                if (visit_count[id] > 1)
                    violate(ConstraintId::COVERAGE, "location " + std::to_string(id) + " visited " +
                                                        std::to_string(visit_count[id]) + " times");
                if (visit_count[id] >= 1) ++visited;
            }
            const int k = *instance.variant.k;
            if (visited != k - 1)
                violate(ConstraintId::K_COUNT, "tour visits " + std::to_string(visited + 1) +
                                                   " locations including the depot, expected k = " +
                                                   std::to_string(k));
            break;
        }
        case VariantKind::GTSP: {
            for (int id = 0; id < n; ++id) {
                if (!instance.is_depot(id) && visit_count[id] > 1)
                    violate(ConstraintId::COVERAGE, "location " + std::to_string(id) + " visited " +
                                                        std::to_string(visit_count[id]) + " times");
            }
            const auto& clusters = *instance.variant.clusters;
            for (size_t c = 0; c < clusters.size(); ++c) {
                int hits = 0;
                for (int id : clusters[c]) hits += visit_count[id];
                if (hits != 1)
                    violate(ConstraintId::CLUSTER, "cluster " + std::to_string(c) + " visited " +
                                                       std::to_string(hits) + " times, expected 1");
            }
            break;
        }
        default: {
            for (int id = 0; id < n; ++id) {
                if (instance.is_depot(id)) continue;
                if (visit_count[id] != 1)
                    violate(ConstraintId::COVERAGE, "location " + std::to_string(id) + " visited " +
                                                        std::to_string(visit_count[id]) +
                                                        " times, expected 1");
            }
            break;
        }
    }

    report.feasible = report.violations.empty();
    return report;
}

}  // namespace routebench
