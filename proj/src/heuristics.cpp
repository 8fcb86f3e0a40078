#include "routebench/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "routebench/verifier.hpp"

namespace routebench {

Solution nearest_neighbor(const DistanceMatrix& dm, int depot) {
    const int n = dm.size();
    std::vector<bool> visited(n, false);
    visited[depot] = true;
    std::vector<int> tour = {depot};
    int current = depot;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_d = 0.0;
        for (int j = 0; j < n; ++j) {
            if (visited[j]) continue;
            const double d = dm(current, j);
            if (best == -1 || d < best_d || (d == best_d && j < best)) {
                best = j;
                best_d = d;
            }
        }
        visited[best] = true;
        tour.push_back(best);
        current = best;
    }
    tour.push_back(depot);
    return Solution{{Route{tour}}};
}

Solution two_opt(const DistanceMatrix& dm, const Solution& solution) {
    if (solution.routes.size() != 1) throw Error("two_opt: expects a single tour");
    std::vector<int> tour = solution.routes[0].visits;
    const int len = static_cast<int>(tour.size());
    if (len < 5) return solution;  // nothing to exchange on <= 2 customers

    for (;;) {
        double best_delta = -1e-12;
        int best_i = -1, best_j = -1;
        for (int i = 1; i + 1 < len - 1; ++i) {
            for (int j = i + 1; j < len - 1; ++j) {
                // Reverse tour[i..j]: replaces edges (i-1,i) and (j,j+1).
                const double removed = dm(tour[i - 1], tour[i]) + dm(tour[j], tour[j + 1]);
                const double added = dm(tour[i - 1], tour[j]) + dm(tour[i], tour[j + 1]);
                const double delta = added - removed;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;
        std::reverse(tour.begin() + best_i, tour.begin() + best_j + 1);
    }
    return Solution{{Route{tour}}};
}

SavingsResult savings_cvrp(const ProblemInstance& instance) {
    if (instance.variant.kind != VariantKind::CVRP) throw Error("savings_cvrp: CVRP instances only");
    const DistanceMatrix dm = build_distance_matrix(instance);
    const int n = instance.size();
    const int depot = instance.variant.depot_ids[0];
    const long long capacity = *instance.variant.capacity;
    const int m = instance.variant.robots();

    std::vector<int> demand(n, 0);
    for (const auto& loc : instance.locations) demand[loc.id] = loc.demand;

    // One open route per customer; routes merge end-to-end by best savings.
    std::vector<std::vector<int>> routes;  // customer sequences, no depots
    std::vector<long long> load;
    std::vector<int> route_of(n, -1);
    for (int id = 0; id < n; ++id) {
        if (id == depot) continue;
        route_of[id] = static_cast<int>(routes.size());
        routes.push_back({id});
        load.push_back(demand[id]);
    }

    struct Saving {
        double value;
        int i, j;
    };
    std::vector<Saving> savings;
    for (int i = 0; i < n; ++i) {
        if (i == depot) continue;
        for (int j = i + 1; j < n; ++j) {
            if (j == depot) continue;
            savings.push_back({dm(depot, i) + dm(depot, j) - dm(i, j), i, j});
        }
    }
    std::sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    auto route_alive = [&](int r) { return !routes[r].empty(); };
    for (const auto& s : savings) {
        const int ri = route_of[s.i];
        const int rj = route_of[s.j];
        if (ri == rj || !route_alive(ri) || !route_alive(rj)) continue;
        if (load[ri] + load[rj] > capacity) continue;
        // Merge only at route ends so both stay simple paths.
        auto& a = routes[ri];
        auto& b = routes[rj];
        const bool i_first = a.front() == s.i, i_last = a.back() == s.i;
        const bool j_first = b.front() == s.j, j_last = b.back() == s.j;
        if (!(i_first || i_last) || !(j_first || j_last)) continue;
        if (i_last && j_first) {
            a.insert(a.end(), b.begin(), b.end());
        } else if (i_last && j_last) {
            a.insert(a.end(), b.rbegin(), b.rend());
        } else if (i_first && j_first) {
            std::reverse(a.begin(), a.end());
            a.insert(a.end(), b.begin(), b.end());
        } else {  // i_first && j_last
            a.insert(a.begin(), b.begin(), b.end());
        }
        load[ri] += load[rj];
        for (int id : b) route_of[id] = ri;
        b.clear();
        load[rj] = 0;
    }

    std::vector<std::vector<int>> live;
    std::vector<long long> live_load;
    for (size_t r = 0; r < routes.size(); ++r) {
        if (!routes[r].empty()) {
            live.push_back(routes[r]);
            live_load.push_back(load[r]);
        }
    }

    // Merge smallest routes while the fleet is exceeded and capacity allows.
    bool fleet_feasible = true;
    while (static_cast<int>(live.size()) > m) {
        size_t smallest = 0;
        for (size_t r = 1; r < live.size(); ++r)
            if (live_load[r] < live_load[smallest]) smallest = r;
        int partner = -1;
        for (size_t r = 0; r < live.size(); ++r) {
            if (r == smallest) continue;
            if (live_load[r] + live_load[smallest] <= capacity &&
                (partner < 0 || live_load[r] < live_load[partner]))
                partner = static_cast<int>(r);
        }
        if (partner < 0) {
            fleet_feasible = false;
            break;
        }
        live[partner].insert(live[partner].end(), live[smallest].begin(), live[smallest].end());
        live_load[partner] += live_load[smallest];
        live.erase(live.begin() + smallest);
        live_load.erase(live_load.begin() + smallest);
    }

    Solution solution;
    for (const auto& seq : live) {
        std::vector<int> visits = {depot};
        visits.insert(visits.end(), seq.begin(), seq.end());
        visits.push_back(depot);
        solution.routes.push_back(Route{visits});
    }
    while (fleet_feasible && static_cast<int>(solution.routes.size()) < m)
        solution.routes.push_back(Route{{depot, depot}});
    return {solution, fleet_feasible};
}

namespace {

// Round-robin sweep assignment by polar angle around the depot centroid,
// then a nearest-neighbor ordering per robot; keeps every robot nonempty
// whenever there are at least as many customers as robots.
Solution sweep_assignment(const ProblemInstance& instance, const DistanceMatrix& dm) {
    const int m = instance.variant.robots();
    const auto& depots = instance.variant.depot_ids;
    const int n = instance.size();

    std::vector<const Location*> by_id(n, nullptr);
    for (const auto& loc : instance.locations) by_id[loc.id] = &loc;

    double cx = 0.0, cy = 0.0;
    for (int d : depots) {
        cx += by_id[d]->x;
        cy += by_id[d]->y;
    }
    cx /= depots.size();
    cy /= depots.size();

    std::vector<int> customers = instance.customer_ids();
    std::sort(customers.begin(), customers.end(), [&](int a, int b) {
        const double aa = std::atan2(by_id[a]->y - cy, by_id[a]->x - cx);
        const double ab = std::atan2(by_id[b]->y - cy, by_id[b]->x - cx);
        if (aa != ab) return aa < ab;
        return a < b;
    });

    std::vector<std::vector<int>> groups(m);
    for (size_t i = 0; i < customers.size(); ++i) groups[i % m].push_back(customers[i]);

    Solution solution;
    for (int r = 0; r < m; ++r) {
        const int depot = depots[r % depots.size()];
        std::vector<int> visits = {depot};
        std::vector<int> pending = groups[r];
        int current = depot;
        while (!pending.empty()) {
            size_t best = 0;
            for (size_t i = 1; i < pending.size(); ++i) {
                const double d = dm(current, pending[i]);
                const double bd = dm(current, pending[best]);
                if (d < bd || (d == bd && pending[i] < pending[best])) best = i;
            }
            current = pending[best];
            visits.push_back(current);
            pending.erase(pending.begin() + best);
        }
        visits.push_back(depot);
        solution.routes.push_back(Route{visits});
    }
    return solution;
}

}  // namespace

std::optional<Solution> multirobot_incumbent(const ProblemInstance& instance,
                                             const DistanceMatrix& dm,
                                             const FeasibilityRules& rules) {
    if (!is_multi_robot(instance.variant.kind)) throw Error("multirobot_incumbent: fleet kinds only");

    Solution candidate;
    if (instance.variant.kind == VariantKind::CVRP) {
        auto savings = savings_cvrp(instance);
        if (!savings.fleet_feasible) return std::nullopt;
        candidate = savings.solution;
    } else {
        candidate = sweep_assignment(instance, dm);
    }

    if (!check_feasible(instance, candidate, rules).feasible) return std::nullopt;
    return candidate;
}

}  // namespace routebench
