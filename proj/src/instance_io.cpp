#include "routebench/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace routebench {

namespace {

double uniform_coordinate(std::mt19937_64& rng) {
    // 53 uniform bits scaled to [0,100); avoids distribution-object
    // implementation differences across standard libraries.
    const std::uint64_t r = rng();
    return static_cast<double>(r >> 11) * (100.0 / 9007199254740992.0);
}

std::mt19937_64 stream_rng(VariantKind kind, int n, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffULL),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kind),
                      static_cast<std::uint32_t>(n)};
    return std::mt19937_64(seq);
}

std::vector<std::vector<int>> build_clusters(const std::vector<Location>& locations,
                                             int cluster_count) {
    double cx = 0.0, cy = 0.0;
    for (const auto& loc : locations) {
        cx += loc.x;
        cy += loc.y;
    }
    cx /= locations.size();
    cy /= locations.size();

    std::vector<int> customers;
    for (const auto& loc : locations) {
        if (loc.id != 0) customers.push_back(loc.id);
    }
    std::vector<double> angle(locations.size(), 0.0);
    for (const auto& loc : locations) angle[loc.id] = std::atan2(loc.y - cy, loc.x - cx);
    std::sort(customers.begin(), customers.end(), [&](int a, int b) {
        if (angle[a] != angle[b]) return angle[a] < angle[b];
        return a < b;
    });

    std::vector<std::vector<int>> clusters(cluster_count);
    for (size_t i = 0; i < customers.size(); ++i) clusters[i % cluster_count].push_back(customers[i]);
    for (auto& cluster : clusters) std::sort(cluster.begin(), cluster.end());
    return clusters;
}

}  // namespace

ProblemInstance generate_random_instance(VariantKind kind, int n, std::uint64_t seed,
                                         const GenerationRules& rules) {
    if (!is_single_robot(kind))
        throw Error("generate_random_instance: " + variant_kind_name(kind) +
                    " is file-derived, not generated");
    if (n < 3) throw Error("generate_random_instance: n must be >= 3");

    auto rng = stream_rng(kind, n, seed);
    ProblemInstance instance;
    instance.locations.reserve(n);
    for (int id = 0; id < n; ++id) {
        Location loc;
        loc.id = id;
        loc.x = uniform_coordinate(rng);
        loc.y = uniform_coordinate(rng);
        instance.locations.push_back(loc);
    }

    instance.variant.kind = kind;
    instance.variant.depot_ids = {0};
    instance.metric = Metric::EXACT_EUCLIDEAN;
    instance.seed = seed;

    if (kind == VariantKind::KTSP) {
        const int k = rules.ktsp_k.value_or((n + 1) / 2);
        instance.variant.k = k;
    } else if (kind == VariantKind::GTSP) {
        const int c = rules.gtsp_cluster_count.value_or((n + 4) / 5);
        if (c < 1 || c > n - 1)
            throw Error("generate_random_instance: cluster count " + std::to_string(c) +
                        " out of range for n=" + std::to_string(n));
        instance.variant.clusters = build_clusters(instance.locations, c);
    }

    std::ostringstream name;
    name << variant_kind_name(kind) << "-n" << n << "-s" << seed;
    instance.name = name.str();
    instance.validate();
    return instance;
}

// ------------------------------------------------------------- TSPLIB ---

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// "KEY : value" / "KEY: value" / bare "SECTION_NAME"; returns (key, value).
std::pair<std::string, std::string> split_keyword(const std::string& line) {
    size_t colon = line.find(':');
    if (colon == std::string::npos) return {trim(line), ""};
    return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

int parse_int_field(const std::string& text, const std::string& what, int line_no) {
    try {
        size_t used = 0;
        int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return value;
    } catch (const std::exception&) {
        throw ParseError("malformed integer for " + what + ": '" + text + "'", line_no);
    }
}

double parse_double_field(const std::string& text, const std::string& what, int line_no) {
    try {
        size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return value;
    } catch (const std::exception&) {
        throw ParseError("malformed number for " + what + ": '" + text + "'", line_no);
    }
}

}  // namespace

ProblemInstance parse_tsplib(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    std::string name, type, edge_weight_type;
    int dimension = -1;
    std::optional<int> capacity;
    std::vector<Location> locations;
    std::vector<int> demands;
    std::vector<int> depots;  // 1-based, as written in the file
    bool saw_coords = false, saw_demands = false, saw_depots = false;

    enum class Section { HEADER, COORDS, DEMANDS, DEPOTS, DONE };
    Section section = Section::HEADER;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        if (section == Section::HEADER) {
            auto [key, value] = split_keyword(stripped);
            if (key == "NODE_COORD_SECTION") {
                if (dimension <= 0) throw ParseError("NODE_COORD_SECTION before DIMENSION", line_no);
                section = Section::COORDS;
                saw_coords = true;
                locations.reserve(dimension);
                continue;
            }
            if (key == "DEMAND_SECTION") {
                if (dimension <= 0) throw ParseError("DEMAND_SECTION before DIMENSION", line_no);
                section = Section::DEMANDS;
                saw_demands = true;
                demands.assign(dimension, -1);
                continue;
            }
            if (key == "DEPOT_SECTION") {
                section = Section::DEPOTS;
                saw_depots = true;
                continue;
            }
            if (key == "EOF") break;
            if (key == "NAME") name = value;
            else if (key == "TYPE") type = value;
            else if (key == "DIMENSION") dimension = parse_int_field(value, "DIMENSION", line_no);
            else if (key == "CAPACITY") capacity = parse_int_field(value, "CAPACITY", line_no);
            else if (key == "EDGE_WEIGHT_TYPE") edge_weight_type = value;
            else if (key == "COMMENT" || key == "BEST_KNOWN" || key == "DISPLAY_DATA_TYPE") {
                // informational; ignored
            } else if (value.empty()) {
                throw ParseError("unknown section '" + key + "'", line_no);
            }
            // Unknown "KEY : value" headers are tolerated.
            continue;
        }

        if (stripped == "EOF") break;

        if (section == Section::COORDS) {
            if (static_cast<int>(locations.size()) == dimension) {
                // Section ended; re-interpret this line as a header keyword.
                section = Section::HEADER;
                auto [key, value] = split_keyword(stripped);
                (void)value;
                if (key == "DEMAND_SECTION") {
                    section = Section::DEMANDS;
                    saw_demands = true;
                    demands.assign(dimension, -1);
                } else if (key == "DEPOT_SECTION") {
                    section = Section::DEPOTS;
                    saw_depots = true;
                } else if (key != "EOF") {
                    throw ParseError("unexpected line after NODE_COORD_SECTION: '" + stripped + "'",
                                     line_no);
                }
                continue;
            }
            std::istringstream row(stripped);
            std::string id_tok, x_tok, y_tok, extra;
            row >> id_tok >> x_tok >> y_tok;
            if (y_tok.empty()) throw ParseError("node line needs 'id x y'", line_no);
            if (row >> extra) throw ParseError("trailing tokens on node line", line_no);
            Location loc;
            loc.id = parse_int_field(id_tok, "node id", line_no) - 1;
            loc.x = parse_double_field(x_tok, "x coordinate", line_no);
            loc.y = parse_double_field(y_tok, "y coordinate", line_no);
            if (loc.id < 0 || loc.id >= dimension)
                throw ParseError("node id out of range: " + id_tok, line_no);
            locations.push_back(loc);
            continue;
        }

        if (section == Section::DEMANDS) {
            std::istringstream row(stripped);
            std::string id_tok, demand_tok, extra;
            row >> id_tok >> demand_tok;
            if (demand_tok.empty()) throw ParseError("demand line needs 'id demand'", line_no);
            if (row >> extra) throw ParseError("trailing tokens on demand line", line_no);
            const int id = parse_int_field(id_tok, "demand node id", line_no) - 1;
            if (id < 0 || id >= dimension)
                throw ParseError("demand node id out of range: " + id_tok, line_no);
            demands[id] = parse_int_field(demand_tok, "demand", line_no);
            bool complete = std::all_of(demands.begin(), demands.end(), [](int d) { return d >= 0; });
            if (complete) section = Section::HEADER;
            continue;
        }

        if (section == Section::DEPOTS) {
            const int v = parse_int_field(stripped, "depot id", line_no);
            if (v == -1) {
                section = Section::HEADER;
                continue;
            }
            depots.push_back(v);
            continue;
        }
    }

    if (name.empty()) throw ParseError("missing NAME header");
    if (dimension <= 0) throw ParseError("missing DIMENSION header");
    if (edge_weight_type != "EUC_2D")
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + edge_weight_type +
                         "' (only EUC_2D is supported)");
    if (!saw_coords) throw ParseError("missing NODE_COORD_SECTION");
    if (static_cast<int>(locations.size()) != dimension)
        throw ParseError("NODE_COORD_SECTION has " + std::to_string(locations.size()) +
                         " entries, DIMENSION is " + std::to_string(dimension));
    if (type == "CVRP") {
        if (!saw_demands) throw ParseError("TYPE CVRP requires a DEMAND_SECTION");
        if (!capacity) throw ParseError("TYPE CVRP requires a CAPACITY header");
    } else {
        throw ParseError("unsupported TYPE '" + type + "' (only CVRP files are ingested)");
    }
    for (int i = 0; i < dimension; ++i) {
        if (demands[i] < 0)
            throw ParseError("DEMAND_SECTION missing node " + std::to_string(i + 1));
    }
    if (!saw_depots || depots.empty()) throw ParseError("missing DEPOT_SECTION");
    if (depots.size() != 1)
        throw ParseError("expected exactly one depot, got " + std::to_string(depots.size()));

    // Robot count from the trailing "-k<m>" of the instance name.
    int m = -1;
    size_t kpos = name.rfind("-k");
    if (kpos != std::string::npos) {
        try {
            m = std::stoi(name.substr(kpos + 2));
        } catch (const std::exception&) {
            m = -1;
        }
    }
    if (m < 1) throw ParseError("instance name '" + name + "' lacks a '-k<robots>' suffix");

    ProblemInstance instance;
    instance.name = name;
    instance.metric = Metric::TSPLIB_ROUNDED;
    instance.locations = std::move(locations);
    std::sort(instance.locations.begin(), instance.locations.end(),
              [](const Location& a, const Location& b) { return a.id < b.id; });
    for (auto& loc : instance.locations) loc.demand = demands[loc.id];

    instance.variant.kind = VariantKind::CVRP;
    instance.variant.num_robots = m;
    instance.variant.capacity = capacity;
    instance.variant.depot_ids = {depots[0] - 1};
    instance.validate();
    return instance;
}

ProblemInstance derive_variant_instance(const ProblemInstance& base, VariantKind target) {
    if (base.variant.kind != VariantKind::CVRP)
        throw Error("derive_variant_instance: base must be CVRP, got " +
                    variant_kind_name(base.variant.kind));
    if (!is_multi_robot(target))
        throw Error("derive_variant_instance: target must be a multi-robot kind");

    ProblemInstance out = base;
    out.name = variant_kind_name(target) + "-" + base.name;
    out.variant.kind = target;

    if (target == VariantKind::CVRP) {
        out.name = base.name;
        out.validate();
        return out;
    }

    out.variant.capacity.reset();
    for (auto& loc : out.locations) loc.demand = 0;

    if (target == VariantKind::MD_MTSP) {
        const int d = std::min(out.variant.robots(), 2);
        if (d == 2) {
            const DistanceMatrix dm = build_distance_matrix(base);
            const int depot = base.variant.depot_ids[0];
            int farthest = -1;
            double best = -1.0;
            for (const auto& loc : base.locations) {
                if (loc.id == depot) continue;
                const double dist = dm(depot, loc.id);
                if (dist > best || (dist == best && loc.id < farthest)) {
                    best = dist;
                    farthest = loc.id;
                }
            }
            out.variant.depot_ids = {depot, farthest};
        }
    }
    out.validate();
    return out;
}

// --------------------------------------------------------------- JSON ---

namespace {

ordered_json variant_to_json(const VariantSpec& v) {
    ordered_json j;
    j["kind"] = variant_kind_name(v.kind);
    j["depot_ids"] = v.depot_ids;
    if (v.k) j["k"] = *v.k;
    if (v.clusters) j["clusters"] = *v.clusters;
    if (v.num_robots) j["num_robots"] = *v.num_robots;
    if (v.capacity) j["capacity"] = *v.capacity;
    return j;
}

VariantSpec variant_from_json(const ordered_json& j) {
    VariantSpec v;
    if (!j.contains("kind")) throw Error("instance JSON: missing variant.kind");
    v.kind = variant_kind_from_name(j.at("kind").get<std::string>());
    if (!j.contains("depot_ids")) throw Error("instance JSON: missing variant.depot_ids");
    v.depot_ids = j.at("depot_ids").get<std::vector<int>>();
    if (j.contains("k")) v.k = j.at("k").get<int>();
    if (j.contains("clusters")) v.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
    if (j.contains("num_robots")) v.num_robots = j.at("num_robots").get<int>();
    if (j.contains("capacity")) v.capacity = j.at("capacity").get<int>();
    return v;
}

}  // namespace

std::string instance_to_json(const ProblemInstance& instance) {
    ordered_json j;
    j["schema"] = "routebench.instance.v1";
    j["name"] = instance.name;
    j["variant"] = variant_to_json(instance.variant);
    j["metric"] = metric_name(instance.metric);
    if (instance.seed) j["seed"] = *instance.seed;
    ordered_json locs = ordered_json::array();
    for (const auto& loc : instance.locations) {
        ordered_json entry;
        entry["id"] = loc.id;
        entry["x"] = loc.x;
        entry["y"] = loc.y;
        entry["demand"] = loc.demand;
        locs.push_back(entry);
    }
    j["locations"] = locs;
    return j.dump(2) + "\n";
}

ProblemInstance instance_from_json(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("instance JSON: ") + e.what());
    }
    ProblemInstance instance;
    try {
        if (!j.contains("name")) throw Error("instance JSON: missing name");
        instance.name = j.at("name").get<std::string>();
        if (!j.contains("variant")) throw Error("instance JSON: missing variant");
        instance.variant = variant_from_json(j.at("variant"));
        if (!j.contains("metric")) throw Error("instance JSON: missing metric");
        instance.metric = metric_from_name(j.at("metric").get<std::string>());
        if (j.contains("seed")) instance.seed = j.at("seed").get<std::uint64_t>();
        if (!j.contains("locations")) throw Error("instance JSON: missing locations");
        for (const auto& entry : j.at("locations")) {
            Location loc;
            loc.id = entry.at("id").get<int>();
            loc.x = entry.at("x").get<double>();
            loc.y = entry.at("y").get<double>();
            loc.demand = entry.value("demand", 0);
            instance.locations.push_back(loc);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("instance JSON: ") + e.what());
    }
    instance.validate();
    return instance;
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << instance_to_json(instance);
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return instance_from_json(buf.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

// ------------------------------------------------------------ dataset ---

const std::vector<int> kDatasetSizes = {10, 15, 20};

namespace {

const std::vector<std::string> kTsplibFixtures = {"P-n16-k8", "P-n19-k2", "P-n21-k2",
                                                  "E-n22-k4", "P-n23-k8"};

ordered_json manifest_entry_json(const ManifestEntry& e) {
    ordered_json j;
    j["name"] = e.name;
    j["kind"] = variant_kind_name(e.kind);
    j["n"] = e.n;
    if (e.seed) j["seed"] = *e.seed;
    if (!e.source_file.empty()) j["source_file"] = e.source_file;
    j["path"] = e.path;
    return j;
}

ManifestEntry manifest_entry_from_json(const ordered_json& j) {
    ManifestEntry e;
    e.name = j.at("name").get<std::string>();
    e.kind = variant_kind_from_name(j.at("kind").get<std::string>());
    e.n = j.at("n").get<int>();
    if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("source_file")) e.source_file = j.at("source_file").get<std::string>();
    e.path = j.at("path").get<std::string>();
    return e;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void prepare_dataset_dir(const fs::path& out, bool force) {
    if (fs::exists(out / "manifest.json") || fs::exists(out / "instances")) {
        if (!force)
            throw Error("dataset already exists at " + out.string() + " (use --force to replace)");
        fs::remove_all(out / "instances");
        fs::remove(out / "manifest.json");
    }
    fs::create_directories(out / "instances");
}

std::vector<ManifestEntry> derive_from_fixtures(const fs::path& out, const fs::path& tsplib_dir) {
    const std::vector<VariantKind> multi = {VariantKind::MTSP, VariantKind::MINMAX_MTSP,
                                            VariantKind::MD_MTSP, VariantKind::CVRP};
    std::vector<ManifestEntry> entries;
    for (VariantKind kind : multi) {
        for (const auto& stem : kTsplibFixtures) {
            const fs::path file = tsplib_dir / (stem + ".vrp");
            if (!fs::exists(file))
                throw Error("missing TSPLIB fixture: " + file.string());
            ProblemInstance base;
            try {
                base = parse_tsplib(read_text(file));
            } catch (const Error& e) {
                throw Error(file.string() + ": " + e.what());
            }
            ProblemInstance derived = derive_variant_instance(base, kind);
            ManifestEntry e;
            e.name = derived.name;
            e.kind = kind;
            e.n = derived.size();
            e.source_file = stem + ".vrp";
            e.path = "instances/" + derived.name + ".json";
            save_instance(derived, (out / e.path).string());
            entries.push_back(e);
        }
    }
    return entries;
}

}  // namespace

std::string DatasetManifest::to_json() const {
    ordered_json j;
    j["schema"] = "routebench.manifest.v1";
    j["seed_base"] = seed_base;
    ordered_json r;
    r["ktsp_k"] = rules.ktsp_k ? ordered_json(*rules.ktsp_k) : ordered_json("ceil(n/2)");
    r["gtsp_cluster_count"] =
        rules.gtsp_cluster_count ? ordered_json(*rules.gtsp_cluster_count) : ordered_json("ceil(n/5)");
    j["rules"] = r;
    ordered_json entries = ordered_json::array();
    for (const auto& e : this->entries) entries.push_back(manifest_entry_json(e));
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    DatasetManifest m;
    m.seed_base = j.value("seed_base", std::uint64_t{0});
    if (j.contains("rules")) {
        const auto& r = j.at("rules");
        if (r.contains("ktsp_k") && r.at("ktsp_k").is_number())
            m.rules.ktsp_k = r.at("ktsp_k").get<int>();
        if (r.contains("gtsp_cluster_count") && r.at("gtsp_cluster_count").is_number())
            m.rules.gtsp_cluster_count = r.at("gtsp_cluster_count").get<int>();
    }
    for (const auto& e : j.at("entries")) m.entries.push_back(manifest_entry_from_json(e));
    return m;
}

DatasetManifest build_dataset(const std::string& out_dir, const std::string& tsplib_dir,
                              std::uint64_t seed_base, const GenerationRules& rules, bool force) {
    const fs::path out(out_dir);
    prepare_dataset_dir(out, force);

    DatasetManifest manifest;
    manifest.rules = rules;
    manifest.seed_base = seed_base;

    const std::vector<VariantKind> single = {VariantKind::TSP, VariantKind::BTSP,
                                             VariantKind::KTSP, VariantKind::GTSP};
    for (VariantKind kind : single) {
        for (int n : kDatasetSizes) {
            for (int s = 0; s < kSeedsPerCell; ++s) {
                const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(s);
                ProblemInstance instance = generate_random_instance(kind, n, seed, rules);
                ManifestEntry e;
                e.name = instance.name;
                e.kind = kind;
                e.n = n;
                e.seed = seed;
                e.path = "instances/" + instance.name + ".json";
                save_instance(instance, (out / e.path).string());
                manifest.entries.push_back(e);
            }
        }
    }

    auto derived = derive_from_fixtures(out, tsplib_dir);
    manifest.entries.insert(manifest.entries.end(), derived.begin(), derived.end());
    write_text(out / "manifest.json", manifest.to_json());
    return manifest;
}

DatasetManifest import_dataset(const std::string& out_dir, const std::string& tsplib_dir,
                               bool force) {
    const fs::path out(out_dir);
    prepare_dataset_dir(out, force);
    DatasetManifest manifest;
    manifest.entries = derive_from_fixtures(out, tsplib_dir);
    write_text(out / "manifest.json", manifest.to_json());
    return manifest;
}

}  // namespace routebench
