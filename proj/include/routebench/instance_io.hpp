// Dataset generation, TSPLIB/CVRPLIB parsing, variant derivation, and the
// canonical JSON instance format.

#ifndef ROUTEBENCH_INSTANCE_IO_HPP
#define ROUTEBENCH_INSTANCE_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "routebench/core.hpp"

namespace routebench {

// Deterministic, configurable rules for the parameters the generator must
// invent (recorded in the dataset manifest).
struct GenerationRules {
    std::optional<int> ktsp_k;            // default ceil(n/2)
    std::optional<int> gtsp_cluster_count;  // default ceil(n/5)
};

// Uniform coordinates in [0,100] from a seeded generator; single-robot
// kinds only. Pure function of (kind, n, seed, rules).
ProblemInstance generate_random_instance(VariantKind kind, int n, std::uint64_t seed,
                                         const GenerationRules& rules = {});

// TSPLIB/CVRPLIB text (EUC_2D only). Ids re-based to 0, metric
// TSPLIB_ROUNDED, robot count from the trailing "-k<m>" of the name.
ProblemInstance parse_tsplib(const std::string& text);

// Build a multi-robot variant instance from a parsed CVRP base.
ProblemInstance derive_variant_instance(const ProblemInstance& base, VariantKind target);

// Canonical JSON round-trip.
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& json_text);
void save_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_instance(const std::string& path);

struct ManifestEntry {
    std::string name;
    VariantKind kind = VariantKind::TSP;
    int n = 0;
    std::optional<std::uint64_t> seed;  // generated entries
    std::string source_file;            // file-derived entries
    std::string path;                   // instance JSON, relative to the dataset dir
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    GenerationRules rules;
    std::uint64_t seed_base = 0;

    std::string to_json() const;
    static DatasetManifest from_json(const std::string& text);
};

// Sizes and per-cell seed counts of the published dataset layout:
// 4 single-robot kinds x {10,15,20} x 5 seeds + 4 multi-robot kinds x 5 files.
extern const std::vector<int> kDatasetSizes;
constexpr int kSeedsPerCell = 5;

// Generate the full 80-instance dataset into out_dir (instances/*.json +
// manifest.json). tsplib_dir must hold the five vendored .vrp fixtures.
DatasetManifest build_dataset(const std::string& out_dir, const std::string& tsplib_dir,
                              std::uint64_t seed_base = 0, const GenerationRules& rules = {},
                              bool force = false);

// Ingest only the file-derived multi-robot instances (the `dataset import`
// command).
DatasetManifest import_dataset(const std::string& out_dir, const std::string& tsplib_dir,
                               bool force = false);

}  // namespace routebench

#endif
