#ifndef MCLUS_COMMANDS_HPP
#define MCLUS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mclus/kde.hpp"

namespace mclus {

/// All runs are reproducible: when no --seed is given, this constant is
/// used and recorded in the outputs.
inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Validated options of one CLI invocation.
struct RunConfig {
    std::string subcommand;
    std::string data_path;
    std::string labels_path;
    std::string varspec = "c";
    std::string metric = "euclidean";
    std::string clusterer = "hier-average";
    int k = 0;            // `cluster` subcommand only
    int k_min = 2;
    int k_max = 6;
    double alpha = 5.0;
    std::string sigma_scope = "per-sample";
    std::uint64_t seed = kDefaultSeed;
    int rep = 100;
    std::string scenario = "s1";
    std::string out_path;  // empty: results go to stdout
    std::string format = "json";
    int nstart = 10;
    int threads = 0;       // <= 0: hardware concurrency

    KdeConfig kde_config() const;
    std::vector<int> k_range() const;
    void validate_common() const;
};

// Each command returns the text it wrote to --out (or stdout), so callers
// and tests can inspect results without re-reading files.

/// Indices of a given labeling: reads --data and --labels, emits a
/// single-K validity report.
std::string cmd_validate(const RunConfig& config);

/// Full K sweep with the configured clusterer; emits the validity report
/// with the per-index argmax K.
std::string cmd_estimate_k(const RunConfig& config);

/// One clustering at fixed K, emitted as member_id,label CSV.
std::string cmd_cluster(const RunConfig& config);

/// Pairwise distance matrix under --metric, emitted as square CSV.
std::string cmd_distances(const RunConfig& config);

/// Simulation study for --scenario; writes JSON and the one-row CSV table
/// next to --out, returns the one selected by --format.
std::string cmd_simulate(const RunConfig& config);

/// Dispatches on config.subcommand.
std::string run_command(const RunConfig& config);

}  // namespace mclus

#endif  // MCLUS_COMMANDS_HPP
