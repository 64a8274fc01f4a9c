#include "mclus/commands.hpp"

#include <functional>
#include <iostream>
#include <memory>
#include <string_view>

#include "mclus/clustering.hpp"
#include "mclus/distances.hpp"
#include "mclus/io.hpp"
#include "mclus/simulation.hpp"
#include "mclus/validity.hpp"

namespace mclus {

namespace {

std::string emit(const RunConfig& config, const std::string& content) {
    if (config.out_path.empty())
        std::cout << content;
    else
        write_text_file(config.out_path, content);
    return content;
}

/// Builds the K -> Clustering callable for the configured algorithm. The
/// dendrogram is grown once and cut per K; partitioning methods rerun with
/// a K-derived seed.
std::function<Clustering(int)> make_clusterer(const RunConfig& config, const DataSet& data,
                                              const DistanceMatrix& dist,
                                              std::shared_ptr<Dendrogram>& tree_out) {
    if (config.clusterer == "hier-average" || config.clusterer == "hier-ward") {
        auto tree = std::make_shared<Dendrogram>(hierarchical(
            dist, config.clusterer == "hier-average" ? Linkage::average : Linkage::ward_d2));
        tree_out = tree;
        return [tree](int k) { return tree->cut(k); };
    }
    if (config.clusterer == "kmedoids") {
        const std::uint64_t seed = config.seed;
        return [&dist, seed](int k) {
            return kmedoids(dist, k, derive_seed(seed, static_cast<std::uint64_t>(k))).clustering;
        };
    }
    if (config.clusterer == "kmeans") {
        if (config.metric != "euclidean")
            throw ConfigError("kmeans pairs with the euclidean metric only");
        const Matrix& points = data.as_matrix();
        const std::uint64_t seed = config.seed;
        const int nstart = config.nstart;
        return [&points, seed, nstart](int k) {
            return kmeans(points, k, derive_seed(seed, static_cast<std::uint64_t>(k)), nstart)
                .clustering;
        };
    }
    throw ConfigError("unknown clusterer '" + config.clusterer + "'");
}

std::string report_text(const RunConfig& config, const ValidityReport& report,
                        const std::vector<std::string>& ids) {
    if (config.format == "csv") return validity_report_to_csv(report);
    return validity_report_to_json(report, ids);
}

}  // namespace

KdeConfig RunConfig::kde_config() const {
    KdeConfig cfg;
    cfg.alpha = alpha;
    if (sigma_scope == "per-sample")
        cfg.sigma_scope = SigmaScope::per_sample;
    else if (sigma_scope == "global")
        cfg.sigma_scope = SigmaScope::global;
    else
        throw ConfigError("sigma-scope must be 'per-sample' or 'global'");
    cfg.validate();
    return cfg;
}

std::vector<int> RunConfig::k_range() const {
    if (k_min < 2) throw ConfigError("--k-min must be >= 2");
    if (k_max < k_min) throw ConfigError("--k-max must be >= --k-min");
    std::vector<int> ks;
    for (int k = k_min; k <= k_max; ++k) ks.push_back(k);
    return ks;
}

void RunConfig::validate_common() const {
    if (format != "json" && format != "csv")
        throw ConfigError("--format must be 'json' or 'csv'");
    kde_config();
}

std::string cmd_validate(const RunConfig& config) {
    config.validate_common();
    if (config.data_path.empty() || config.labels_path.empty())
        throw ConfigError("validate needs --data and --labels");

    const DataSet data = read_dataset_csv(config.data_path, config.varspec);
    const Clustering clustering = labels_to_clustering(read_labels_csv(config.labels_path), data);
    const DistanceMatrix dist = pairwise_matrix(data, metric_from_string(config.metric));
    const KdeConfig kde = config.kde_config();

    KSweepEntry entry;
    entry.k = clustering.k;
    entry.clustering = clustering;
    try {
        MclusResult r = mclus(clustering, dist, kde, config.seed);
        entry.mclus = r.value;
        entry.member_scores = std::move(r.member_scores);
    } catch (const Error& e) {
        entry.errors.push_back({"mclus", e.what()});
    }
    try {
        entry.asw = asw(clustering, dist);
    } catch (const Error& e) {
        entry.errors.push_back({"asw", e.what()});
    }
    try {
        entry.dunn = dunn(clustering, dist);
    } catch (const Error& e) {
        entry.errors.push_back({"dunn", e.what()});
    }

    ValidityReport report;
    report.khat.mclus = entry.mclus ? std::optional<int>(entry.k) : std::nullopt;
    report.khat.asw = entry.asw ? std::optional<int>(entry.k) : std::nullopt;
    report.khat.dunn = entry.dunn ? std::optional<int>(entry.k) : std::nullopt;
    report.per_k.push_back(std::move(entry));
    return emit(config, report_text(config, report, data.ids));
}

std::string cmd_estimate_k(const RunConfig& config) {
    config.validate_common();
    if (config.data_path.empty()) throw ConfigError("estimate-k needs --data");

    const DataSet data = read_dataset_csv(config.data_path, config.varspec);
    const DistanceMatrix dist = pairwise_matrix(data, metric_from_string(config.metric));
    std::shared_ptr<Dendrogram> tree;
    const auto cluster_at = make_clusterer(config, data, dist, tree);
    const ValidityReport report = estimate_k(cluster_at, dist, config.k_range(),
                                             config.kde_config(), IndexSelection{}, config.seed);
    return emit(config, report_text(config, report, data.ids));
}

std::string cmd_cluster(const RunConfig& config) {
    config.validate_common();
    if (config.data_path.empty()) throw ConfigError("cluster needs --data");
    const int k = config.k > 0 ? config.k : config.k_min;
    if (k < 2) throw ConfigError("cluster needs --k >= 2");

    const DataSet data = read_dataset_csv(config.data_path, config.varspec);
    const DistanceMatrix dist = pairwise_matrix(data, metric_from_string(config.metric));
    std::shared_ptr<Dendrogram> tree;
    const Clustering clustering = make_clusterer(config, data, dist, tree)(k);
    return emit(config, clustering_to_csv(data, clustering));
}

std::string cmd_distances(const RunConfig& config) {
    config.validate_common();
    if (config.data_path.empty()) throw ConfigError("distances needs --data");
    const DataSet data = read_dataset_csv(config.data_path, config.varspec);
    const DistanceMatrix dist = pairwise_matrix(data, metric_from_string(config.metric));
    return emit(config, distance_matrix_to_csv(dist));
}

std::string cmd_simulate(const RunConfig& config) {
    config.validate_common();
    ScenarioSpec spec = ScenarioSpec::standard(scenario_from_string(config.scenario));
    spec.rep = config.rep;
    spec.kde = config.kde_config();
    spec.nstart = config.nstart;

    const StudyResult result = run_study(spec, config.seed, config.threads);
    const std::string json_text = study_result_to_json(result);
    const std::string csv_text = study_result_to_csv(result);

    if (!config.out_path.empty()) {
        // Both serializations are written next to each other.
        std::string stem = config.out_path;
        for (const char* ext : {".json", ".csv"}) {
            const std::string_view sv(ext);
            if (stem.size() > sv.size() && stem.ends_with(sv)) {
                stem.resize(stem.size() - sv.size());
                break;
            }
        }
        write_text_file(stem + ".json", json_text);
        write_text_file(stem + ".csv", csv_text);
        return config.format == "csv" ? csv_text : json_text;
    }
    const std::string& chosen = config.format == "csv" ? csv_text : json_text;
    std::cout << chosen;
    return chosen;
}

std::string run_command(const RunConfig& config) {
    if (config.subcommand == "validate") return cmd_validate(config);
    if (config.subcommand == "estimate-k") return cmd_estimate_k(config);
    if (config.subcommand == "cluster") return cmd_cluster(config);
    if (config.subcommand == "distances") return cmd_distances(config);
    if (config.subcommand == "simulate") return cmd_simulate(config);
    throw ConfigError("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace mclus
