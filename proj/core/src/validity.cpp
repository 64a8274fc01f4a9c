#include "mclus/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mclus/rng.hpp"

namespace mclus {

namespace {

/// Bandwidth policy resolved once per evaluation: per_sample defers to the
/// sample's own Silverman bandwidth, global fixes h from the pooled
/// pairwise distances.
struct BandwidthContext {
    const KdeConfig& config;
    std::optional<double> global_h;

    BandwidthContext(const KdeConfig& cfg, const DistanceMatrix& dist) : config(cfg) {
        if (cfg.sigma_scope == SigmaScope::global) {
            const std::vector<double> pool = dist.upper_triangle();
            global_h = silverman_bandwidth(pool, cfg.alpha);
        }
    }

    double mode_of(std::vector<double>& sample) const {
        std::sort(sample.begin(), sample.end());
        if (global_h) return estimate_mode(sample, *global_h, config);
        return estimate_mode(sample, config);
    }
};

std::vector<double> own_sample(std::size_t member, const std::vector<std::size_t>& mates,
                               const DistanceMatrix& dist) {
    std::vector<double> s;
    s.reserve(mates.size() - 1);
    for (std::size_t j : mates)
        if (j != member) s.push_back(dist.at(member, j));
    return s;
}

std::vector<double> cross_sample(std::size_t member, const std::vector<std::size_t>& others,
                                 const DistanceMatrix& dist) {
    std::vector<double> s;
    s.reserve(others.size());
    for (std::size_t j : others) s.push_back(dist.at(member, j));
    return s;
}

std::optional<double> own_mode_impl(std::size_t member, const std::vector<std::size_t>& mates,
                                    const DistanceMatrix& dist, const BandwidthContext& bw) {
    if (mates.size() == 1) return std::nullopt;  // singleton cluster
    std::vector<double> sample = own_sample(member, mates, dist);
    if (sample.size() == 1) return sample[0];  // two-member cluster: the distance itself
    return bw.mode_of(sample);
}

double cross_mode_impl(std::size_t member, const std::vector<std::size_t>& others,
                       const DistanceMatrix& dist, const BandwidthContext& bw) {
    std::vector<double> sample = cross_sample(member, others, dist);
    if (sample.size() == 1) return sample[0];  // singleton cluster: the distance itself
    return bw.mode_of(sample);
}

std::pair<int, double> nearest_impl(std::size_t member, int own_cluster,
                                    const std::vector<std::vector<std::size_t>>& groups,
                                    const DistanceMatrix& dist, const BandwidthContext& bw,
                                    std::uint64_t seed) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> tied;
    for (int c = 1; c <= static_cast<int>(groups.size()); ++c) {
        if (c == own_cluster) continue;
        const double m = cross_mode_impl(member, groups[static_cast<std::size_t>(c - 1)], dist, bw);
        if (m < best) {
            best = m;
            tied.assign(1, c);
        } else if (m == best) {
            tied.push_back(c);
        }
    }
    if (tied.size() == 1) return {tied[0], best};
    Rng rng(derive_seed(seed, member));
    return {tied[rng.below(tied.size())], best};
}

double member_score(std::optional<double> own, double nearest_mode) {
    if (!own) return 0.0;  // singleton convention
    const double hi = std::max(nearest_mode, *own);
    if (hi == 0.0) return 0.0;  // duplicated points across clusters
    return (nearest_mode - *own) / hi;
}

void check_partition(const Clustering& clustering, const DistanceMatrix& dist, int min_k) {
    clustering.validate();
    if (clustering.labels.size() != dist.size())
        throw DimensionMismatch("clustering covers " + std::to_string(clustering.labels.size()) +
                                " members, distance matrix has " + std::to_string(dist.size()));
    if (clustering.k < min_k)
        throw InvalidK("index needs K >= " + std::to_string(min_k));
}

}  // namespace

std::optional<double> own_cluster_mode(std::size_t member, const Clustering& clustering,
                                       const DistanceMatrix& dist, const KdeConfig& config) {
    check_partition(clustering, dist, 1);
    const BandwidthContext bw(config, dist);
    const auto groups = clustering.groups();
    const int own = clustering.labels[member];
    return own_mode_impl(member, groups[static_cast<std::size_t>(own - 1)], dist, bw);
}

double cross_cluster_mode(std::size_t member, int other, const Clustering& clustering,
                          const DistanceMatrix& dist, const KdeConfig& config) {
    check_partition(clustering, dist, 1);
    if (other == clustering.labels[member])
        throw InvalidK("cross-cluster mode requires a different cluster");
    if (other < 1 || other > clustering.k) throw InvalidK("no such cluster " + std::to_string(other));
    const BandwidthContext bw(config, dist);
    const auto groups = clustering.groups();
    return cross_mode_impl(member, groups[static_cast<std::size_t>(other - 1)], dist, bw);
}

std::pair<int, double> nearest_cluster(std::size_t member, const Clustering& clustering,
                                       const DistanceMatrix& dist, const KdeConfig& config,
                                       std::uint64_t seed) {
    check_partition(clustering, dist, 2);
    const BandwidthContext bw(config, dist);
    return nearest_impl(member, clustering.labels[member], clustering.groups(), dist, bw, seed);
}

MclusResult mclus(const Clustering& clustering, const DistanceMatrix& dist,
                  const KdeConfig& config, std::uint64_t seed) {
    check_partition(clustering, dist, 2);
    config.validate();
    const BandwidthContext bw(config, dist);
    const auto groups = clustering.groups();
    const std::size_t n = clustering.labels.size();

    MclusResult result;
    result.member_scores.reserve(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int own_cluster = clustering.labels[i];
        MemberScore ms;
        ms.member = i;
        ms.own_mode = own_mode_impl(i, groups[static_cast<std::size_t>(own_cluster - 1)], dist, bw);
        const auto [nc, nc_mode] = nearest_impl(i, own_cluster, groups, dist, bw, seed);
        ms.nearest = nc;
        ms.nearest_mode = nc_mode;
        ms.score = member_score(ms.own_mode, nc_mode);
        total += ms.score;
        result.member_scores.push_back(std::move(ms));
    }
    result.value = total / static_cast<double>(n);
    return result;
}

double asw(const Clustering& clustering, const DistanceMatrix& dist) {
    check_partition(clustering, dist, 2);
    const auto groups = clustering.groups();
    const std::size_t n = clustering.labels.size();

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int own = clustering.labels[i];
        const auto& mates = groups[static_cast<std::size_t>(own - 1)];
        if (mates.size() == 1) continue;  // singleton: s = 0

        double a = 0.0;
        for (std::size_t j : mates)
            if (j != i) a += dist.at(i, j);
        a /= static_cast<double>(mates.size() - 1);

        double b = std::numeric_limits<double>::infinity();
        for (int c = 1; c <= clustering.k; ++c) {
            if (c == own) continue;
            const auto& others = groups[static_cast<std::size_t>(c - 1)];
            double mean = 0.0;
            for (std::size_t j : others) mean += dist.at(i, j);
            mean /= static_cast<double>(others.size());
            b = std::min(b, mean);
        }

        const double hi = std::max(a, b);
        total += (hi == 0.0) ? 0.0 : (b - a) / hi;
    }
    return total / static_cast<double>(n);
}

double dunn(const Clustering& clustering, const DistanceMatrix& dist) {
    check_partition(clustering, dist, 2);
    const auto groups = clustering.groups();

    double max_diameter = 0.0;
    for (const auto& g : groups)
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b)
                max_diameter = std::max(max_diameter, dist.at(g[a], g[b]));
    if (max_diameter == 0.0)
        throw UndefinedIndex("dunn: every cluster has zero diameter");

    double min_between = std::numeric_limits<double>::infinity();
    for (std::size_t c1 = 0; c1 < groups.size(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < groups.size(); ++c2)
            for (std::size_t a : groups[c1])
                for (std::size_t b : groups[c2])
                    min_between = std::min(min_between, dist.at(a, b));

    return min_between / max_diameter;
}

ValidityReport estimate_k(const std::function<Clustering(int)>& cluster_at,
                          const DistanceMatrix& dist, const std::vector<int>& k_range,
                          const KdeConfig& config, const IndexSelection& selection,
                          std::uint64_t seed) {
    if (k_range.empty()) throw InvalidK("estimate_k: empty candidate range");
    std::vector<int> ks = k_range;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    const std::size_t n = dist.size();
    for (int k : ks)
        if (k < 2 || static_cast<std::size_t>(k) >= n)
            throw InvalidK("estimate_k: K = " + std::to_string(k) + " outside {2.." +
                           std::to_string(n - 1) + "}");

    ValidityReport report;
    for (int k : ks) {
        KSweepEntry entry;
        entry.k = k;
        try {
            entry.clustering = cluster_at(k);
        } catch (const Error& e) {
            entry.errors.push_back({"clusterer", e.what()});
            report.per_k.push_back(std::move(entry));
            continue;
        }
        const std::uint64_t k_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
        if (selection.mclus) {
            try {
                MclusResult r = mclus(entry.clustering, dist, config, k_seed);
                entry.mclus = r.value;
                entry.member_scores = std::move(r.member_scores);
            } catch (const Error& e) {
                entry.errors.push_back({"mclus", e.what()});
            }
        }
        if (selection.asw) {
            try {
                entry.asw = asw(entry.clustering, dist);
            } catch (const Error& e) {
                entry.errors.push_back({"asw", e.what()});
            }
        }
        if (selection.dunn) {
            try {
                entry.dunn = dunn(entry.clustering, dist);
            } catch (const Error& e) {
                entry.errors.push_back({"dunn", e.what()});
            }
        }
        report.per_k.push_back(std::move(entry));
    }

    const auto argmax = [&](auto value_of) -> std::optional<int> {
        std::optional<int> best_k;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& entry : report.per_k) {
            const std::optional<double> v = value_of(entry);
            if (v && *v > best) {  // strict: ties keep the smallest K
                best = *v;
                best_k = entry.k;
            }
        }
        return best_k;
    };
    if (selection.mclus) report.khat.mclus = argmax([](const KSweepEntry& e) { return e.mclus; });
    if (selection.asw) report.khat.asw = argmax([](const KSweepEntry& e) { return e.asw; });
    if (selection.dunn) report.khat.dunn = argmax([](const KSweepEntry& e) { return e.dunn; });
    return report;
}

}  // namespace mclus
