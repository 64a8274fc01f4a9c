#include "mclus/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mclus {

Scenario scenario_from_string(const std::string& name) {
    if (name == "s1" || name == "S1") return Scenario::s1;
    if (name == "s2" || name == "S2") return Scenario::s2;
    if (name == "s3" || name == "S3") return Scenario::s3;
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::s1: return "S1";
        case Scenario::s2: return "S2";
        case Scenario::s3: return "S3";
    }
    return "?";
}

namespace detail {

EquicorrFactor equicorr_sqrt(std::size_t dim, double rho) {
    const double d = static_cast<double>(dim);
    EquicorrFactor f;
    f.diag_coeff = std::sqrt(1.0 - rho);
    f.ones_coeff = (std::sqrt(1.0 - rho + d * rho) - f.diag_coeff) / d;
    return f;
}

void draw_equicorr_normal(Rng& rng, const EquicorrFactor& factor, std::span<double> out) {
    double sum = 0.0;
    for (double& z : out) {
        z = rng.normal();
        sum += z;
    }
    const double shift = factor.ones_coeff * sum;
    for (double& z : out) z = factor.diag_coeff * z + shift;
}

std::pair<double, double> draw_s2_member(Rng& rng, int population) {
    const double p_one = (population == 1) ? 0.2 : 0.8;
    const double location = (population == 1) ? 0.0 : 3.0;
    const double binary = static_cast<double>(rng.bernoulli(p_one));
    const double continuous = rng.cauchy(location, 1.0);
    return {binary, continuous};
}

void draw_s3_row_unshifted(Rng& rng, const EquicorrFactor& factor, std::span<double> out) {
    draw_equicorr_normal(rng, factor, out);
    for (double& x : out) x = std::exp(0.8 * x);
}

}  // namespace detail

LabeledData gen_s1(std::uint64_t seed, std::size_t per_pop) {
    constexpr std::size_t dim = 10;
    constexpr double means[3] = {-3.0, 0.0, 3.0};
    const auto factor = detail::equicorr_sqrt(dim, 0.5);

    Rng rng(seed);
    LabeledData out;
    out.data.data = Matrix(3 * per_pop, dim);
    out.data.kinds.assign(dim, VarKind::continuous);
    out.truth.k = 3;
    out.truth.labels.reserve(3 * per_pop);

    std::size_t row = 0;
    for (int pop = 0; pop < 3; ++pop) {
        for (std::size_t m = 0; m < per_pop; ++m, ++row) {
            auto r = out.data.data.row(row);
            detail::draw_equicorr_normal(rng, factor, r);
            for (double& x : r) x += means[pop];
            out.truth.labels.push_back(pop + 1);
        }
    }
    out.data.ensure_ids();
    return out;
}

LabeledData gen_s2(std::uint64_t seed, std::size_t per_pop) {
    Rng rng(seed);
    LabeledData out;
    out.data.data = Matrix(2 * per_pop, 2);
    out.data.kinds = {VarKind::binary, VarKind::continuous};
    out.truth.k = 2;
    out.truth.labels.reserve(2 * per_pop);

    std::size_t row = 0;
    for (int pop = 1; pop <= 2; ++pop) {
        for (std::size_t m = 0; m < per_pop; ++m, ++row) {
            const auto [binary, continuous] = detail::draw_s2_member(rng, pop);
            out.data.data.at(row, 0) = binary;
            out.data.data.at(row, 1) = continuous;
            out.truth.labels.push_back(pop);
        }
    }
    out.data.ensure_ids();
    return out;
}

LabeledData gen_s3(std::uint64_t seed, std::size_t per_pop) {
    constexpr std::size_t dim = 500;
    const auto factor = detail::equicorr_sqrt(dim, 0.75);

    Rng rng(seed);
    LabeledData out;
    out.data.data = Matrix(3 * per_pop, dim);
    out.data.kinds.assign(dim, VarKind::continuous);
    out.truth.k = 3;
    out.truth.labels.reserve(3 * per_pop);

    for (std::size_t row = 0; row < 3 * per_pop; ++row) {
        detail::draw_s3_row_unshifted(rng, factor, out.data.data.row(row));
        out.truth.labels.push_back(static_cast<int>(row / per_pop) + 1);
    }
    for (std::size_t row = 0; row < per_pop; ++row)
        for (double& x : out.data.data.row(row)) x += 3.0;
    for (std::size_t row = 2 * per_pop; row < 3 * per_pop; ++row)
        for (double& x : out.data.data.row(row)) x -= 3.0;
    out.data.ensure_ids();
    return out;
}

ScenarioSpec ScenarioSpec::standard(Scenario s) {
    ScenarioSpec spec;
    spec.scenario = s;
    switch (s) {
        case Scenario::s1:
            spec.true_k = 3;
            spec.sizes = {50, 50, 50};
            spec.metric = Metric::euclidean;
            spec.clusterer = "hier-average";
            break;
        case Scenario::s2:
            spec.true_k = 2;
            spec.sizes = {45, 45};
            spec.metric = Metric::gower;
            spec.clusterer = "kmedoids";
            break;
        case Scenario::s3:
            spec.true_k = 3;
            spec.sizes = {50, 50, 50};
            spec.metric = Metric::euclidean;
            spec.clusterer = "kmeans";
            break;
    }
    return spec;
}

void ScenarioSpec::validate() const {
    if (rep < 1) throw ConfigError("rep must be >= 1");
    if (true_k < 2) throw ConfigError("true K must be >= 2");
    if (sizes.empty()) throw ConfigError("no population sizes");
    for (std::size_t s : sizes)
        if (s < 1) throw ConfigError("population sizes must be >= 1");
    if (k_range.empty()) throw ConfigError("empty candidate K range");
    kde.validate();
}

namespace {

ReplicationRecord run_replication(const ScenarioSpec& spec, std::uint64_t master_seed, int r) {
    ReplicationRecord rec;
    rec.r = r;
    rec.seed = derive_seed(master_seed, static_cast<std::uint64_t>(r));
    try {
        LabeledData sample;
        switch (spec.scenario) {
            case Scenario::s1: sample = gen_s1(rec.seed, spec.sizes[0]); break;
            case Scenario::s2: sample = gen_s2(rec.seed, spec.sizes[0]); break;
            case Scenario::s3: sample = gen_s3(rec.seed, spec.sizes[0]); break;
        }
        const DistanceMatrix dist = pairwise_matrix(sample.data, spec.metric);

        std::function<Clustering(int)> cluster_at;
        Dendrogram tree;
        if (spec.clusterer == "hier-average" || spec.clusterer == "hier-ward") {
            tree = hierarchical(dist, spec.clusterer == "hier-average" ? Linkage::average
                                                                       : Linkage::ward_d2);
            cluster_at = [&tree](int k) { return tree.cut(k); };
        } else if (spec.clusterer == "kmedoids") {
            cluster_at = [&dist, &rec](int k) {
                return kmedoids(dist, k, derive_seed(rec.seed, static_cast<std::uint64_t>(k)))
                    .clustering;
            };
        } else if (spec.clusterer == "kmeans") {
            const Matrix& points = sample.data.as_matrix();
            cluster_at = [&points, &rec, &spec](int k) {
                return kmeans(points, k, derive_seed(rec.seed, static_cast<std::uint64_t>(k)),
                              spec.nstart)
                    .clustering;
            };
        } else {
            throw ConfigError("unknown clusterer '" + spec.clusterer + "'");
        }

        const ValidityReport report =
            estimate_k(cluster_at, dist, spec.k_range, spec.kde, IndexSelection{}, rec.seed);
        rec.khat = report.khat;
        for (const auto& entry : report.per_k)
            for (const auto& err : entry.errors)
                rec.errors.push_back("K=" + std::to_string(entry.k) + " " + err.index + ": " +
                                     err.message);
    } catch (const std::exception& e) {
        rec.errors.push_back(e.what());
        rec.khat = {};  // counts as a miss for every index
    }
    return rec;
}

}  // namespace

StudyResult run_study(const ScenarioSpec& spec, std::uint64_t master_seed, int threads) {
    spec.validate();

    StudyResult result;
    result.scenario = spec.scenario;
    result.true_k = spec.true_k;
    result.rep = spec.rep;
    result.master_seed = master_seed;
    result.records.resize(static_cast<std::size_t>(spec.rep));

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, spec.rep));

    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (int r = next.fetch_add(1); r < spec.rep; r = next.fetch_add(1))
            result.records[static_cast<std::size_t>(r)] = run_replication(spec, master_seed, r);
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int hit_mclus = 0, hit_asw = 0, hit_dunn = 0;
    for (const auto& rec : result.records) {
        hit_mclus += (rec.khat.mclus && *rec.khat.mclus == spec.true_k) ? 1 : 0;
        hit_asw += (rec.khat.asw && *rec.khat.asw == spec.true_k) ? 1 : 0;
        hit_dunn += (rec.khat.dunn && *rec.khat.dunn == spec.true_k) ? 1 : 0;
    }
    const double denom = static_cast<double>(spec.rep);
    result.p_mclus = 100.0 * static_cast<double>(hit_mclus) / denom;
    result.p_asw = 100.0 * static_cast<double>(hit_asw) / denom;
    result.p_dunn = 100.0 * static_cast<double>(hit_dunn) / denom;
    return result;
}

}  // namespace mclus
