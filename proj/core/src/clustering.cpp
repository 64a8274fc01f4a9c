#include "mclus/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mclus/rng.hpp"

namespace mclus {

Linkage linkage_from_string(const std::string& name) {
    if (name == "average") return Linkage::average;
    if (name == "ward" || name == "ward-d2") return Linkage::ward_d2;
    if (name == "ward-d") return Linkage::ward_d;
    throw ConfigError("unknown linkage '" + name + "'");
}

Clustering Dendrogram::cut(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw InvalidK("cut: K must be in {1.." + std::to_string(n) + "}, got " + std::to_string(k));

    // Union-find over the first n-k merges.
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const std::size_t applied = n - static_cast<std::size_t>(k);
    for (std::size_t s = 0; s < applied; ++s) {
        const int id = static_cast<int>(n + s);
        parent[find(merges[s].left)] = id;
        parent[find(merges[s].right)] = id;
    }

    Clustering out;
    out.labels.resize(n, 0);
    out.k = k;
    std::vector<int> label_of_root(2 * n - 1, 0);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int root = find(static_cast<int>(i));
        if (label_of_root[root] == 0) label_of_root[root] = ++next;
        out.labels[i] = label_of_root[root];
    }
    out.validate();
    return out;
}

Dendrogram hierarchical(const DistanceMatrix& dist, Linkage linkage) {
    const std::size_t n = dist.size();
    if (n < 2) throw InvalidK("hierarchical clustering needs n >= 2");

    // Working criterion matrix: plain distances for average linkage and
    // ward_d, squared distances for ward_d2.
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist.at(i, j);
            w[i * n + j] = (linkage == Linkage::ward_d2) ? d * d : d;
        }

    std::vector<char> active(n, 1);
    std::vector<double> size(n, 1.0);
    std::vector<int> cluster_id(n);
    std::iota(cluster_id.begin(), cluster_id.end(), 0);

    Dendrogram out;
    out.n = n;
    out.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (w[i * n + j] < best) {  // ties keep the lowest (i, j)
                    best = w[i * n + j];
                    bi = i;
                    bj = j;
                }
            }
        }

        const double ni = size[bi], nj = size[bj];
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == bi || c == bj) continue;
            const double dic = w[bi * n + c];
            const double djc = w[bj * n + c];
            double updated = 0.0;
            if (linkage == Linkage::average) {
                updated = (ni * dic + nj * djc) / (ni + nj);
            } else {
                const double nc = size[c];
                updated = ((ni + nc) * dic + (nj + nc) * djc - nc * best) / (ni + nj + nc);
            }
            w[bi * n + c] = updated;
            w[c * n + bi] = updated;
        }

        const double height = (linkage == Linkage::ward_d2) ? std::sqrt(best) : best;
        const int a = std::min(cluster_id[bi], cluster_id[bj]);
        const int b = std::max(cluster_id[bi], cluster_id[bj]);
        out.merges.push_back({a, b, height});

        active[bj] = 0;
        size[bi] = ni + nj;
        cluster_id[bi] = static_cast<int>(n + step);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PAM

namespace {

struct NearestPair {
    double d1 = 0.0;  // distance to nearest medoid
    double d2 = 0.0;  // distance to second-nearest medoid
    std::size_t m1 = 0;
};

void refresh_nearest(const DistanceMatrix& dist, const std::vector<std::size_t>& medoids,
                     std::vector<NearestPair>& near) {
    const std::size_t n = dist.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = std::numeric_limits<double>::infinity();
        std::size_t m1 = medoids[0];
        for (std::size_t m : medoids) {
            const double d = dist.at(j, m);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                m1 = m;
            } else if (d < d2) {
                d2 = d;
            }
        }
        near[j] = {d1, d2, m1};
    }
}

}  // namespace

KMedoidsResult kmedoids(const DistanceMatrix& dist, int k, std::uint64_t /*seed*/) {
    const std::size_t n = dist.size();
    if (k < 2 || static_cast<std::size_t>(k) >= n)
        throw InvalidK("kmedoids: K must satisfy 2 <= K < n, got " + std::to_string(k));

    // Build phase. First medoid minimizes total distance; each later one
    // maximizes the total cost reduction.
    std::vector<std::size_t> medoids;
    std::vector<char> is_medoid(n, 0);
    {
        std::size_t best = 0;
        double best_total = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j) total += dist.at(i, j);
            if (total < best_total) {
                best_total = total;
                best = i;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = 1;
    }
    std::vector<double> d1(n);
    for (std::size_t j = 0; j < n; ++j) d1[j] = dist.at(j, medoids[0]);
    while (medoids.size() < static_cast<std::size_t>(k)) {
        std::size_t best = 0;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_medoid[i]) continue;
            double gain = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double diff = d1[j] - dist.at(i, j);
                if (diff > 0.0) gain += diff;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = 1;
        for (std::size_t j = 0; j < n; ++j) d1[j] = std::min(d1[j], dist.at(j, best));
    }
    std::sort(medoids.begin(), medoids.end());

    // Swap phase: apply the best strictly improving (medoid, candidate)
    // exchange until none exists.
    std::vector<NearestPair> near(n);
    refresh_nearest(dist, medoids, near);
    int swaps = 0;
    const int max_swaps = 1000 + static_cast<int>(n) * k;
    while (swaps < max_swaps) {
        double best_delta = -1e-12;  // strictly improving only
        std::size_t best_m = 0, best_h = 0;
        bool found = false;
        for (std::size_t m : medoids) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                double delta = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == h) {
                        delta -= near[j].d1;  // h becomes a medoid
                        continue;
                    }
                    const double djh = dist.at(j, h);
                    if (near[j].m1 == m) {
                        delta += std::min(djh, near[j].d2) - near[j].d1;
                    } else if (djh < near[j].d1) {
                        delta += djh - near[j].d1;
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_m = m;
                    best_h = h;
                    found = true;
                }
            }
        }
        if (!found) break;
        is_medoid[best_m] = 0;
        is_medoid[best_h] = 1;
        *std::find(medoids.begin(), medoids.end(), best_m) = best_h;
        std::sort(medoids.begin(), medoids.end());
        refresh_nearest(dist, medoids, near);
        ++swaps;
    }

    KMedoidsResult res;
    res.medoids = medoids;
    res.swaps = swaps;
    res.clustering.labels.resize(n);
    res.clustering.k = k;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t assigned = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < medoids.size(); ++c) {
            const double d = dist.at(j, medoids[c]);
            if (d < best) {
                best = d;
                assigned = c;
            }
        }
        res.clustering.labels[j] = static_cast<int>(assigned) + 1;
        res.cost += best;
    }
    res.clustering.validate();
    return res;
}

// ---------------------------------------------------------------------------
// Hartigan-Wong k-means

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        ss += d * d;
    }
    return ss;
}

struct HwRun {
    Clustering clustering;
    Matrix centers;
    double wcss = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    bool empty_cluster = false;
};

HwRun hartigan_wong_run(const Matrix& data, int k, Rng& rng) {
    const std::size_t n = data.rows;
    const std::size_t d = data.cols;
    const std::size_t uk = static_cast<std::size_t>(k);
    HwRun run;

    // K distinct members as initial centers (partial Fisher-Yates).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < uk; ++i)
        std::swap(order[i], order[i + rng.below(n - i)]);

    Matrix centers(uk, d);
    for (std::size_t c = 0; c < uk; ++c)
        std::copy_n(data.row(order[c]).data(), d, centers.row(c).data());

    std::vector<int> label(n);
    std::vector<std::size_t> count(uk, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        double best_d = sq_dist(data.row(i), centers.row(0));
        for (std::size_t c = 1; c < uk; ++c) {
            const double dd = sq_dist(data.row(i), centers.row(c));
            if (dd < best_d) {
                best_d = dd;
                best = c;
            }
        }
        label[i] = static_cast<int>(best);
        ++count[best];
    }
    if (std::find(count.begin(), count.end(), std::size_t{0}) != count.end()) {
        run.empty_cluster = true;
        return run;
    }

    const auto recompute_centers = [&]() {
        std::fill(centers.values.begin(), centers.values.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = data.row(i);
            auto ctr = centers.row(static_cast<std::size_t>(label[i]));
            for (std::size_t f = 0; f < d; ++f) ctr[f] += row[f];
        }
        for (std::size_t c = 0; c < uk; ++c) {
            auto ctr = centers.row(c);
            for (std::size_t f = 0; f < d; ++f) ctr[f] /= static_cast<double>(count[c]);
        }
    };
    recompute_centers();

    // Transfer stage: move a point when the exact WCSS change
    // n2/(n2+1) d2^2 - n1/(n1-1) d1^2 is negative. Singleton clusters never
    // give up their point, so no cluster can empty out.
    const int max_sweeps = 10000;
    int sweeps = 0;
    bool moved = true;
    while (moved && sweeps < max_sweeps) {
        moved = false;
        ++sweeps;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c1 = static_cast<std::size_t>(label[i]);
            const std::size_t n1 = count[c1];
            if (n1 <= 1) continue;
            const double removal =
                static_cast<double>(n1) / static_cast<double>(n1 - 1) * sq_dist(data.row(i), centers.row(c1));
            std::size_t best = c1;
            double best_add = removal;
            for (std::size_t c2 = 0; c2 < uk; ++c2) {
                if (c2 == c1) continue;
                const double add = static_cast<double>(count[c2]) / static_cast<double>(count[c2] + 1) *
                                   sq_dist(data.row(i), centers.row(c2));
                if (add < best_add) {
                    best_add = add;
                    best = c2;
                }
            }
            if (best == c1) continue;

            auto from = centers.row(c1);
            auto to = centers.row(best);
            auto row = data.row(i);
            const double nf = static_cast<double>(count[c1]);
            const double nt = static_cast<double>(count[best]);
            for (std::size_t f = 0; f < d; ++f) {
                from[f] = (nf * from[f] - row[f]) / (nf - 1.0);
                to[f] = (nt * to[f] + row[f]) / (nt + 1.0);
            }
            --count[c1];
            ++count[best];
            label[i] = static_cast<int>(best);
            moved = true;
        }
        recompute_centers();  // shed incremental rounding between sweeps
    }

    run.sweeps = sweeps;
    run.centers = std::move(centers);
    run.clustering.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) run.clustering.labels[i] = label[i] + 1;
    run.clustering.k = k;
    run.wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        run.wcss += sq_dist(data.row(i), run.centers.row(static_cast<std::size_t>(label[i])));
    return run;
}

}  // namespace

KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed, int nstart) {
    const std::size_t n = data.rows;
    if (k < 2 || static_cast<std::size_t>(k) >= n)
        throw InvalidK("kmeans: K must satisfy 2 <= K < n, got " + std::to_string(k));
    if (nstart < 1) throw ConfigError("kmeans: nstart must be >= 1");

    KMeansResult result;
    result.wcss = std::numeric_limits<double>::infinity();
    int reseeds = 0;
    const int max_reseeds = 1000;

    for (int s = 0; s < nstart; ++s) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        HwRun run = hartigan_wong_run(data, k, rng);
        while (run.empty_cluster) {
            if (++reseeds >= max_reseeds)
                throw InvalidK("kmeans: cannot seed " + std::to_string(k) +
                               " non-empty clusters (fewer distinct points?)");
            run = hartigan_wong_run(data, k, rng);
        }
        if (run.wcss < result.wcss) {
            result.wcss = run.wcss;
            result.clustering = std::move(run.clustering);
            result.centers = std::move(run.centers);
            result.iterations = run.sweeps;
        }
    }
    result.reseeds = reseeds;
    result.clustering.validate();
    return result;
}

double wcss(const Matrix& data, const Clustering& clustering) {
    if (clustering.labels.size() != data.rows)
        throw DimensionMismatch("wcss: labels do not match data rows");
    const int k = clustering.k;
    Matrix centers(static_cast<std::size_t>(k), data.cols);
    std::vector<double> count(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < data.rows; ++i) {
        const std::size_t c = static_cast<std::size_t>(clustering.labels[i] - 1);
        auto ctr = centers.row(c);
        auto row = data.row(i);
        for (std::size_t f = 0; f < data.cols; ++f) ctr[f] += row[f];
        count[c] += 1.0;
    }
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
        if (count[c] == 0.0) continue;
        auto ctr = centers.row(c);
        for (std::size_t f = 0; f < data.cols; ++f) ctr[f] /= count[c];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows; ++i)
        total += sq_dist(data.row(i), centers.row(static_cast<std::size_t>(clustering.labels[i] - 1)));
    return total;
}

}  // namespace mclus
