#include "mclus/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mclus {

Metric metric_from_string(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "gower") return Metric::gower;
    if (name == "cid") return Metric::cid;
    throw ConfigError("unknown metric '" + name + "'");
}

std::string to_string(Metric m) {
    switch (m) {
        case Metric::euclidean: return "euclidean";
        case Metric::gower: return "gower";
        case Metric::cid: return "cid";
    }
    return "?";
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw SchemaError("distance (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is negative or non-finite");
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
}

DistanceMatrix DistanceMatrix::from_square(std::size_t n, std::span<const double> values) {
    if (values.size() != n * n) throw SchemaError("distance buffer is not n x n");
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i * n + i] != 0.0)
            throw SchemaError("nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[i * n + j] != values[j * n + i])
                throw SchemaError("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            m.set(i, j, values[i * n + j]);
        }
    }
    return m;
}

std::vector<double> DistanceMatrix::upper_triangle() const {
    std::vector<double> out;
    out.reserve(n_ * (n_ - 1) / 2);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) out.push_back(at(i, j));
    return out;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("euclidean: lengths " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    if (a.empty()) throw DimensionMismatch("euclidean: empty vectors");
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

double gower_extended(std::span<const double> a, std::span<const double> b,
                      std::span<const VariableSpec> spec) {
    if (a.size() != b.size() || a.size() != spec.size())
        throw DimensionMismatch("gower: record/spec length mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t f = 0; f < spec.size(); ++f) {
        if (is_missing(a[f]) || is_missing(b[f])) continue;
        if (spec[f].kind == VarKind::continuous) {
            if (!(spec[f].range > 0.0)) continue;  // zero-range variables carry no signal
            num += std::abs(a[f] - b[f]) / spec[f].range;
        } else {
            num += (a[f] != b[f]) ? 1.0 : 0.0;
        }
        den += 1.0;
    }
    if (den == 0.0) throw NoComparableVariables("gower: no variable comparable for this pair");
    return num / den;
}

namespace {

double complexity_estimate(std::span<const double> x) {
    double ss = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double d = x[i + 1] - x[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

}  // namespace

double cid(std::span<const double> q, std::span<const double> c) {
    if (q.size() != c.size())
        throw DimensionMismatch("cid: lengths " + std::to_string(q.size()) + " vs " +
                                std::to_string(c.size()));
    if (q.size() < 2) throw DimensionMismatch("cid: series must have length >= 2");
    const double ed = euclidean(q, c);
    const double ce_q = complexity_estimate(q);
    const double ce_c = complexity_estimate(c);
    const double cf = std::max(ce_q, ce_c) / std::max(std::min(ce_q, ce_c), 1e-12);
    return ed * cf;
}

std::vector<VariableSpec> make_variable_specs(const DataSet& data) {
    std::vector<VariableSpec> spec(data.v());
    for (std::size_t f = 0; f < data.v(); ++f) {
        spec[f].kind = data.kinds[f];
        if (data.kinds[f] != VarKind::continuous) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < data.n(); ++i) {
            const double x = data.data.at(i, f);
            if (is_missing(x)) continue;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        spec[f].range = (hi > lo) ? hi - lo : 0.0;
    }
    return spec;
}

DistanceMatrix pairwise_matrix(const DataSet& data, Metric metric) {
    const std::size_t n = data.n();
    if (n < 2) throw DimensionMismatch("pairwise matrix needs n >= 2 members");

    std::vector<VariableSpec> spec;
    if (metric == Metric::gower) spec = make_variable_specs(data);
    if (metric != Metric::gower && !data.all_continuous())
        throw SchemaError(to_string(metric) + " requires fully continuous data");

    DistanceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            try {
                switch (metric) {
                    case Metric::euclidean: d = euclidean(data.member(i), data.member(j)); break;
                    case Metric::gower: d = gower_extended(data.member(i), data.member(j), spec); break;
                    case Metric::cid: d = cid(data.member(i), data.member(j)); break;
                }
                if (!std::isfinite(d))
                    throw SchemaError("non-finite distance");
            } catch (const Error& e) {
                throw Error(e.error_class(), std::string(e.what()) + " [members " +
                                                 std::to_string(i + 1) + " and " +
                                                 std::to_string(j + 1) + "]");
            }
            out.set(i, j, d);
        }
    }
    return out;
}

}  // namespace mclus
