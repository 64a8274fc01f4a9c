#include "mclus/types.hpp"

#include <algorithm>

namespace mclus {

void DataSet::ensure_ids() {
    if (!ids.empty()) return;
    ids.reserve(n());
    for (std::size_t i = 0; i < n(); ++i) ids.push_back(std::to_string(i + 1));
}

bool DataSet::all_continuous() const {
    return std::all_of(kinds.begin(), kinds.end(),
                       [](VarKind k) { return k == VarKind::continuous; });
}

const Matrix& DataSet::as_matrix() const {
    if (!all_continuous())
        throw SchemaError("dataset contains non-continuous variables");
    for (double x : data.values)
        if (is_missing(x)) throw SchemaError("dataset contains missing values");
    return data;
}

void Clustering::validate() const {
    if (k < 1) throw InvalidK("cluster count must be >= 1, got " + std::to_string(k));
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int c = labels[i];
        if (c < 1 || c > k)
            throw InvalidK("label " + std::to_string(c) + " of member " + std::to_string(i) +
                           " outside {1.." + std::to_string(k) + "}");
        seen[static_cast<std::size_t>(c - 1)] = 1;
    }
    for (int c = 0; c < k; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            throw InvalidK("cluster " + std::to_string(c + 1) + " is empty");
}

std::vector<std::vector<std::size_t>> Clustering::groups() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i)
        out[static_cast<std::size_t>(labels[i] - 1)].push_back(i);
    return out;
}

}  // namespace mclus
