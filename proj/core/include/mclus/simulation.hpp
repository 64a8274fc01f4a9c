#ifndef MCLUS_SIMULATION_HPP
#define MCLUS_SIMULATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mclus/clustering.hpp"
#include "mclus/distances.hpp"
#include "mclus/kde.hpp"
#include "mclus/rng.hpp"
#include "mclus/types.hpp"
#include "mclus/validity.hpp"

namespace mclus {

enum class Scenario { s1, s2, s3 };

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario s);

/// A generated dataset together with the population each member came from.
struct LabeledData {
    DataSet data;
    Clustering truth;
};

/// Three equicorrelated 10-variate normal populations (means -3/0/3,
/// unit variances, 0.5 correlation), `per_pop` members each.
LabeledData gen_s1(std::uint64_t seed, std::size_t per_pop = 50);

/// Two mixed binary/Cauchy populations: P(1)=0.2 with Cauchy(0,1) versus
/// P(1)=0.8 with Cauchy(3,1), variables independent within a population.
LabeledData gen_s2(std::uint64_t seed, std::size_t per_pop = 45);

/// Three 500-dimensional populations: a normal copula (0.75 correlation)
/// with LN(0, 0.8) marginals, then +3 added to the first block and -3 to
/// the last.
LabeledData gen_s3(std::uint64_t seed, std::size_t per_pop = 50);

struct ScenarioSpec {
    Scenario scenario = Scenario::s1;
    int true_k = 3;
    std::vector<std::size_t> sizes;            // members per population
    Metric metric = Metric::euclidean;         // used for clustering and all indices
    std::string clusterer;                     // "hier-average" | "kmedoids" | "kmeans"
    std::vector<int> k_range = {2, 3, 4, 5, 6};
    int rep = 100;
    KdeConfig kde;
    int nstart = 10;                           // kmeans restarts

    /// The canonical configuration for a scenario.
    static ScenarioSpec standard(Scenario s);

    void validate() const;
};

struct ReplicationRecord {
    int r = 0;
    std::uint64_t seed = 0;
    KhatEstimates khat;
    std::vector<std::string> errors;
};

struct StudyResult {
    Scenario scenario = Scenario::s1;
    int true_k = 0;
    int rep = 0;
    std::uint64_t master_seed = 0;
    double p_mclus = 0.0;  // percentage of replications with khat == true_k
    double p_asw = 0.0;
    double p_dunn = 0.0;
    std::vector<ReplicationRecord> records;
};

/// Runs `spec.rep` independent replications, each seeded from the master
/// seed, and aggregates the recovery percentages. Replications may execute
/// concurrently (`threads` <= 0 picks the hardware count); the result is a
/// pure function of (spec, master_seed).
StudyResult run_study(const ScenarioSpec& spec, std::uint64_t master_seed, int threads = 0);

namespace detail {

/// Coefficients of the symmetric square root of the equicorrelation matrix
/// (1-rho) I + rho J: the factor is diag_coeff * I + ones_coeff * J.
struct EquicorrFactor {
    double diag_coeff = 1.0;
    double ones_coeff = 0.0;
};

EquicorrFactor equicorr_sqrt(std::size_t dim, double rho);

/// Fills `out` with one draw of N(0, (1-rho) I + rho J).
void draw_equicorr_normal(Rng& rng, const EquicorrFactor& factor, std::span<double> out);

/// One S2 member of the given population (1 or 2): (binary, continuous).
std::pair<double, double> draw_s2_member(Rng& rng, int population);

/// One unshifted S3 row: equicorrelated normals pushed through the
/// LN(0, 0.8) marginal transform exp(0.8 z).
void draw_s3_row_unshifted(Rng& rng, const EquicorrFactor& factor, std::span<double> out);

}  // namespace detail

}  // namespace mclus

#endif  // MCLUS_SIMULATION_HPP
