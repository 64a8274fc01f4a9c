#ifndef MCLUS_IO_HPP
#define MCLUS_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "mclus/distances.hpp"
#include "mclus/simulation.hpp"
#include "mclus/types.hpp"
#include "mclus/validity.hpp"

namespace mclus {

// CSV dialect everywhere: comma separator, '.' decimal point, UTF-8, no
// quoting, header row required on inputs. Numbers are written with
// shortest round-trip formatting, so identical runs produce identical
// bytes.

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Parses "c,c,b"-style variable specs (c = continuous, b = binary). A
/// single letter broadcasts to all `columns`.
std::vector<VarKind> parse_varspec(const std::string& spec, std::size_t columns);

/// Reads a typed dataset. The header is required; a first column named
/// "id" supplies member identifiers. Empty cells become missing values;
/// binary columns admit only 0 and 1.
DataSet read_dataset_csv(const std::string& path, const std::string& varspec);

/// Reads a (member_id, label) CSV, header included.
std::vector<std::pair<std::string, int>> read_labels_csv(const std::string& path);

/// Matches label rows to dataset members by id. The ids must be exactly
/// the dataset's ids and the labels exactly {1..K}, otherwise InputMismatch.
Clustering labels_to_clustering(const std::vector<std::pair<std::string, int>>& labels,
                                const DataSet& data);

std::string clustering_to_csv(const DataSet& data, const Clustering& clustering);

/// Full square matrix, row-major, header-free.
std::string distance_matrix_to_csv(const DistanceMatrix& dist);
DistanceMatrix read_distance_matrix_csv(const std::string& path);

/// Report JSON: per-K blocks {K, mclus, asw, dunn, member_scores[],
/// errors[]} plus {khat: {mclus, asw, dunn}}. `ids` supplies the member
/// identifiers referenced by member_scores.
std::string validity_report_to_json(const ValidityReport& report,
                                    const std::vector<std::string>& ids);

/// Compact per-K table: K,mclus,asw,dunn (empty cell where undefined).
std::string validity_report_to_csv(const ValidityReport& report);

std::string study_result_to_json(const StudyResult& result);

/// One row per scenario with the three recovery percentages.
std::string study_result_to_csv(const StudyResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mclus

#endif  // MCLUS_IO_HPP
