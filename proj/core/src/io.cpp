#include "mclus/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mclus {

namespace {

using nlohmann::json;

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(col_no) +
                         ": '" + cell + "' is not a number");
    return value;
}

int parse_int_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    int value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(col_no) +
                         ": '" + cell + "' is not an integer");
    return value;
}

json optional_number(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

json khat_json(const KhatEstimates& khat) {
    json j = json::object();
    j["mclus"] = khat.mclus ? json(*khat.mclus) : json(nullptr);
    j["asw"] = khat.asw ? json(*khat.asw) : json(nullptr);
    j["dunn"] = khat.dunn ? json(*khat.dunn) : json(nullptr);
    return j;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::vector<VarKind> parse_varspec(const std::string& spec, std::size_t columns) {
    const auto kind_of = [&](const std::string& token) {
        if (token == "c") return VarKind::continuous;
        if (token == "b") return VarKind::binary;
        throw ConfigError("variable spec token '" + token + "' (expected 'c' or 'b')");
    };
    std::vector<std::string> tokens = split_line(spec);
    if (tokens.size() == 1)
        return std::vector<VarKind>(columns, kind_of(tokens[0]));
    if (tokens.size() != columns)
        throw ConfigError("variable spec lists " + std::to_string(tokens.size()) +
                          " variables but the file has " + std::to_string(columns) + " columns");
    std::vector<VarKind> kinds;
    kinds.reserve(columns);
    for (const auto& t : tokens) kinds.push_back(kind_of(t));
    return kinds;
}

DataSet read_dataset_csv(const std::string& path, const std::string& varspec) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.size() < 2) throw ParseError("'" + path + "': need a header row and at least one data row");

    const std::vector<std::string> header = split_line(lines[0]);
    const bool has_id = !header.empty() && header[0] == "id";
    const std::size_t first_col = has_id ? 1 : 0;
    if (header.size() <= first_col) throw ParseError("'" + path + "': header has no data columns");
    const std::size_t v = header.size() - first_col;

    DataSet out;
    out.kinds = parse_varspec(varspec, v);
    const std::size_t n = lines.size() - 1;
    out.data = Matrix(n, v);
    if (has_id) out.ids.reserve(n);

    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t line_no = r + 2;
        const std::vector<std::string> cells = split_line(lines[r + 1]);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, found " +
                             std::to_string(cells.size()));
        if (has_id) out.ids.push_back(cells[0]);
        for (std::size_t f = 0; f < v; ++f) {
            const double value = parse_cell(cells[first_col + f], line_no, first_col + f + 1);
            if (out.kinds[f] == VarKind::binary && !is_missing(value) && value != 0.0 && value != 1.0)
                throw SchemaError("line " + std::to_string(line_no) + ", column " +
                                  std::to_string(first_col + f + 1) + ": binary variable has value '" +
                                  cells[first_col + f] + "'");
            out.data.at(r, f) = value;
        }
    }
    out.ensure_ids();
    {
        std::set<std::string> unique(out.ids.begin(), out.ids.end());
        if (unique.size() != out.ids.size())
            throw SchemaError("'" + path + "': duplicate member ids");
    }
    return out;
}

std::vector<std::pair<std::string, int>> read_labels_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.size() < 2) throw ParseError("'" + path + "': need a header row and at least one data row");
    std::vector<std::pair<std::string, int>> out;
    out.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string> cells = split_line(lines[r]);
        if (cells.size() != 2)
            throw ParseError("line " + std::to_string(r + 1) + ": expected 2 cells, found " +
                             std::to_string(cells.size()));
        out.emplace_back(cells[0], parse_int_cell(cells[1], r + 1, 2));
    }
    return out;
}

Clustering labels_to_clustering(const std::vector<std::pair<std::string, int>>& labels,
                                const DataSet& data) {
    if (labels.size() != data.n())
        throw InputMismatch("labels list " + std::to_string(labels.size()) + " members, data has " +
                            std::to_string(data.n()));
    std::map<std::string, int> by_id;
    for (const auto& [id, label] : labels) {
        if (!by_id.emplace(id, label).second)
            throw InputMismatch("duplicate label row for member '" + id + "'");
    }

    Clustering out;
    out.labels.resize(data.n());
    int max_label = 0;
    for (std::size_t i = 0; i < data.n(); ++i) {
        const auto it = by_id.find(data.ids[i]);
        if (it == by_id.end())
            throw InputMismatch("no label for member '" + data.ids[i] + "'");
        if (it->second < 1)
            throw InputMismatch("member '" + data.ids[i] + "' has non-positive label");
        out.labels[i] = it->second;
        max_label = std::max(max_label, it->second);
    }
    out.k = max_label;
    try {
        out.validate();
    } catch (const Error& e) {
        throw InputMismatch(std::string("label file is not a valid partition: ") + e.what());
    }
    return out;
}

std::string clustering_to_csv(const DataSet& data, const Clustering& clustering) {
    std::string out = "member_id,label\n";
    for (std::size_t i = 0; i < data.n(); ++i) {
        out += data.ids[i];
        out += ',';
        out += std::to_string(clustering.labels[i]);
        out += '\n';
    }
    return out;
}

std::string distance_matrix_to_csv(const DistanceMatrix& dist) {
    std::string out;
    const std::size_t n = dist.size();
    out.reserve(n * n * 8);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out += ',';
            out += format_double(dist.at(i, j));
        }
        out += '\n';
    }
    return out;
}

DistanceMatrix read_distance_matrix_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    const std::size_t n = lines.size();
    if (n < 2) throw ParseError("'" + path + "': distance matrix needs n >= 2 rows");
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::vector<std::string> cells = split_line(lines[r]);
        if (cells.size() != n)
            throw ParseError("line " + std::to_string(r + 1) + ": expected " + std::to_string(n) +
                             " cells, found " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < n; ++c) values.push_back(parse_cell(cells[c], r + 1, c + 1));
    }
    return DistanceMatrix::from_square(n, values);
}

std::string validity_report_to_json(const ValidityReport& report,
                                    const std::vector<std::string>& ids) {
    json per_k = json::array();
    for (const auto& entry : report.per_k) {
        json block = json::object();
        block["K"] = entry.k;
        block["mclus"] = optional_number(entry.mclus);
        block["asw"] = optional_number(entry.asw);
        block["dunn"] = optional_number(entry.dunn);
        json scores = json::array();
        for (const auto& ms : entry.member_scores) {
            json s = json::object();
            s["member"] = (ms.member < ids.size()) ? ids[ms.member] : std::to_string(ms.member + 1);
            s["own_mode"] = optional_number(ms.own_mode);
            s["nc"] = ms.nearest;
            s["nc_mode"] = ms.nearest_mode;
            s["score"] = ms.score;
            scores.push_back(std::move(s));
        }
        block["member_scores"] = std::move(scores);
        json errors = json::array();
        for (const auto& err : entry.errors)
            errors.push_back(json{{"index", err.index}, {"message", err.message}});
        block["errors"] = std::move(errors);
        per_k.push_back(std::move(block));
    }
    json root = json::object();
    root["per_k"] = std::move(per_k);
    root["khat"] = khat_json(report.khat);
    return root.dump(2) + "\n";
}

std::string validity_report_to_csv(const ValidityReport& report) {
    std::string out = "K,mclus,asw,dunn\n";
    for (const auto& entry : report.per_k) {
        out += std::to_string(entry.k);
        for (const auto& v : {entry.mclus, entry.asw, entry.dunn}) {
            out += ',';
            if (v) out += format_double(*v);
        }
        out += '\n';
    }
    return out;
}

std::string study_result_to_json(const StudyResult& result) {
    json root = json::object();
    root["scenario"] = to_string(result.scenario);
    root["true_k"] = result.true_k;
    root["rep"] = result.rep;
    root["master_seed"] = result.master_seed;
    root["p"] = json{{"mclus", result.p_mclus}, {"asw", result.p_asw}, {"dunn", result.p_dunn}};
    json reps = json::array();
    for (const auto& rec : result.records) {
        json r = json::object();
        r["r"] = rec.r;
        r["seed"] = rec.seed;
        r["khat"] = khat_json(rec.khat);
        r["errors"] = rec.errors;
        reps.push_back(std::move(r));
    }
    root["replications"] = std::move(reps);
    return root.dump(2) + "\n";
}

std::string study_result_to_csv(const StudyResult& result) {
    std::string out = "scenario,mclus,asw,dunn\n";
    out += to_string(result.scenario);
    out += ',' + format_double(result.p_mclus);
    out += ',' + format_double(result.p_asw);
    out += ',' + format_double(result.p_dunn);
    out += '\n';
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

}  // namespace mclus
