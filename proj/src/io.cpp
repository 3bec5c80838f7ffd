#include "framekit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

bool has_csv_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

void append_float(std::string& out, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out += buf;
}

void write_node(const OrderedJson& node, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
    if (node.is_object()) {
        if (node.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            out += OrderedJson(it.key()).dump();
            out += ": ";
            write_node(it.value(), out, depth + 1);
        }
        out += "\n" + close_pad + "}";
    } else if (node.is_array()) {
        if (node.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& item : node) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            write_node(item, out, depth + 1);
        }
        out += "\n" + close_pad + "]";
    } else if (node.is_number_float()) {
        append_float(out, node.get<double>());
    } else {
        out += node.dump();
    }
}

OrderedJson vector_to_json(const Vector& v) {
    OrderedJson coords = OrderedJson::array();
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        coords.push_back(OrderedJson::array({v(j).real(), v(j).imag()}));
    }
    return coords;
}

OrderedJson vectors_to_json(const std::vector<Vector>& vectors) {
    OrderedJson out = OrderedJson::array();
    for (const Vector& v : vectors) {
        out.push_back(vector_to_json(v));
    }
    return out;
}

double finite_number_at(const OrderedJson& node, const std::string& where) {
    if (!node.is_number()) {
        throw ValidationError(where + " must be a number");
    }
    const double value = node.get<double>();
    if (!std::isfinite(value)) {
        throw ValidationError(where + " is not finite");
    }
    return value;
}

double parse_csv_number(const std::string& token, std::size_t line_no) {
    std::size_t begin = token.find_first_not_of(" \t");
    std::size_t end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) {
        throw ValidationError("CSV line " + std::to_string(line_no) + ": empty field");
    }
    double value = 0.0;
    const char* first = token.data() + begin;
    const char* last = token.data() + end + 1;
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        throw ValidationError("CSV line " + std::to_string(line_no) +
                              ": cannot parse number '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw ValidationError("CSV line " + std::to_string(line_no) +
                              ": non-finite value '" + token + "'");
    }
    return value;
}

VectorSequence load_sequence_csv(const std::string& path, const std::string& text) {
    std::vector<Vector> vectors;
    Eigen::Index dim = -1;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::vector<double> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string token = line.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            fields.push_back(parse_csv_number(token, line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() % 2 != 0) {
            throw ValidationError("CSV line " + std::to_string(line_no) +
                                  ": odd number of columns (need re,im pairs)");
        }
        const Eigen::Index line_dim = static_cast<Eigen::Index>(fields.size() / 2);
        if (dim < 0) {
            dim = line_dim;
        } else if (line_dim != dim) {
            throw ValidationError("CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(2 * dim) + " columns, found " +
                                  std::to_string(fields.size()));
        }
        Vector v(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            v(j) = Complex(fields[2 * static_cast<std::size_t>(j)],
                           fields[2 * static_cast<std::size_t>(j) + 1]);
        }
        vectors.push_back(std::move(v));
    }
    if (dim < 0) {
        throw ValidationError("CSV file " + path + " has no data lines");
    }
    return make_sequence(static_cast<std::size_t>(dim), std::move(vectors));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write file: " + path);
    }
    out << content;
    if (!out) {
        throw ValidationError("write failed: " + path);
    }
}

std::string sequence_to_csv(const std::vector<Vector>& vectors) {
    std::string out;
    for (const Vector& v : vectors) {
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            if (j > 0) out += ",";
            append_float(out, v(j).real());
            out += ",";
            append_float(out, v(j).imag());
        }
        out += "\n";
    }
    return out;
}

} // namespace

VectorSequence sequence_from_json(const OrderedJson& doc) {
    if (!doc.is_object()) {
        throw ValidationError("sequence document must be a JSON object");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
        throw ValidationError("field 'dim' must be an integer");
    }
    const long long dim_raw = doc["dim"].get<long long>();
    if (dim_raw <= 0) {
        throw ValidationError("field 'dim' must be positive");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_raw);
    if (!doc.contains("vectors") || !doc["vectors"].is_array()) {
        throw ValidationError("field 'vectors' must be an array");
    }

    std::vector<Vector> vectors;
    vectors.reserve(doc["vectors"].size());
    std::size_t i = 0;
    for (const auto& entry : doc["vectors"]) {
        const std::string where = "vectors[" + std::to_string(i) + "]";
        if (!entry.is_array() || static_cast<Eigen::Index>(entry.size()) != dim) {
            throw ValidationError(where + " must be an array of " +
                                  std::to_string(dim) + " [re,im] pairs");
        }
        Vector v(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto& pair = entry[static_cast<std::size_t>(j)];
            const std::string coord = where + "[" + std::to_string(j) + "]";
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError(coord + " must be a [re,im] pair");
            }
            v(j) = Complex(finite_number_at(pair[0], coord + "[0]"),
                           finite_number_at(pair[1], coord + "[1]"));
        }
        vectors.push_back(std::move(v));
        ++i;
    }
    return make_sequence(static_cast<std::size_t>(dim), std::move(vectors));
}

OrderedJson sequence_to_json(const VectorSequence& seq) {
    OrderedJson doc = OrderedJson::object();
    doc["dim"] = seq.dim();
    doc["vectors"] = vectors_to_json(seq.vectors());
    return doc;
}

VectorSequence load_sequence(const std::string& path) {
    const std::string text = read_file(path);
    if (has_csv_extension(path)) {
        return load_sequence_csv(path, text);
    }
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("JSON parse error in " + path + ": " + e.what());
    }
    return sequence_from_json(doc);
}

void save_sequence(const std::string& path, const VectorSequence& seq) {
    if (has_csv_extension(path)) {
        write_file(path, sequence_to_csv(seq.vectors()));
        return;
    }
    write_file(path, dump_report(sequence_to_json(seq)) + "\n");
}

void save_extension(const std::string& path, const Extension& ext, std::size_t dim) {
    if (has_csv_extension(path)) {
        write_file(path, sequence_to_csv(ext.added));
        return;
    }
    write_file(path, dump_report(extension_to_json(ext, dim)) + "\n");
}

OrderedJson to_json(const Tolerances& tol) {
    OrderedJson doc = OrderedJson::object();
    doc["rank_rtol"] = tol.rank_rtol;
    doc["rank_atol"] = tol.rank_atol;
    doc["verify_tol"] = tol.verify_tol;
    doc["bound_slack"] = tol.bound_slack;
    return doc;
}

OrderedJson to_json(const FrameBounds& bounds) {
    OrderedJson doc = OrderedJson::object();
    doc["lower"] = bounds.lower;
    doc["upper"] = bounds.upper;
    return doc;
}

OrderedJson to_json(const SequenceDiagnostics& diag) {
    OrderedJson doc = OrderedJson::object();
    doc["bounds"] = to_json(diag.bounds);
    doc["rank"] = diag.rank;
    doc["deficit"] = diag.deficit;
    doc["excess"] = diag.excess;
    doc["is_frame"] = diag.is_frame;
    doc["is_parseval"] = diag.is_parseval;
    doc["excess_is_lower_bound"] = diag.excess_is_lower_bound;
    doc["rank_borderline"] = diag.rank_borderline;
    return doc;
}

OrderedJson to_json(const ParsevalCheck& check) {
    OrderedJson doc = OrderedJson::object();
    doc["is_parseval"] = check.is_parseval;
    doc["residual"] = check.residual;
    return doc;
}

OrderedJson to_json(const EnergyReport& report) {
    OrderedJson doc = OrderedJson::object();
    doc["added_energy"] = report.added_energy;
    doc["defect_sum"] = report.defect_sum;
    doc["excess"] = report.excess;
    doc["identity_residual"] = report.identity_residual;
    return doc;
}

OrderedJson to_json(const RieszExtraction& extraction) {
    OrderedJson doc = OrderedJson::object();
    doc["removed_indices"] = extraction.removed_indices;
    doc["remaining"] = sequence_to_json(extraction.remaining);
    return doc;
}

OrderedJson to_json(const DefectSeriesReport& report) {
    OrderedJson doc = OrderedJson::object();
    doc["upper_bound"] = report.upper_bound;
    doc["schedule"] = report.schedule;
    doc["partial_sums"] = report.partial_sums;
    doc["verdict"] = report.growing ? "growing" : "bounded";
    return doc;
}

OrderedJson to_json(const SubspaceBasis& basis) {
    OrderedJson doc = OrderedJson::object();
    doc["dim"] = basis.dim;
    doc["basis"] = vectors_to_json(basis.basis);
    return doc;
}

OrderedJson to_json(const PerturbationResult& result) {
    OrderedJson doc = OrderedJson::object();
    doc["perturbations"] = vectors_to_json(result.perturbations);
    doc["subspace"] = to_json(result.subspace);
    return doc;
}

namespace {

OrderedJson to_json(const DefectProfile& profile) {
    OrderedJson doc = OrderedJson::object();
    doc["rank"] = profile.rank;
    doc["top"] = profile.top;
    doc["tail"] = profile.tail;
    doc["median"] = profile.median;
    return doc;
}

} // namespace

OrderedJson to_json(const DualityReport& report) {
    OrderedJson doc = OrderedJson::object();
    doc["schedule"] = report.schedule;
    OrderedJson per_n = OrderedJson::array();
    for (std::size_t i = 0; i < report.schedule.size(); ++i) {
        OrderedJson row = OrderedJson::object();
        row["N"] = report.schedule[i];
        row["left_defect"] = to_json(report.left[i]);
        row["right_defect"] = to_json(report.right[i]);
        per_n.push_back(std::move(row));
    }
    doc["per_N"] = std::move(per_n);
    doc["classification"] = duality_class_name(report.classification);
    return doc;
}

OrderedJson to_json(const ExtendabilityReport& report) {
    OrderedJson doc = OrderedJson::object();
    OrderedJson schedule = OrderedJson::array();
    OrderedJson per_n = OrderedJson::array();
    for (const ExtendabilityRow& row : report.rows) {
        schedule.push_back(row.truncation);
        OrderedJson entry = OrderedJson::object();
        entry["N"] = row.truncation;
        entry["sigma_min"] = row.sigma_min;
        entry["deficit"] = row.deficit;
        entry["defect_rank"] = row.defect_rank;
        per_n.push_back(std::move(entry));
    }
    doc["schedule"] = std::move(schedule);
    doc["per_N"] = std::move(per_n);
    doc["verdict"] = report.non_extendable_trend ? "non-extendable-trend" : "extendable-trend";
    return doc;
}

OrderedJson to_json(const CompletionTrend& trend) {
    OrderedJson doc = OrderedJson::object();
    OrderedJson schedule = OrderedJson::array();
    OrderedJson per_n = OrderedJson::array();
    for (const CompletionTrendRow& row : trend.rows) {
        schedule.push_back(row.truncation);
        OrderedJson entry = OrderedJson::object();
        entry["N"] = row.truncation;
        entry["k"] = row.k;
        per_n.push_back(std::move(entry));
    }
    doc["schedule"] = std::move(schedule);
    doc["per_N"] = std::move(per_n);
    doc["stabilizing"] = trend.stabilizing;
    return doc;
}

OrderedJson extension_to_json(const Extension& ext, std::size_t dim) {
    OrderedJson doc = OrderedJson::object();
    doc["dim"] = dim;
    doc["vectors"] = vectors_to_json(ext.added);
    doc["placement"] = "prepended";
    doc["k_minimal"] = ext.k_minimal;
    return doc;
}

std::string dump_report(const OrderedJson& doc) {
    std::string out;
    write_node(doc, out, 0);
    return out;
}

std::string render_run_report(const RunReport& report) {
    OrderedJson doc = OrderedJson::object();
    doc["command"] = report.command;
    doc["inputs"] = report.inputs;
    doc["tolerances"] = to_json(report.tolerances);
    doc["payload"] = report.payload;
    doc["exit_code"] = report.exit_code;
    return dump_report(doc);
}

} // namespace framekit
