#include "bernbound/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace bernbound {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0.0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<double> as_prob_vector(const nlohmann::json& node, const char* what) {
    if (!node.is_array()) {
        throw std::invalid_argument(std::string(what) + " must be a JSON array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& item : node) {
        if (!item.is_number()) {
            throw std::invalid_argument(std::string(what) + " must contain only numbers");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> as_prob_matrix(const nlohmann::json& node, const char* what) {
    if (!node.is_array()) {
        throw std::invalid_argument(std::string(what) + " must be a JSON array of arrays");
    }
    std::vector<std::vector<double>> out;
    out.reserve(node.size());
    for (const auto& row : node) {
        out.push_back(as_prob_vector(row, what));
    }
    return out;
}

}  // namespace

EnsembleVariant load_ensemble_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument(std::string("invalid ensemble JSON: ") + err.what());
    }
    if (!doc.is_object() || doc.size() != 1) {
        throw std::invalid_argument(
            "ensemble JSON must be an object with exactly one of: bernoulli, multinoulli, grouped");
    }
    if (doc.contains("bernoulli")) {
        return EnsembleVariant{BernoulliEnsemble(as_prob_vector(doc["bernoulli"], "bernoulli"))};
    }
    if (doc.contains("multinoulli")) {
        return EnsembleVariant{MultinoulliEnsemble(as_prob_matrix(doc["multinoulli"], "multinoulli"))};
    }
    if (doc.contains("grouped")) {
        return EnsembleVariant{GroupedEnsemble(as_prob_matrix(doc["grouped"], "grouped"))};
    }
    throw std::invalid_argument(
        "ensemble JSON must be an object with exactly one of: bernoulli, multinoulli, grouped");
}

EnsembleVariant load_ensemble_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open ensemble file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_ensemble_json(buf.str());
}

std::string aux_to_json(const std::map<std::string, double>& aux) {
    std::string out = "{";
    bool first = true;
    for (const auto& [key, value] : aux) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += '"';
        out += key;
        out += "\":";
        // JSON has no literal for non-finite numbers; null keeps the field
        // parseable and unambiguous.
        out += std::isfinite(value) ? format_double(value) : "null";
    }
    out += '}';
    return out;
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
}

}  // namespace

std::string reports_to_csv(std::span<const TailBoundReport> reports) {
    std::string out = "method,n,t,epsilon,bound,log_bound,trivial_flag,aux_json\n";
    for (const auto& report : reports) {
        std::vector<std::string> fields;
        fields.reserve(8);
        fields.emplace_back(method_name(report.method));
        fields.push_back(std::to_string(report.n));
        fields.push_back(format_double(report.t));
        fields.push_back(report.epsilon ? format_double(*report.epsilon) : std::string());
        fields.push_back(format_double(report.bound));
        fields.push_back(format_double(report.log_bound));
        fields.push_back(report.trivial ? "1" : "0");
        fields.push_back(aux_to_json(report.aux));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            append_field(out, fields[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(row);
        } else {
            table.rows.push_back(std::move(row));
        }
        row.clear();
        row_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                break;  // tolerate CRLF input
            case '\n':
                end_row();
                break;
            default:
                field += c;
                row_started = true;
                break;
        }
    }
    if (in_quotes) {
        throw std::invalid_argument("unterminated quoted CSV field");
    }
    if (row_started || !field.empty() || !row.empty()) {
        end_row();  // final line without trailing newline
    }
    return table;
}

std::string csv_to_string(const CsvTable& table) {
    std::string out;
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            append_field(out, row[i]);
        }
        out += '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) {
        write_row(row);
    }
    return out;
}

std::string report_to_json(const TailBoundReport& report) {
    // Assembled by hand so that doubles keep their shortest round-trip form
    // (nlohmann::json would reformat them).
    std::string out = "{";
    out += "\"method\":\"";
    out += method_name(report.method);
    out += "\",\"n\":";
    out += std::to_string(report.n);
    out += ",\"t\":";
    out += format_double(report.t);
    if (report.epsilon) {
        out += ",\"epsilon\":";
        out += format_double(*report.epsilon);
    }
    out += ",\"bound\":";
    out += std::isfinite(report.bound) ? format_double(report.bound) : "null";
    out += ",\"log_bound\":";
    out += std::isfinite(report.log_bound) ? format_double(report.log_bound) : "null";
    out += ",\"trivial\":";
    out += report.trivial ? "true" : "false";
    out += ",\"degenerate\":";
    out += report.degenerate ? "true" : "false";
    out += ",\"aux\":";
    out += aux_to_json(report.aux);
    out += "}";
    return out;
}

}  // namespace bernbound
