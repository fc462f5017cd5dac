#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bernbound/bounds.hpp"
#include "bernbound/ensembles.hpp"

namespace bernbound {

/// Shortest decimal string that parses back to exactly the same double.
/// Non-finite values render as "inf", "-inf", "nan".
std::string format_double(double value);

/// Parses the formats accepted by ensemble JSON files:
///   {"bernoulli":   [0.2, 0.8, ...]}
///   {"multinoulli": [[0.2, 0.3, 0.5], ...]}
///   {"grouped":     [[0.1, 0.2], [0.5], ...]}
/// Exactly one key must be present. Validation errors surface as
/// std::invalid_argument from the ensemble constructors.
EnsembleVariant load_ensemble_json(const std::string& text);
EnsembleVariant load_ensemble_file(const std::string& path);

/// Serializes the aux map as a compact JSON object with keys in map order.
std::string aux_to_json(const std::map<std::string, double>& aux);

/// CSV with header: method,n,t,epsilon,bound,log_bound,trivial_flag,aux_json.
/// Empty epsilon for methods that do not define one. Fields are quoted only
/// when they contain a comma, quote, or newline, so writing and re-writing a
/// parsed table is byte-identical.
std::string reports_to_csv(std::span<const TailBoundReport> reports);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Minimal RFC-4180-style reader for the tables this tool emits.
CsvTable parse_csv(const std::string& text);

/// Re-encodes a parsed table with the canonical quoting used by the writers.
std::string csv_to_string(const CsvTable& table);

/// Single-report JSON object (used by `bounds --json` and the verify output).
std::string report_to_json(const TailBoundReport& report);

}  // namespace bernbound
