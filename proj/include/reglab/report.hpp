#pragma once

#include <string>
#include <utility>
#include <vector>

namespace reglab::experiments {

struct CheckResult {
    std::string name;
    std::string description;  // what the residual measures, in plain language
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Outcome of one named experiment: an ordered list of checks plus the
/// parameters (including the seed) needed to replay the run. Serialization
/// is canonical, so identical runs produce byte-identical text.
struct ResidualReport {
    std::string experiment_name;
    std::vector<std::pair<std::string, std::string>> parameters;  // key/value, kept sorted
    std::vector<CheckResult> checks;

    void add_parameter(const std::string& key, const std::string& value);
    void add_parameter(const std::string& key, double value);
    void add_parameter(const std::string& key, long long value);

    /// Append a check; pass is derived as residual <= tolerance.
    CheckResult& add_check(const std::string& name, const std::string& description,
                           double residual, double tolerance);

    bool all_pass() const;
    std::string to_text() const;
};

/// Canonical shortest-roundtrip formatting used everywhere a double lands in
/// a report or CSV.
std::string format_value(double v);

/// Multiple reports in one document, separated by "---" lines.
std::string reports_to_text(const std::vector<ResidualReport>& reports);

/// Reports flattened to CSV rows: experiment,check,residual,tolerance,pass.
std::string reports_to_csv(const std::vector<ResidualReport>& reports);

/// Write via temp file + rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace reglab::experiments
