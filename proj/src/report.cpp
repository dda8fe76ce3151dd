#include "reglab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace reglab::experiments {

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ResidualReport::add_parameter(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, value);
    std::sort(parameters.begin(), parameters.end());
}

void ResidualReport::add_parameter(const std::string& key, double value) {
    add_parameter(key, format_value(value));
}

void ResidualReport::add_parameter(const std::string& key, long long value) {
    add_parameter(key, std::to_string(value));
}

CheckResult& ResidualReport::add_check(const std::string& name, const std::string& description,
                                       double residual, double tolerance) {
    checks.push_back({name, description, residual, tolerance, residual <= tolerance});
    return checks.back();
}

bool ResidualReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ResidualReport::to_text() const {
    std::ostringstream os;
    os << "experiment: " << experiment_name << '\n';
    os << "parameters:\n";
    for (const auto& [key, value] : parameters) os << "  " << key << ": " << value << '\n';
    os << "checks:\n";
    for (const CheckResult& c : checks) {
        os << "  - name: " << c.name << '\n';
        os << "    description: " << c.description << '\n';
        os << "    residual: " << format_value(c.residual) << '\n';
        os << "    tolerance: " << format_value(c.tolerance) << '\n';
        os << "    pass: " << (c.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string reports_to_text(const std::vector<ResidualReport>& reports) {
    std::ostringstream os;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) os << "---\n";
        os << reports[i].to_text();
    }
    return os.str();
}

std::string reports_to_csv(const std::vector<ResidualReport>& reports) {
    std::ostringstream os;
    os << "experiment,check,residual,tolerance,pass\n";
    for (const ResidualReport& r : reports)
        for (const CheckResult& c : r.checks)
            os << r.experiment_name << ',' << c.name << ',' << format_value(c.residual) << ','
               << format_value(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write_file_atomic: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("write_file_atomic: rename failed for " + path);
    }
}

}  // namespace reglab::experiments
