#include "omfilter/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "omfilter/errors.hpp"
#include "omfilter/params.hpp"

namespace omf::io {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
    out_ << label;
    for (double v : values) out_ << ',' << format_number(v);
    out_ << '\n';
}

void write_budget_csv(std::ostream& out, const NoiseBudget& budget, bool radiation_pressure_column) {
    CsvWriter csv(out);
    std::vector<std::string> cols{"frequency_Hz", "shot_asd", "thermal_asd", "total_asd", "signal_tf_re",
                                  "signal_tf_im"};
    if (radiation_pressure_column) cols.push_back("radiation_pressure_asd");
    csv.header(cols);
    for (std::size_t i = 0; i < budget.size(); ++i) {
        std::vector<double> row{budget.omega[i] / kTwoPi, budget.shot_asd[i],         budget.thermal_asd[i],
                                budget.total_asd[i],      budget.signal_tf[i].real(), budget.signal_tf[i].imag()};
        if (radiation_pressure_column) row.push_back(budget.radiation_pressure_asd[i]);
        csv.row(row);
    }
}

std::string budget_csv(const NoiseBudget& budget, bool radiation_pressure_column) {
    std::ostringstream out;
    write_budget_csv(out, budget, radiation_pressure_column);
    return out.str();
}

void write_budget_csv(const std::filesystem::path& path, const NoiseBudget& budget, bool radiation_pressure_column) {
    write_text(path, budget_csv(budget, radiation_pressure_column));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("--out", "cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("--out", "write failed for " + path.string());
}

}  // namespace omf::io
