#pragma once

#include <complex>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "omfilter/coupled_system.hpp"

namespace omf::io {

// Fixed 9-significant-digit rendering ("%.9g"); "inf", "-inf", "nan" for non-finite values.
std::string format_number(double value);

// Comma-delimited, header row, LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    // Leading text cell followed by numeric cells.
    void row(const std::string& label, const std::vector<double>& values);

private:
    std::ostream& out_;
};

// Columns: frequency_Hz, shot_asd, thermal_asd, total_asd, signal_tf_re, signal_tf_im
// [, radiation_pressure_asd].
void write_budget_csv(std::ostream& out, const NoiseBudget& budget, bool radiation_pressure_column = false);
void write_budget_csv(const std::filesystem::path& path, const NoiseBudget& budget,
                      bool radiation_pressure_column = false);

std::string budget_csv(const NoiseBudget& budget, bool radiation_pressure_column = false);

// Throws ConfigError when the file cannot be opened for writing.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace omf::io
