#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace omf {

// Positive, strictly increasing sideband frequency grid. Stores both Hz and rad/s.
class FrequencyGrid {
public:
    FrequencyGrid() = default;

    // Logarithmic grid from f_min to f_max (Hz, both included).
    static FrequencyGrid logarithmic(double f_min, double f_max, double points_per_decade);
    static FrequencyGrid linear(double f_min, double f_max, std::size_t points);
    static FrequencyGrid from_hz(std::vector<double> hz);

    std::size_t size() const noexcept { return hz_.size(); }
    bool empty() const noexcept { return hz_.empty(); }
    const std::vector<double>& hz() const& noexcept { return hz_; }
    const std::vector<double>& omega() const& noexcept { return omega_; }
    // Called on a temporary grid (e.g. in a range-for), hand back a copy rather than a dangling reference.
    std::vector<double> hz() && { return std::move(hz_); }
    std::vector<double> omega() && { return std::move(omega_); }

private:
    explicit FrequencyGrid(std::vector<double> hz);

    std::vector<double> hz_;
    std::vector<double> omega_;
};

// Defaults: 10 Hz - 10 kHz, 100 points per decade.
FrequencyGrid default_grid();

}  // namespace omf
