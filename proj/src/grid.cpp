#include "omfilter/grid.hpp"

#include <cmath>

#include "omfilter/errors.hpp"
#include "omfilter/params.hpp"

namespace omf {

FrequencyGrid::FrequencyGrid(std::vector<double> hz) : hz_(std::move(hz)) {
    omega_.reserve(hz_.size());
    for (std::size_t i = 0; i < hz_.size(); ++i) {
        if (!(hz_[i] > 0.0) || !std::isfinite(hz_[i]))
            throw ParameterError("grid", "frequencies must be positive and finite");
        if (i > 0 && !(hz_[i] > hz_[i - 1]))
            throw ParameterError("grid", "frequencies must be strictly increasing");
        omega_.push_back(kTwoPi * hz_[i]);
    }
}

FrequencyGrid FrequencyGrid::logarithmic(double f_min, double f_max, double points_per_decade) {
    if (!(f_min > 0.0) || !(f_max > f_min))
        throw ParameterError("grid.f_min", "need 0 < f_min < f_max");
    if (!(points_per_decade >= 1.0)) throw ParameterError("grid.points_per_decade", "must be >= 1");
    const double decades = std::log10(f_max / f_min);
    const auto n = static_cast<std::size_t>(std::llround(decades * points_per_decade)) + 1;
    std::vector<double> hz(std::max<std::size_t>(n, 2));
    const double last = static_cast<double>(hz.size() - 1);
    for (std::size_t i = 0; i < hz.size(); ++i)
        hz[i] = f_min * std::pow(f_max / f_min, static_cast<double>(i) / last);
    hz.back() = f_max;
    return FrequencyGrid(std::move(hz));
}

FrequencyGrid FrequencyGrid::linear(double f_min, double f_max, std::size_t points) {
    if (!(f_min > 0.0) || !(f_max > f_min) || points < 2)
        throw ParameterError("grid", "need 0 < f_min < f_max and at least two points");
    std::vector<double> hz(points);
    for (std::size_t i = 0; i < points; ++i)
        hz[i] = f_min + (f_max - f_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    return FrequencyGrid(std::move(hz));
}

FrequencyGrid FrequencyGrid::from_hz(std::vector<double> hz) { return FrequencyGrid(std::move(hz)); }

FrequencyGrid default_grid() { return FrequencyGrid::logarithmic(10.0, 1e4, 100.0); }

}  // namespace omf
