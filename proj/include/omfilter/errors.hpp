#pragma once

#include <stdexcept>
#include <string>

namespace omf {

// Invalid physical input. `parameter()` names the offending field, e.g. "filter.L_f".
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string parameter, const std::string& what)
        : std::invalid_argument(parameter + ": " + what), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

// A frequency-domain solve hit a (numerically) singular system.
class SingularPointError : public std::runtime_error {
public:
    SingularPointError(double omega, const std::string& what)
        : std::runtime_error(what + " at Omega = " + std::to_string(omega) + " rad/s"), omega_(omega) {}

    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

// Controller synthesis failure (uncontrollable pair, unstable design, ...).
class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration file / CLI input problems. `key()` is the config key, when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace omf
