#pragma once

#include <stdexcept>
#include <string>

namespace qent {

// A state whose norm drifted away from 1: upstream corruption, not a user error.
class NormError : public std::runtime_error {
public:
    NormError(const std::string& where, double norm)
        : std::runtime_error(where + ": state norm " + std::to_string(norm) + " deviates from 1"), norm_(norm)
    {
    }
    double norm() const { return norm_; }

private:
    double norm_;
};

// Invalid experiment configuration; carries the offending field name.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

void require_unit_norm(const char* where, double norm, double tol = 1e-6);

}  // namespace qent
