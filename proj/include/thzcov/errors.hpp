// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace thzcov {

/// Raised for any invalid or inconsistent scenario description.
class ConfigError : public std::runtime_error {
  public:
    enum class Kind {
        missing_field,
        unknown_key,
        bad_value,
        non_positive_value,
        geometry_violation,
        offset_out_of_disk,
    };

    ConfigError(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/// Raised when an adaptive integral cannot reach its tolerance within the
/// evaluation budget.
class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(std::string message)
        : std::runtime_error(std::move(message)) {}
};

/// Raised when an operation is called for the wrong RIS deployment regime
/// (e.g. the high-RIS coverage integral on a low-RIS scenario).
class ScenarioMismatchError : public std::logic_error {
  public:
    explicit ScenarioMismatchError(std::string message)
        : std::logic_error(std::move(message)) {}
};

/// Raised when a Monte-Carlo fidelity mode is not available for the given
/// configuration (explicit channel sampling with too many RIS elements).
class ModeUnavailableError : public std::runtime_error {
  public:
    explicit ModeUnavailableError(std::string message)
        : std::runtime_error(std::move(message)) {}
};

}  // namespace thzcov
