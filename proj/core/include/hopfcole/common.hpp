#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcole {

// Error taxonomy mirrored by CLI exit codes: config -> 2, numerical -> 3, io -> 4.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class CheckSeverity { kError, kWarning };

/// One line of an assumption / validation report.
struct CheckItem {
  std::string name;
  bool passed = true;
  CheckSeverity severity = CheckSeverity::kError;
  std::string message;
};

/// Throws ConfigError listing every failed error-severity item; returns the
/// warnings (failed warning-severity items) for the caller to surface.
std::vector<CheckItem> enforce_checks(const std::vector<CheckItem>& items, bool strict);

std::string render_checks(const std::vector<CheckItem>& items);

}  // namespace hopfcole
