#pragma once

#include <string>
#include <vector>

#include "dialens/core.hpp"

namespace dialens {

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::string witness;
  friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct CheckReport {
  std::string subject;
  std::vector<CheckEntry> checks;
  bool structural = false;
  double wall_ms = 0;

  bool ok() const;
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// One pass entry per law in `laws` with no violation, one fail entry per
/// violation (laws outside the list included).
CheckReport make_report(std::string subject, const std::vector<std::string>& laws, const LawReport& r);

/// Line-oriented text, fields in a fixed order, tab separated:
///   subject <id>
///   check <name> <pass|fail> <witness>
///   structural <yes|no>
///   wall_ms <ms>
/// Tabs, newlines and backslashes inside fields are escaped.
std::string to_text(const CheckReport& r);
/// Inverse of to_text. Raises ParseError.
CheckReport parse_report(const std::string& text);

/// Exit status for a finished report: 0 all pass, 1 law failure, 2 structural.
int exit_code(const CheckReport& r);

}  // namespace dialens
