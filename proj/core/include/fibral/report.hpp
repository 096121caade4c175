#pragma once

#include <string>
#include <vector>

namespace fibral {

struct CheckEntry {
  std::string subject;
  std::string check;
  bool passed = false;
  std::string detail;
};

// Pass/fail ledger used by surface validation and witness verification.
// Failures are entries, not exceptions.
struct Report {
  std::vector<CheckEntry> entries;

  void add(std::string subject, std::string check, bool passed, std::string detail = "");
  bool all_passed() const;
  std::size_t failure_count() const;
  std::string format() const;
};

}  // namespace fibral
