#include "fibral/report.hpp"

#include <sstream>

namespace fibral {

void Report::add(std::string subject, std::string check, bool passed, std::string detail) {
  entries.push_back({std::move(subject), std::move(check), passed, std::move(detail)});
}

bool Report::all_passed() const {
  for (const CheckEntry& e : entries)
    if (!e.passed) return false;
  return true;
}

std::size_t Report::failure_count() const {
  std::size_t n = 0;
  for (const CheckEntry& e : entries)
    if (!e.passed) ++n;
  return n;
}

std::string Report::format() const {
  std::ostringstream out;
  for (const CheckEntry& e : entries) {
    out << (e.passed ? "[ ok ] " : "[FAIL] ") << e.subject << ": " << e.check;
    if (!e.detail.empty()) out << " (" << e.detail << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace fibral
