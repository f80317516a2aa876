#pragma once

// Fixed CSV formatting: 17 significant digits, '.' decimal point, '\n' line
// endings, so emitted files diff cleanly across platforms.

#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace keyregion {

/// Shortest-agnostic fixed format: always %.17g in the C locale.
inline std::string format_number(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  std::string s(buf.data());
  for (char& c : s) {
    if (c == ',') c = '.';  // guard against a non-C numeric locale
  }
  return s;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns) { line(columns); }

  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

}  // namespace keyregion
