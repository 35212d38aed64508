#pragma once

// CSV emission with deterministic formatting: every float is printed with
// 17 significant digits, so identical inputs produce byte-identical files.

#include <ostream>
#include <string>
#include <vector>

#include "radcomp/types.hpp"

namespace radcomp {

std::string format_real(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void text_row(const std::vector<std::string>& cells);
  // footer comment line, rendered as "# <text>"
  void comment(const std::string& text);
  void comment(const std::string& key, double value);
  void comment(const std::string& key, const std::string& value);

 private:
  std::ostream& out_;
};

}  // namespace radcomp
