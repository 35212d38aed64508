#include "radcomp/csv_io.hpp"

#include <cstdio>

namespace radcomp {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_real(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::text_row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::comment(const std::string& key, double value) {
  out_ << "# " << key << "=" << format_real(value) << '\n';
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  out_ << "# " << key << "=" << value << '\n';
}

}  // namespace radcomp
