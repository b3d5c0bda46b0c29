#pragma once

#include <map>
#include <string>
#include <vector>

namespace swdecay {

// Formats a double with 17 significant digits ("%.17g"): enough to
// round-trip exactly and stable across runs.
std::string format_double(double v);

// Minimal CSV emitter with a fixed header; every write goes through
// format_double so identical data produces byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

  // Throws IoError on failure; path "-" writes to stdout.
  void write(const std::string& path) const;

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v);
  static std::string cell(const std::string& v) { return v; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Parsed CSV with named columns; numeric access throws IoError on
// malformed cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  double number(std::size_t row, int col) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace swdecay
