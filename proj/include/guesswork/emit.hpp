#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace guesswork {

// %.12g, C locale ('.' decimal point)
std::string format_g12(double v);

// value expressed in bits^order instead of nats^order (display only)
double to_bits(double nats_value, int order);

/// Accumulates CSV text: mandatory header row, '\n' line endings, fields
/// joined by ','. Numeric cells go through format_g12.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);

  CsvBuilder& cell(const std::string& text);
  CsvBuilder& cell(double value);
  CsvBuilder& cell(std::size_t value);
  void end_row();

  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

struct VerifyRow {
  std::string suite;
  std::string name;
  bool pass;
  bool has_residual;
  double residual;
};

// JSON array of {"suite", "case", "status", "residual"} objects
std::string verify_rows_json(const std::vector<VerifyRow>& rows);

// write-to-temp-then-rename; replaces path atomically
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace guesswork
