#include "guesswork/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "guesswork/errors.hpp"

namespace guesswork {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double to_bits(double nats_value, int order) {
  return nats_value / std::pow(std::log(2.0), order);
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header)
    : columns_(header.size()) {
  if (header.empty()) fail(errc::out_of_range, "CSV needs at least one column");
  for (const auto& h : header) cell(h);
  end_row();
}

CsvBuilder& CsvBuilder::cell(const std::string& text) {
  if (in_row_ >= columns_)
    fail(errc::dimension_mismatch, "row has more cells than the header");
  if (in_row_) buf_ += ',';
  buf_ += text;
  ++in_row_;
  return *this;
}

CsvBuilder& CsvBuilder::cell(double value) { return cell(format_g12(value)); }

CsvBuilder& CsvBuilder::cell(std::size_t value) {
  return cell(std::to_string(value));
}

void CsvBuilder::end_row() {
  if (in_row_ != columns_)
    fail(errc::dimension_mismatch, "row has fewer cells than the header");
  buf_ += '\n';
  in_row_ = 0;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string verify_rows_json(const std::vector<VerifyRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const VerifyRow& r = rows[i];
    out += "  {\"suite\": \"" + json_escape(r.suite) + "\", \"case\": \"" +
           json_escape(r.name) + "\", \"status\": \"" +
           (r.pass ? "pass" : "fail") + "\", \"residual\": ";
    out += r.has_residual && std::isfinite(r.residual)
               ? format_g12(r.residual)
               : "null";
    out += i + 1 < rows.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(errc::out_of_range, "cannot open " + tmp + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) fail(errc::out_of_range, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(errc::out_of_range, "cannot move " + tmp + " into place");
  }
}

}  // namespace guesswork
