#include "output.hpp"

#include <cstdio>
#include <stdexcept>

namespace qlat::cli {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<Column>& columns)
    : path_(std::move(path)), tmp_(path_.string() + ".tmp"), out_(tmp_), width_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot write " + tmp_.string());
  out_ << "# ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i].name;
    if (!columns[i].unit.empty()) out_ << " [" << columns[i].unit << ']';
  }
  out_ << '\n';
}

CsvWriter::~CsvWriter() {
  if (open_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("csv row width mismatch for " + path_.string());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << num(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("failed writing " + tmp_.string());
  std::filesystem::rename(tmp_, path_);
  open_ = false;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qlat::cli
