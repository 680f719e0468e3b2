#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace qlat::cli {

/// Shortest round-trip-safe text for a double ("%.12g").
std::string num(double v);

struct Column {
  std::string name;
  std::string unit;
};

/// Writes to <path>.tmp and renames on close, so readers never see a partial
/// file.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, const std::vector<Column>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void close();

 private:
  std::filesystem::path path_, tmp_;
  std::ofstream out_;
  std::size_t width_;
  bool open_ = true;
};

/// Ordered key=value summary.
class Summary {
 public:
  void add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, num(value)); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace qlat::cli
