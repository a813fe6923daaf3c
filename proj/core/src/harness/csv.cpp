#include "fdcomp/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fdcomp/errors.hpp"

namespace fdcomp::harness {
namespace {

std::string escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

CsvDocument::CsvDocument(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvDocument::add_comment(const std::string& line) { comments_.push_back(line); }

void CsvDocument::add_comment_block(const std::string& text) {
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) comments_.push_back(line);
}

CsvDocument::RowBuilder& CsvDocument::RowBuilder::operator<<(double value) {
  row_.push_back(format_number(value));
  return *this;
}

CsvDocument::RowBuilder& CsvDocument::RowBuilder::operator<<(const std::string& value) {
  row_.push_back(value);
  return *this;
}

CsvDocument::RowBuilder& CsvDocument::RowBuilder::operator<<(const char* value) {
  row_.emplace_back(value);
  return *this;
}

CsvDocument::RowBuilder& CsvDocument::RowBuilder::operator<<(std::size_t value) {
  row_.push_back(std::to_string(value));
  return *this;
}

CsvDocument::RowBuilder CsvDocument::row() {
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
  return RowBuilder(rows_.back());
}

void CsvDocument::write(std::ostream& os) const {
  for (const auto& c : comments_) os << (c.empty() ? "#" : "# " + c) << '\n';
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << escape(cells[i]);
    os << '\n';
  };
  emit(columns_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != columns_.size()) {
      throw ShapeError("CSV row " + std::to_string(r) + " has " + std::to_string(rows_[r].size()) +
                       " cells, expected " + std::to_string(columns_.size()));
    }
    emit(rows_[r]);
  }
}

std::string CsvDocument::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void CsvDocument::write_file(const std::filesystem::path& path) const {
  const std::string text = str();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace fdcomp::harness
