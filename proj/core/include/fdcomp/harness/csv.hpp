#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fdcomp::harness {

/// Nine significant digits, "%.9g" style; "inf", "-inf" and "nan" for
/// non-finite values.
std::string format_number(double value);

/// A CSV document with a '#'-prefixed metadata block above the header row.
class CsvDocument {
 public:
  explicit CsvDocument(std::vector<std::string> columns);

  void add_comment(const std::string& line);
  /// Appends each line of `text` as its own comment.
  void add_comment_block(const std::string& text);

  class RowBuilder {
   public:
    RowBuilder& operator<<(double value);
    RowBuilder& operator<<(const std::string& value);
    RowBuilder& operator<<(const char* value);
    RowBuilder& operator<<(std::size_t value);

   private:
    friend class CsvDocument;
    explicit RowBuilder(std::vector<std::string>& row) : row_(row) {}
    std::vector<std::string>& row_;
  };

  /// Starts a new row. Cell counts are checked when writing.
  RowBuilder row();

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  const std::vector<std::string>& comments() const { return comments_; }

  /// Throws ShapeError if any row has the wrong number of cells.
  void write(std::ostream& os) const;
  std::string str() const;
  void write_file(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fdcomp::harness
