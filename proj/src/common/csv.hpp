#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qf {

// Shortest representation that parses back to the same double. Independent
// of the C locale; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double value);

/// Comma-separated, '.' decimal, LF line endings, one header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  std::size_t columns() const { return columns_; }

  // Throws InvalidArgument if the row width does not match the header.
  void add_row(std::span<const double> values);

  const std::string& str() const { return buffer_; }

  // Writes the buffer to `path`, creating parent directories.
  void write(const std::string& path) const;

 private:
  std::size_t columns_;
  std::string buffer_;
};

void write_text_file(const std::string& path, std::string_view contents);

}  // namespace qf
