#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cse::cli {

//! Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite
std::string format_number(double v);

//! Ordered key/value metadata written as `# key=value` lines
class Metadata
{
  public:
    Metadata& set(std::string key, std::string value);
    Metadata& set(std::string key, double value);
    Metadata& set(std::string key, std::size_t value);
    Metadata& set(std::string key, char const* value) { return set(std::move(key), std::string(value)); }

    std::vector<std::pair<std::string, std::string>> const& entries() const noexcept { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/*!
 * CSV writer for the tool's dialect: `#` metadata lines, one column header,
 * comma separated rows, `.` decimals.
 *
 * Writes to a file, or to stdout when the path is "-".
 */
class CsvWriter
{
  public:
    CsvWriter(std::filesystem::path const& path, Metadata const& meta, std::vector<std::string> columns);

    void row(std::initializer_list<double> values);
    void row(std::vector<std::string> const& cells);

    std::filesystem::path const& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream file_;
    std::ostream* out_{nullptr};
    std::size_t columns_{0};
};

}  // namespace cse::cli
