#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <iostream>

#include "cse/errors.hpp"

namespace cse::cli {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw Error("number formatting failed");
    return std::string(buf, ptr);
}

Metadata& Metadata::set(std::string key, std::string value)
{
    for (auto& [k, v] : entries_)
    {
        if (k == key)
        {
            v = std::move(value);
            return *this;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Metadata& Metadata::set(std::string key, double value)
{
    return set(std::move(key), format_number(value));
}

Metadata& Metadata::set(std::string key, std::size_t value)
{
    return set(std::move(key), std::to_string(value));
}

CsvWriter::CsvWriter(std::filesystem::path const& path, Metadata const& meta, std::vector<std::string> columns)
    : path_(path), columns_(columns.size())
{
    if (path == "-")
    {
        out_ = &std::cout;
    }
    else
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        file_.open(path);
        if (!file_)
            throw ConfigError("output", "cannot write '" + path.string() + "'");
        out_ = &file_;
    }
    for (auto const& [k, v] : meta.entries())
        *out_ << "# " << k << '=' << v << '\n';
    row(columns);
}

void CsvWriter::row(std::initializer_list<double> values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format_number(v));
    row(cells);
}

void CsvWriter::row(std::vector<std::string> const& cells)
{
    if (cells.size() != columns_)
        throw Error("csv row has " + std::to_string(cells.size()) + " cells, expected "
                    + std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i)
            *out_ << ',';
        *out_ << cells[i];
    }
    *out_ << '\n';
    if (!*out_)
        throw Error("write failed for '" + path_.string() + "'");
}

}  // namespace cse::cli
