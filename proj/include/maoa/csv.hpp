#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maoa {

/// Numeric table with a header row. Empty cells read as NaN; columns that
/// are not numeric keep NaN everywhere.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column, or -1.
    int column(const std::string& name) const;
};

/// Throws ValidationError on an empty input or ragged rows.
CsvTable read_csv(std::istream& in);

}  // namespace maoa
