#include "maoa/csv.hpp"

#include <charconv>
#include <istream>
#include <limits>

#include "maoa/error.hpp"
#include "maoa/kv_config.hpp"

namespace maoa {

int CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos)
            return out;
        start = comma + 1;
    }
}

}  // namespace

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto cells = split(line);
        if (table.header.empty()) {
            for (auto c : cells)
                table.header.emplace_back(c);
            continue;
        }
        if (cells.size() != table.header.size())
            throw ValidationError("CSV line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(table.header.size()));
        std::vector<double> row;
        for (auto c : cells) {
            double v = std::numeric_limits<double>::quiet_NaN();
            if (!c.empty()) {
                double parsed = 0.0;
                auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), parsed);
                if (ec == std::errc() && ptr == c.data() + c.size())
                    v = parsed;
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty() || table.rows.empty())
        throw ValidationError("CSV has no data rows");
    return table;
}

}  // namespace maoa
