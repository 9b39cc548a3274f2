#include "maoa/kv_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "maoa/error.hpp"

namespace maoa {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

KeyValues KeyValues::parse(std::istream& in)
{
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw FormatError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(body.substr(0, eq)));
        if (key.empty())
            throw FormatError("line " + std::to_string(line_no) + ": empty key");
        if (kv.contains(key))
            throw FormatError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv.entries_.emplace_back(key, std::string(trim(body.substr(eq + 1))));
    }
    return kv;
}

KeyValues KeyValues::parse_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return parse(in);
}

void KeyValues::set(std::string key, std::string value)
{
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

bool KeyValues::contains(std::string_view key) const
{
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first == key; });
}

std::optional<std::string> KeyValues::get(std::string_view key) const
{
    for (const auto& [k, v] : entries_)
        if (k == key)
            return v;
    return std::nullopt;
}

const std::string& KeyValues::require(std::string_view key) const
{
    for (const auto& [k, v] : entries_)
        if (k == key)
            return v;
    throw FormatError("missing key '" + std::string(key) + "'");
}

void KeyValues::write(std::ostream& out) const
{
    for (const auto& [k, v] : entries_)
        out << k << " = " << v << '\n';
}

namespace {

template <class T>
std::vector<T> parse_list(std::string_view text)
{
    std::vector<T> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ','))
            ++pos;
        if (pos >= text.size())
            break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != ',')
            ++end;
        T value{};
        const auto* first = text.data() + pos;
        const auto* last = text.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw FormatError("bad number '" + std::string(first, last) + "'");
        out.push_back(value);
        pos = end;
    }
    return out;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text)
{
    return parse_list<double>(text);
}

std::vector<long long> parse_integer_list(std::string_view text)
{
    return parse_list<long long>(text);
}

}  // namespace maoa
