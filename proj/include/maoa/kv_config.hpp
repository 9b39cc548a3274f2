#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maoa {

/// Flat `key = value` text (UTF-8). '#' starts a comment line; blank lines
/// are ignored. Insertion order is preserved for writing.
class KeyValues
{
  public:
    static KeyValues parse(std::istream& in);
    static KeyValues parse_file(const std::filesystem::path& path);

    void set(std::string key, std::string value);
    bool contains(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;

    /// Throws FormatError when absent.
    const std::string& require(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    void write(std::ostream& out) const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Whitespace-separated numbers; throws FormatError on a bad token.
std::vector<double> parse_number_list(std::string_view text);
std::vector<long long> parse_integer_list(std::string_view text);

std::string_view trim(std::string_view s);

}  // namespace maoa
