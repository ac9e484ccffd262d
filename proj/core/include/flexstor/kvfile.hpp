#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace flexstor {

/// Flat `key = value` text file. One pair per line, `#` starts a comment
/// line, blank lines ignored. Later duplicates override earlier ones so a
/// config can be extended by appending.
class KvFile {
public:
    static KvFile parse_file(const std::filesystem::path& path);
    static KvFile parse_text(const std::string& text,
                             const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<std::int64_t> get_int(const std::string& key) const;
    std::optional<std::uint64_t> get_uint(const std::string& key) const;

    std::string require(const std::string& key) const;
    double require_double(const std::string& key) const;

    /// All keys in file order (deduplicated, last occurrence wins).
    std::vector<std::string> keys() const;

    /// Rejects keys outside `known` (typo guard); `known` entries ending in
    /// '.' match as prefixes.
    void require_known(const std::vector<std::string>& known) const;

    const std::string& origin() const { return origin_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::string origin_;
};

} // namespace flexstor
