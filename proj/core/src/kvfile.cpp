#include "flexstor/kvfile.hpp"

#include "flexstor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace flexstor {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

} // namespace

KvFile KvFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path.string());
}

KvFile KvFile::parse_text(const std::string& text, const std::string& origin) {
    KvFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value' in " + origin, lineno);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("empty key in " + origin, lineno);
        }
        kv.entries_.emplace_back(key, value);
    }
    return kv;
}

bool KvFile::has(const std::string& key) const {
    return get(key).has_value();
}

std::optional<std::string> KvFile::get(const std::string& key) const {
    std::optional<std::string> found;
    for (const auto& [k, v] : entries_) {
        if (k == key) found = v;
    }
    return found;
}

std::optional<double> KvFile::get_double(const std::string& key) const {
    const auto raw = get(key);
    if (!raw) return std::nullopt;
    double v = 0.0;
    const char* first = raw->data();
    const char* last = first + raw->size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("key '" + key + "' in " + origin_ +
                         " is not a number: '" + *raw + "'");
    }
    return v;
}

std::optional<std::int64_t> KvFile::get_int(const std::string& key) const {
    const auto raw = get(key);
    if (!raw) return std::nullopt;
    std::int64_t v = 0;
    const char* first = raw->data();
    const char* last = first + raw->size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("key '" + key + "' in " + origin_ +
                         " is not an integer: '" + *raw + "'");
    }
    return v;
}

std::optional<std::uint64_t> KvFile::get_uint(const std::string& key) const {
    const auto raw = get(key);
    if (!raw) return std::nullopt;
    std::uint64_t v = 0;
    const char* first = raw->data();
    const char* last = first + raw->size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("key '" + key + "' in " + origin_ +
                         " is not a non-negative integer: '" + *raw + "'");
    }
    return v;
}

std::string KvFile::require(const std::string& key) const {
    const auto v = get(key);
    if (!v) {
        throw ParseError("missing required key '" + key + "' in " + origin_);
    }
    return *v;
}

double KvFile::require_double(const std::string& key) const {
    const auto v = get_double(key);
    if (!v) {
        throw ParseError("missing required key '" + key + "' in " + origin_);
    }
    return *v;
}

std::vector<std::string> KvFile::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : entries_) {
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
}

void KvFile::require_known(const std::vector<std::string>& known) const {
    for (const auto& key : keys()) {
        bool ok = false;
        for (const auto& k : known) {
            if (!k.empty() && k.back() == '.') {
                if (key.rfind(k, 0) == 0) { ok = true; break; }
            } else if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError("unknown key '" + key + "' in " + origin_);
        }
    }
}

} // namespace flexstor
