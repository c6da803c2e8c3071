#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>

namespace besselid::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(where + ": cannot parse number '" + text + "'");
    return value;
}

} // namespace

Overrides Overrides::layered_under(const Overrides& top) const {
    Overrides out = *this;
    if (top.rel_tol) out.rel_tol = top.rel_tol;
    if (top.abs_tol) out.abs_tol = top.abs_tol;
    if (top.max_depth) out.max_depth = top.max_depth;
    if (top.max_evals) out.max_evals = top.max_evals;
    if (top.tol_mult) out.tol_mult = top.tol_mult;
    if (top.abs_floor) out.abs_floor = top.abs_floor;
    return out;
}

QuadSpec Overrides::apply(QuadSpec spec) const {
    if (rel_tol) spec.rel_tol = *rel_tol;
    if (abs_tol) spec.abs_tol = *abs_tol;
    if (max_depth) spec.max_depth = *max_depth;
    if (max_evals) spec.max_evals = *max_evals;
    return spec;
}

Overrides parse_config(std::istream& in, const std::string& source) {
    Overrides out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(number);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "rel_tol") out.rel_tol = parse_number<double>(value, where);
        else if (key == "abs_tol") out.abs_tol = parse_number<double>(value, where);
        else if (key == "max_depth") out.max_depth = parse_number<int>(value, where);
        else if (key == "max_evals") out.max_evals = parse_number<std::int64_t>(value, where);
        else if (key == "tol_mult") out.tol_mult = parse_number<double>(value, where);
        else if (key == "abs_floor") out.abs_floor = parse_number<double>(value, where);
        else throw ConfigError(where + ": unknown key '" + key + "'");
    }
    return out;
}

Overrides load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

Overrides resolve_config(const std::string& flag_path) {
    if (!flag_path.empty()) return load_config_file(flag_path);
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0')
        return load_config_file(env);
    return {};
}

} // namespace besselid::cli
