#include "pinch/manifest.hpp"

#include <cctype>
#include <stdexcept>

#include "json.hpp"
#include "pinch/parse.hpp"

namespace pinch {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(std::string_view bytes) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[k] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

void RunManifest::add_input(const std::string& path, std::string_view content) {
    inputs.emplace_back(path, digest_hex(content));
}

void RunManifest::set_seed(std::uint64_t s) {
    seed = s;
    has_seed = true;
}

std::string RunManifest::json_line() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = kToolVersion;
    if (has_seed) j["seed"] = seed;
    nlohmann::ordered_json ins = nlohmann::ordered_json::array();
    for (auto& [path, digest] : inputs) ins.push_back({{"path", path}, {"digest", digest}});
    j["inputs"] = std::move(ins);
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (auto& [k, v] : config) cfg[k] = v;
    j["config"] = std::move(cfg);
    return j.dump();
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Split on the separator at paren depth zero.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '(') ++depth;
        else if (s[k] == ')') --depth;
        else if (s[k] == sep && depth == 0) {
            parts.emplace_back(s.substr(start, k - start));
            start = k + 1;
        }
    }
    parts.emplace_back(s.substr(start));
    return parts;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

std::map<VarId, GaussianRational> parse_point_spec(const std::string& text,
                                                   const std::vector<VarId>& expected) {
    std::map<std::string, VarId> byname;
    for (VarId v : expected) byname[var_name(v)] = v;

    std::map<VarId, GaussianRational> point;
    auto bind = [&](const std::string& name, const GaussianRational& val) {
        auto it = byname.find(name);
        if (it == byname.end()) {
            std::string known;
            for (VarId v : expected) {
                if (!known.empty()) known += ", ";
                known += var_name(v);
            }
            throw std::invalid_argument("unknown variable \"" + name +
                                        "\" in point; expected: " + known);
        }
        if (!point.emplace(it->second, val).second)
            throw std::invalid_argument("variable \"" + name + "\" assigned twice");
    };

    for (const std::string& raw : split_top(text, ';')) {
        std::string seg = trim(raw);
        if (seg.empty()) continue;
        std::size_t eq = seg.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected name=value in point segment \"" + seg + "\"");
        std::string name = trim(seg.substr(0, eq));
        std::string value = trim(seg.substr(eq + 1));
        if (!is_identifier(name))
            throw std::invalid_argument("malformed variable name \"" + name + "\" in point");
        if (value.size() >= 2 && value.front() == '(' && value.back() == ')' &&
            split_top(value.substr(1, value.size() - 2), ',').size() > 1) {
            std::vector<std::string> comps = split_top(value.substr(1, value.size() - 2), ',');
            // Prefer zero-based "_mu" component names, the layout convention
            // for momenta; fall back to one-based suffixes, the convention
            // for mass lists.
            auto all_known = [&](const std::string& stem, int base) {
                for (std::size_t k = 0; k < comps.size(); ++k)
                    if (!byname.count(stem + std::to_string(base + static_cast<int>(k))))
                        return false;
                return true;
            };
            std::string stem;
            int base = 0;
            if (all_known(name + "_", 0)) {
                stem = name + "_";
            } else if (all_known(name, 1)) {
                stem = name;
                base = 1;
            } else {
                throw std::invalid_argument(
                    "cannot expand tuple \"" + name + "\": neither " + name + "_0.." + name + "_" +
                    std::to_string(comps.size() - 1) + " nor " + name + "1.." + name +
                    std::to_string(comps.size()) + " are all expected variables");
            }
            for (std::size_t k = 0; k < comps.size(); ++k)
                bind(stem + std::to_string(base + static_cast<int>(k)),
                     parse_complex_literal(trim(comps[k])));
        } else {
            bind(name, parse_complex_literal(value));
        }
    }
    return point;
}

std::vector<std::string> missing_names(const std::map<VarId, GaussianRational>& point,
                                       const std::vector<VarId>& expected) {
    std::vector<std::string> out;
    for (VarId v : expected)
        if (!point.count(v)) out.push_back(var_name(v));
    return out;
}

std::vector<mpq_class> parse_grid_range(const std::string& text) {
    std::vector<std::string> parts = split_top(text, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("grid range must be lo:hi:count, got \"" + text + "\"");
    auto real_of = [&](const std::string& s) {
        GaussianRational g = parse_complex_literal(trim(s));
        if (!g.is_real())
            throw std::invalid_argument("grid endpoints must be real, got \"" + s + "\"");
        return g.re();
    };
    mpq_class lo = real_of(parts[0]);
    mpq_class hi = real_of(parts[1]);
    std::size_t count = 0;
    try {
        std::size_t used = 0;
        count = std::stoul(trim(parts[2]), &used);
        if (used != trim(parts[2]).size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("grid count must be a positive integer, got \"" + parts[2] +
                                    "\"");
    }
    if (count == 0)
        throw std::invalid_argument("grid count must be a positive integer, got \"" + parts[2] +
                                    "\"");
    std::vector<mpq_class> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    mpq_class step = (hi - lo) / mpq_class(static_cast<unsigned long>(count - 1));
    for (std::size_t j = 0; j < count; ++j) {
        mpq_class v = lo + step * mpq_class(static_cast<unsigned long>(j));
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

}  // namespace pinch
