#pragma once

// Reproducibility plumbing for command-line reports: every report embeds a
// one-line JSON manifest recording the command, a digest of each input file,
// the seed, relevant options, and the tool version, so re-running the same
// command on the same inputs regenerates the report byte for byte.
//
// Also hosts the command-line point syntax shared by the kinematic
// subcommands: semicolon-separated exact assignments with complex literals.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/polynomial.hpp"

namespace pinch {

inline constexpr const char* kToolVersion = "pinch 0.1.0";

// FNV-1a, 64-bit, over the raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

struct RunManifest {
    std::string command;  // argv joined with single spaces
    std::vector<std::pair<std::string, std::string>> inputs;  // (path, digest)
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::map<std::string, std::string> config;  // option name -> rendered value

    void add_input(const std::string& path, std::string_view content);
    void set_seed(std::uint64_t s);

    // Compact single-line JSON with a fixed key order.
    std::string json_line() const;
};

// Parses "name=value;name=(v0,v1,...)" into exact assignments of the expected
// variables.  Values are exact complex literals: integers, rationals "2/3",
// decimals "0.25", imaginary units "3i", sums "1+2i".  A tuple assigns the
// components "name_0..name_{n-1}" when all of those are expected, otherwise
// "name1..nameN"; anything else is reported by name.  Duplicate assignments
// are rejected.  Completeness is the caller's concern.
std::map<VarId, GaussianRational> parse_point_spec(const std::string& text,
                                                   const std::vector<VarId>& expected);

// Names of expected variables the point does not assign, in expected order.
std::vector<std::string> missing_names(const std::map<VarId, GaussianRational>& point,
                                       const std::vector<VarId>& expected);

// "lo:hi:count" -> count evenly spaced exact rationals from lo to hi
// (count >= 1; count == 1 yields just lo).  lo and hi are exact rationals
// or decimal literals.
std::vector<mpq_class> parse_grid_range(const std::string& text);

}  // namespace pinch
