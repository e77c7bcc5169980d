#pragma once

// Reading and writing the delta-net/1 JSON documents (networks and
// findings). Unknown fields are rejected; errors carry the offending
// field path or line.

#include <filesystem>
#include <string>
#include <string_view>

#include "deltacf/network.hpp"

namespace deltacf {

inline constexpr std::string_view kFormatTag = "delta-net/1";

Network parse_network(std::string_view text);
std::string serialize_network(const Network& net);

Findings parse_findings(std::string_view text);
std::string serialize_findings(const Findings& findings);

/// Serialized form of a single rule (as emitted by the elicitation command).
std::string serialize_rule(const Rule& rule);

std::string read_text_file(const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);
Findings load_findings(const std::filesystem::path& path);

}  // namespace deltacf
