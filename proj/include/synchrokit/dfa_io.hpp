#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "synchrokit/automaton.hpp"

namespace synchrokit {

// Text format:
//
//   # comment
//   n k
//   names: a b d          (optional; defaults to a, b, c, ...)
//   <n images of states 1..n under letter 1>
//   ...
//   <n images of states 1..n under letter k>
//
// States are 1-based. Blank lines and lines starting with '#' are ignored.

/// Throws ParseError (with the offending line number) on malformed input.
Dfa parse_dfa(std::string_view text);
/// Canonical text form; the names line is emitted only for non-default names.
std::string serialize_dfa(const Dfa& dfa);

/// {"n": 4, "letters": [[2,3,4,1],[2,2,3,4]], "names": ["a","b"]}
nlohmann::json dfa_to_json(const Dfa& dfa);
/// Throws ParseError (line 0) on schema violations.
Dfa dfa_from_json(const nlohmann::json& json);

/// Parses either representation, detected by a leading '{'.
Dfa parse_dfa_any(std::string_view text);
Dfa read_dfa_file(const std::filesystem::path& path);

}  // namespace synchrokit
