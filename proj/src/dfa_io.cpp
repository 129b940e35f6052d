#include "synchrokit/dfa_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "synchrokit/errors.hpp"

namespace synchrokit {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Dfa parse_dfa(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(start, end - start);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') lines.push_back({number, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  if (lines.empty()) throw ParseError(number, "missing header line 'n k'");

  auto header = split_ws(lines[0].text);
  if (header.size() != 2) throw ParseError(lines[0].number, "header must be 'n k'");
  std::size_t n = parse_count(header[0], lines[0].number, "state count");
  std::size_t k = parse_count(header[1], lines[0].number, "letter count");
  if (n < 1) throw ParseError(lines[0].number, "state count must be at least 1");
  if (n > kMaxStates) {
    throw ParseError(lines[0].number, "state count " + std::to_string(n) + " exceeds the limit of 64");
  }
  if (k < 1) throw ParseError(lines[0].number, "letter count must be at least 1");

  std::size_t next = 1;
  std::vector<std::string> names;
  if (next < lines.size()) {
    auto tokens = split_ws(lines[next].text);
    if (!tokens.empty() && tokens[0] == "names:") {
      if (tokens.size() - 1 != k) {
        throw ParseError(lines[next].number, "names line lists " + std::to_string(tokens.size() - 1) +
                                                 " names for " + std::to_string(k) + " letters");
      }
      std::set<std::string_view> seen;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!seen.insert(tokens[i]).second) {
          throw ParseError(lines[next].number, "duplicate letter name '" + std::string(tokens[i]) + "'");
        }
        names.emplace_back(tokens[i]);
      }
      ++next;
    }
  }

  std::vector<std::vector<State>> tables;
  for (std::size_t j = 0; j < k; ++j, ++next) {
    if (next >= lines.size()) {
      throw ParseError(number, "expected " + std::to_string(k) + " transition lines, found " + std::to_string(j));
    }
    auto tokens = split_ws(lines[next].text);
    if (tokens.size() != n) {
      throw ParseError(lines[next].number,
                       "expected " + std::to_string(n) + " entries, found " + std::to_string(tokens.size()));
    }
    std::vector<State> table;
    for (auto token : tokens) {
      std::size_t v = parse_count(token, lines[next].number, "state");
      if (v < 1 || v > n) {
        throw ParseError(lines[next].number,
                         "entry " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
      }
      table.push_back(static_cast<State>(v - 1));
    }
    tables.push_back(std::move(table));
  }
  if (next < lines.size()) throw ParseError(lines[next].number, "unexpected trailing content");
  return Dfa(n, tables, std::move(names));
}

std::string serialize_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << dfa.size() << ' ' << dfa.letter_count() << '\n';
  if (!dfa.has_default_names()) {
    out << "names:";
    for (const auto& name : dfa.names()) out << ' ' << name;
    out << '\n';
  }
  for (Letter s = 0; s < dfa.letter_count(); ++s) {
    bool first = true;
    for (State q : dfa.table(s)) {
      if (!first) out << ' ';
      out << static_cast<int>(q) + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json dfa_to_json(const Dfa& dfa) {
  nlohmann::json letters = nlohmann::json::array();
  for (Letter s = 0; s < dfa.letter_count(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (State q : dfa.table(s)) row.push_back(static_cast<int>(q) + 1);
    letters.push_back(std::move(row));
  }
  return {{"n", dfa.size()}, {"letters", std::move(letters)}, {"names", dfa.names()}};
}

Dfa dfa_from_json(const nlohmann::json& json) {
  try {
    std::size_t n = json.at("n").get<std::size_t>();
    if (n < 1 || n > kMaxStates) throw ParseError(0, "state count must be in [1, 64]");
    std::vector<std::vector<State>> tables;
    for (const auto& row : json.at("letters")) {
      std::vector<State> table;
      for (const auto& v : row) {
        auto q = v.get<std::size_t>();
        if (q < 1 || q > n) {
          throw ParseError(0, "entry " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
        }
        table.push_back(static_cast<State>(q - 1));
      }
      tables.push_back(std::move(table));
    }
    std::vector<std::string> names;
    if (json.contains("names")) names = json.at("names").get<std::vector<std::string>>();
    return Dfa(n, tables, std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid automaton JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Dfa parse_dfa_any(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json json;
    try {
      json = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    return dfa_from_json(json);
  }
  return parse_dfa(text);
}

Dfa read_dfa_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dfa_any(buffer.str());
}

}  // namespace synchrokit
