#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synchrokit/dfa_io.hpp"
#include "synchrokit/errors.hpp"

using namespace synchrokit;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_dfa(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a parse error for: " << text);
  return 0;
}

}  // namespace

TEST_CASE("parse the C4 text") {
  const Dfa d = parse_dfa("4 2\n2 3 4 1\n2 2 3 4\n");
  CHECK(d == Dfa(4, {{1, 2, 3, 0}, {1, 1, 2, 3}}));
  CHECK(d == oracle::load("c4.dfa"));
}

TEST_CASE("comments, blank lines and names") {
  const Dfa d = parse_dfa("# header\n\n3 2\n  # more\nnames: x y\n1 2 3\n\n2 2 3\n");
  CHECK(d.names() == std::vector<std::string>{"x", "y"});
  CHECK(d.next(0, 1) == 1);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("2 1\n3 1\n") == 2);
  CHECK(error_line("x y\n") == 1);
  CHECK(error_line("65 1\n") == 1);
  CHECK(error_line("0 1\n") == 1);
  CHECK(error_line("2 0\n") == 1);
  CHECK(error_line("2 1\n1\n") == 2);
  CHECK(error_line("2 2\nnames: a a\n1 2\n1 2\n") == 2);
  CHECK(error_line("2 2\n1 2\n") == 3);
  CHECK(error_line("2 1\n1 2\n1 2\n") == 3);
  CHECK(error_line("2 1\n1 0\n") == 2);
  CHECK(error_line("") == 1);
}

TEST_CASE("text and JSON round trips") {
  const std::string canonical = "4 2\n2 3 4 1\n2 2 3 4\n";
  CHECK(serialize_dfa(parse_dfa(canonical)) == canonical);
  const std::string named = "5 3\nnames: e a b\n1 2 3 4 5\n2 3 4 1 5\n2 2 3 4 5\n";
  CHECK(serialize_dfa(parse_dfa(named)) == named);

  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    const Dfa d = oracle::random_dfa(rng, 1 + rng() % 12, 1 + rng() % 4);
    CHECK(parse_dfa(serialize_dfa(d)) == d);
    CHECK(dfa_from_json(dfa_to_json(d)) == d);
    CHECK(parse_dfa_any(dfa_to_json(d).dump()) == d);
  }
}

TEST_CASE("JSON schema") {
  const Dfa e5 = oracle::load("e5.dfa");
  const auto j = dfa_to_json(e5);
  CHECK(j["n"] == 5);
  CHECK(j["letters"][1] == nlohmann::json::array({2, 3, 4, 1, 5}));
  CHECK(j["names"] == nlohmann::json::array({"e", "a", "b"}));
  CHECK_THROWS_AS(dfa_from_json(nlohmann::json{{"n", 2}, {"letters", {{1, 3}}}}), ParseError);
  CHECK_THROWS_AS(dfa_from_json(nlohmann::json{{"letters", {{1, 2}}}}), ParseError);
  CHECK_THROWS_AS(parse_dfa_any("{not json"), ParseError);
}

TEST_CASE("missing file") { CHECK_THROWS(read_dfa_file("/nonexistent/file.dfa")); }
