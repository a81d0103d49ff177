#include <doctest.h>

#include <algorithm>

#include "pgm/errors.hpp"
#include "pgm/modelfmt.hpp"
#include "pgm/monty.hpp"
#include "support/random_network.hpp"

using namespace pgm;
using modelfmt::parse_model;
using modelfmt::ParseResult;
using modelfmt::serialize;

namespace {

bool has_diag(const ParseResult& result, const std::string& needle, int line = 0) {
  return std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                     [&](const modelfmt::Diagnostic& d) {
                       if (line != 0 && d.line != line) return false;
                       return d.message.find(needle) != std::string::npos;
                     });
}

constexpr const char* kCoin = R"(# a biased coin and a noisy read of it
network coin
var C chance { heads tails }
var Read chance { heads tails } <- C
cpt C : heads=2/3, tails=1/3
cpt Read | C=heads : heads=0.9, tails=0.1
cpt Read | C=tails : heads=1/10, tails=9/10
)";

}  // namespace

TEST_CASE("a small document parses to the expected network") {
  const ParseResult result = parse_model(kCoin);
  REQUIRE_MESSAGE(result.ok(), result.diagnostics_to_string());
  const Network& net = *result.network;
  CHECK(net.name == "coin");
  REQUIRE(net.variables.size() == 2);
  CHECK(net.variables[0].name == "C");
  CHECK(net.variables[1].parents == std::vector<std::string>{"C"});
  const Cpt* read = net.find_cpt("Read");
  REQUIRE(read != nullptr);
  CHECK(read->find_row({"heads"})->values[0] == Rational(9, 10));
  CHECK(read->find_row({"tails"})->values[0] == Rational(1, 10));
}

TEST_CASE("a host-table row parses to the exact rationals") {
  const std::string doc =
      "network h\n"
      "var X chance { A B C }\n"
      "var G1 chance { A B C }\n"
      "var H decision { A B C } <- X G1\n"
      "cpt X : A=1/3, B=1/3, C=1/3\n"
      "cpt G1 : A=1/3, B=1/3, C=1/3\n"
      "cpt H | X=A, G1=A : A=0, B=1/2, C=1/2\n"
      "cpt H | X=A, G1=B : C=1\n"
      "cpt H | X=A, G1=C : B=1\n"
      "cpt H | X=B, G1=A : C=1\n"
      "cpt H | X=B, G1=B : A=1/2, C=1/2\n"
      "cpt H | X=B, G1=C : A=1\n"
      "cpt H | X=C, G1=A : B=1\n"
      "cpt H | X=C, G1=B : A=1\n"
      "cpt H | X=C, G1=C : A=1/2, B=1/2\n";
  const ParseResult result = parse_model(doc);
  REQUIRE_MESSAGE(result.ok(), result.diagnostics_to_string());
  const Cpt* host = result.network->find_cpt("H");
  const CptRow* row = host->find_row({"A", "A"});
  CHECK(row->values == std::vector<Rational>{{0}, {1, 2}, {1, 2}});
  // Unlisted outcomes defaulted to zero.
  CHECK(host->find_row({"A", "B"})->values ==
        std::vector<Rational>{{0}, {0}, {1}});
  // Same table as the builder's.
  const Network built = monty::build_monty({});
  for (const CptRow& built_row : built.find_cpt("H")->rows) {
    CHECK(host->find_row(built_row.key)->values == built_row.values);
  }
}

TEST_CASE("decimals parse as exact base-10, not thirds or binary floats") {
  const std::string doc =
      "network d\n"
      "var V chance { a b }\n"
      "cpt V : a=0.1, b=0.9\n";
  const ParseResult result = parse_model(doc);
  REQUIRE(result.ok());
  const CptRow* row = result.network->find_cpt("V")->find_row({});
  CHECK(row->values[0] == Rational(1, 10));
  CHECK(row->values[1] == Rational(9, 10));

  // ".33" means 33/100 here; a document wanting a third must say 1/3,
  // so this row does not sum to 1.
  const std::string third =
      "network d\nvar V chance { a b c }\ncpt V : a=.33, b=.33, c=.34\n";
  CHECK(parse_model(third).ok());
  const std::string bad =
      "network d\nvar V chance { a b c }\ncpt V : a=.33, b=.33, c=1/3\n";
  const ParseResult off = parse_model(bad);
  CHECK_FALSE(off.ok());
  CHECK(has_diag(off, "row sum"));
}

TEST_CASE("row-sum violations point at the offending line") {
  const std::string doc =
      "network bad\n"
      "var V chance { A B C }\n"
      "cpt V : A=1/2, B=1/2, C=1/2\n";
  const ParseResult result = parse_model(doc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_diag(result, "row sum 3/2 != 1", 3));
}

TEST_CASE("every independent error is reported, not just the first") {
  const std::string doc =
      "network broken\n"
      "var V chance { a b }\n"
      "var W chance { a b } <- Q\n"      // line 3: unknown parent
      "cpt V : a=1/2, b=1/3\n"           // line 4: row sum 5/6
      "cpt W | V=a : a=1, b=0\n"         // line 5: V is not a parent of W
      "cpt Z : a=1\n";                   // line 6: unknown variable
  const ParseResult result = parse_model(doc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_diag(result, "unknown parent 'Q'"));
  CHECK(has_diag(result, "row sum 5/6 != 1", 4));
  CHECK(has_diag(result, "not a parent of W", 5));
  CHECK(has_diag(result, "unknown variable 'Z'", 6));
}

TEST_CASE("lexical and syntax errors carry line and column") {
  const std::string doc =
      "network ok\n"
      "var V chance { a b\n"          // line 2: missing '}'
      "cpt V : a=1/0\n"               // line 3: zero denominator
      "what V\n";                     // line 4: unknown statement
  const ParseResult result = parse_model(doc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_diag(result, "expected", 2));
  CHECK(has_diag(result, "zero denominator", 3));
  CHECK(has_diag(result, "expected 'network', 'var' or 'cpt'", 4));
  for (const auto& d : result.diagnostics) {
    CHECK(d.line > 0);
    CHECK(d.column > 0);
  }
}

TEST_CASE("header rules") {
  CHECK(has_diag(parse_model("var V chance { a }\ncpt V : a=1\n"),
                 "missing 'network"));
  CHECK(has_diag(parse_model("network a\nnetwork b\nvar V chance { a }\ncpt V : a=1\n"),
                 "duplicate 'network'"));
  // Empty documents and pure comments are fine but carry no network.
  const ParseResult empty = parse_model("# nothing here\n");
  CHECK(empty.ok());
  CHECK(empty.network.has_value());
  CHECK(empty.network->variables.empty());
}

TEST_CASE("scan_document exposes statements with their spans") {
  std::vector<modelfmt::Diagnostic> diags;
  const modelfmt::ModelDocument doc = modelfmt::scan_document(kCoin, diags);
  CHECK(diags.empty());
  CHECK(doc.name == "coin");
  REQUIRE(doc.vars.size() == 2);
  CHECK(doc.vars[0].name == "C");
  CHECK(doc.vars[0].line == 3);  // first line is a comment
  CHECK(doc.vars[1].parents == std::vector<std::string>{"C"});
  REQUIRE(doc.rows.size() == 3);
  CHECK(doc.rows[1].variable == "Read");
  CHECK(doc.rows[1].line == 6);
  CHECK(doc.rows[1].parent_bindings.front() ==
        std::pair<std::string, std::string>{"C", "heads"});
  CHECK(doc.rows[1].entries.front().second == Rational(9, 10));
}

TEST_CASE("serialization is canonical and round-trips the builders") {
  for (int n : {3, 4, 5}) {
    for (const monty::HostPolicy policy :
         {monty::HostPolicy::Neutral, monty::HostPolicy::Good, monty::HostPolicy::Bad}) {
      monty::MontyConfig cfg;
      cfg.n_doors = n;
      cfg.switch_weight = Rational(2, 5);
      cfg.policy = policy;
      const Network net = monty::build_monty(cfg);
      const std::string text = serialize(net);

      const ParseResult parsed = parse_model(text);
      REQUIRE_MESSAGE(parsed.ok(), parsed.diagnostics_to_string());
      CHECK(semantically_equal(*parsed.network, net));
      CHECK(serialize(*parsed.network) == text);
    }
  }
}

TEST_CASE("the serialized three-door network pins the host table") {
  const std::string text = serialize(monty::build_monty({}));
  int host_rows = 0;
  std::size_t at = 0;
  while ((at = text.find("cpt H", at)) != std::string::npos) {
    ++host_rows;
    at += 5;
  }
  CHECK(host_rows == 9);
  CHECK(text.find("cpt H | X=A, G1=A : A=0, B=1/2, C=1/2") != std::string::npos);
  CHECK(text.find("cpt H | X=A, G1=B : A=0, B=0, C=1") != std::string::npos);
  CHECK(text.find("var H decision { A B C } <- X G1") != std::string::npos);
}

TEST_CASE("structurally equal networks serialize to identical bytes") {
  Network a = monty::build_monty({});
  Network b = monty::build_monty({});
  // Scramble b's row order; canonical output must not care.
  for (Cpt& cpt : b.cpts) std::reverse(cpt.rows.begin(), cpt.rows.end());
  CHECK(serialize(a) == serialize(b));
}

TEST_CASE("property: parse after serialize is the identity on random networks") {
  sim::Xoshiro256pp rng(31337);
  for (int round = 0; round < 200; ++round) {
    const Network net = testsupport::random_network(rng);
    REQUIRE(validate_network(net).ok());
    const std::string text = serialize(net);
    const ParseResult parsed = parse_model(text);
    REQUIRE_MESSAGE(parsed.ok(), parsed.diagnostics_to_string());
    CHECK(semantically_equal(*parsed.network, net));
    CHECK(serialize(*parsed.network) == text);
  }
}
