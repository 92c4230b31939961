#include "crnbound/graph.hpp"
#include "crnbound/parser.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace crn;

namespace {

ParseErrorKind error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a ParseError for: " << text);
  return ParseErrorKind::Syntax;
}

// Reactions as (source vector, product vector) keyed by species name, so
// that networks with different species orders compare equal.
using NamedComplex = std::map<std::string, std::int64_t>;
std::multiset<std::pair<NamedComplex, NamedComplex>> reaction_multiset(const ReactionNetwork& net) {
  const auto named = [&](const Complex& y) {
    NamedComplex m;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != 0) m[net.species()[i].name] = y[i];
    }
    return m;
  };
  std::multiset<std::pair<NamedComplex, NamedComplex>> out;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) out.insert({named(net.source(k)), named(net.product(k))});
  return out;
}

}  // namespace

TEST_CASE("forward reaction with a rate") {
  auto [net, kin] = parse_network("2 S1 + S2 -> S3 | k=1.0");
  REQUIRE(net.num_reactions() == 1);
  CHECK(net.source(0).coefficients == IntVector{2, 1, 0});
  CHECK(net.product(0).coefficients == IntVector{0, 0, 1});
  CHECK(kin.value(0, 0.0) == 1.0);
}

TEST_CASE("reversible arrow expands to two reactions with default rates") {
  auto [net, kin] = parse_network("A <-> B");
  CHECK(net.num_complexes() == 2);
  REQUIRE(net.num_reactions() == 2);
  CHECK(net.reactions()[0] == Reaction{0, 1});
  CHECK(net.reactions()[1] == Reaction{1, 0});
  CHECK(kin.all_constant());
  CHECK(kin.value(0, 3.0) == 1.0);
  CHECK(kin.value(1, 3.0) == 1.0);
  CHECK(is_reversible(net));
}

TEST_CASE("negative coefficient is rejected") {
  CHECK(error_kind("A -> -1 B") == ParseErrorKind::NegativeCoefficient);
}

TEST_CASE("empty or comment-only documents are rejected") {
  CHECK(error_kind("") == ParseErrorKind::EmptyDocument);
  CHECK(error_kind("# only a comment\n\n") == ParseErrorKind::EmptyDocument);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse("A -> B\nA => C\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::Syntax);
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
    const auto msg = e.format("net.crn");
    CHECK(msg.rfind("net.crn:2:", 0) == 0);
  }
  CHECK(error_kind("A + -> B") == ParseErrorKind::Syntax);
  CHECK(error_kind("A -> B |") == ParseErrorKind::Syntax);
  CHECK(error_kind("A -> B C") == ParseErrorKind::Syntax);
}

TEST_CASE("bad rate annotations") {
  CHECK(error_kind("A -> B | k=0") == ParseErrorKind::BadRate);
  CHECK(error_kind("A -> B | k=-1") == ParseErrorKind::BadRate);
  CHECK(error_kind("A -> B | k~[2,1]") == ParseErrorKind::BadRate);
  CHECK(error_kind("A -> B | k~[0,1]") == ParseErrorKind::BadRate);
  // krev only makes sense on a reversible statement
  CHECK(error_kind("A -> B | k=1, krev=2") == ParseErrorKind::BadRate);
}

TEST_CASE("rates on a reversible statement") {
  auto [net, kin] = parse_network("A <-> B | k=2, krev=0.5");
  CHECK(kin.value(0, 0) == 2.0);
  CHECK(kin.value(1, 0) == 0.5);

  auto [bnet, bkin] = parse_network("A <-> B | k~[0.5,2], krev~[1,3]");
  CHECK_FALSE(bkin.all_constant());
  CHECK(bkin.lower(0) == 0.5);
  CHECK(bkin.upper(0) == 2.0);
  CHECK(bkin.lower(1) == 1.0);
  CHECK(bkin.upper(1) == 3.0);
  for (double t = 0; t < 30; t += 0.37) {
    CHECK(bkin.value(0, t) >= 0.5);
    CHECK(bkin.value(0, t) <= 2.0);
  }
  CHECK(bkin.eta() < 1.0 / 3.0);
  CHECK(bkin.eta() > 0.3333);
}

TEST_CASE("species follow first-appearance order") {
  auto [net, kin] = parse_network("B -> A\nA -> B");
  CHECK(net.species()[0].name == "B");
  CHECK(net.species()[1].name == "A");
}

TEST_CASE("zero complex is the zero vector") {
  auto [net, kin] = parse_network("0 -> A\nA -> 0");
  CHECK(net.source(0).coefficients == IntVector{0});
  CHECK(net.product(0).coefficients == IntVector{1});
}

TEST_CASE("complexes are deduplicated across statements") {
  auto [net, kin] = parse_network("A + B -> C\nC -> A + B\nB + A -> 2 C");
  CHECK(net.num_complexes() == 3);
  CHECK(net.num_reactions() == 3);
  CHECK(net.reactions()[2].source == net.reactions()[0].source);
}

TEST_CASE("repeated species in one complex accumulate") {
  auto [net, kin] = parse_network("A + A -> B\nB -> 2 A");
  CHECK(net.num_complexes() == 2);
}

TEST_CASE("name comment sets the document name") {
  const auto doc = parse("# name: toy\nA <-> B # trailing\n");
  CHECK(doc.name == "toy");
  CHECK(doc.statements.size() == 1);
  CHECK(doc.statements[0].arrow == Arrow::Reversible);
}

TEST_CASE("lower propagates validation errors") {
  CHECK_THROWS_AS(parse_network("A -> A"), ValidationError);
}

TEST_CASE("render round-trips to an identical network") {
  const char* cases[] = {
      "2 S1 + S2 -> S3 | k=1.5",
      "A <-> B",
      "0 -> A\nA <-> 2 B | k=3, krev=0.25\nB + C -> 0\n0 -> C | k~[0.5,2]",
      "X + 2 Y -> 3 Z | k=0.125\n3 Z -> X + 2 Y\nZ <-> 0 | k~[1,4], krev~[0.1,0.2]",
  };
  for (const char* text : cases) {
    auto [net, kin] = parse_network(text);
    const auto rendered = render(net, kin);
    auto [net2, kin2] = parse_network(rendered);
    CHECK(reaction_multiset(net) == reaction_multiset(net2));
    CHECK(net.num_complexes() == net2.num_complexes());
    REQUIRE(kin.size() == kin2.size());
    for (std::size_t k = 0; k < kin.size(); ++k) {
      CHECK(kin.lower(k) == kin2.lower(k));
      CHECK(kin.upper(k) == kin2.upper(k));
      CHECK(describe(kin[k]) == describe(kin2[k]));
    }
    // second render is a fixed point
    CHECK(render(net2, kin2) == rendered);
  }
}

TEST_CASE("every reversible statement yields a reversible network") {
  const char* cases[] = {"A <-> B", "A + B <-> C\nC <-> 2 D", "0 <-> X\nX + Y <-> 2 Y"};
  for (const char* text : cases) {
    auto [net, kin] = parse_network(text);
    CHECK(is_reversible(net));
    CHECK(is_weakly_reversible(net).weakly_reversible);
  }
}

TEST_CASE("render_complex spelling") {
  auto [net, kin] = parse_network("2 S1 + S2 -> S3\nS3 -> 0");
  CHECK(render_complex(net, net.source(0)) == "2 S1 + S2");
  CHECK(render_complex(net, net.product(1)) == "0");
}
