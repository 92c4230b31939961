#pragma once

#include "crnbound/kinetics.hpp"
#include "crnbound/network.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crn {

// Plain-text network format (.crn), one statement per line:
//
//   line      := reaction | comment | blank
//   reaction  := complex arrow complex [ '|' rate-spec ]
//   complex   := '0' | term ('+' term)*
//   term      := [integer] ident
//   arrow     := '->' | '<->'
//   rate-spec := 'k=' decimal
//              | 'k=' decimal ',' 'krev=' decimal
//              | 'k~[' decimal ',' decimal ']' [',' 'krev~[' decimal ',' decimal ']']
//   comment   := '#' any
//
// A comment of the form "# name: <text>" sets the document name.

struct Term {
  std::int64_t coefficient = 1;
  std::string species;
};

enum class Arrow { Forward, Reversible };

struct RateAnnotation {
  RateSpec forward;
  std::optional<RateSpec> reverse;
};

struct Statement {
  std::vector<Term> source;  // empty for the zero complex
  Arrow arrow = Arrow::Forward;
  std::vector<Term> product;
  std::optional<RateAnnotation> rate;
  std::size_t line = 0;
};

struct NetworkDocument {
  std::vector<Statement> statements;
  std::string name;
  std::vector<std::string> comments;
};

enum class ParseErrorKind { Syntax, NegativeCoefficient, EmptyDocument, BadRate };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }
  /// "<file>:<line>:<col>: <message>"
  std::string format(std::string_view file) const;

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

NetworkDocument parse(std::string_view text);

/// Builds the network (first-appearance species order, deduplicated
/// complexes) and per-reaction kinetics. Omitted rates default to k=1.
/// Throws ValidationError when the resulting network is invalid.
std::pair<ReactionNetwork, Kinetics> lower(const NetworkDocument& doc);

std::pair<ReactionNetwork, Kinetics> parse_network(std::string_view text);

/// Text that parses back to the same network and rates.
std::string render(const ReactionNetwork& net, const Kinetics& kin);

std::string render_complex(const ReactionNetwork& net, const Complex& y);

}  // namespace crn
