#include "crnbound/parser.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

namespace crn {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

std::string ParseError::format(std::string_view file) const {
  std::ostringstream os;
  os << file << ":" << line_ << ":" << column_ << ": " << detail_;
  return os.str();
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  Statement statement() {
    Statement st;
    st.line = line_;
    st.source = complex();
    st.arrow = arrow();
    st.product = complex();
    skip_ws();
    if (peek() == '|') {
      ++pos_;
      st.rate = rate_spec(st.arrow);
    }
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected '" + std::string(1, peek()) + "'");
    return st;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseErrorKind kind = ParseErrorKind::Syntax) const {
    throw ParseError(kind, line_, pos_ + 1, msg);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool consume(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!consume(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::vector<Term> complex() {
    skip_ws();
    if (peek() == '-' && digit(peek(1))) fail("negative stoichiometric coefficient", ParseErrorKind::NegativeCoefficient);
    // Lone '0' is the zero complex.
    if (peek() == '0') {
      std::size_t j = pos_ + 1;
      while (j < s_.size() && digit(s_[j])) ++j;
      std::size_t k = j;
      while (k < s_.size() && (s_[k] == ' ' || s_[k] == '\t')) ++k;
      if (j == pos_ + 1 && (k >= s_.size() || !ident_start(s_[k]))) {
        pos_ = j;
        return {};
      }
    }
    std::vector<Term> terms;
    terms.push_back(term());
    while (true) {
      skip_ws();
      if (peek() != '+') break;
      ++pos_;
      terms.push_back(term());
    }
    return terms;
  }

  Term term() {
    skip_ws();
    if (peek() == '-') {
      if (digit(peek(1))) fail("negative stoichiometric coefficient", ParseErrorKind::NegativeCoefficient);
      fail("expected a species term");
    }
    Term t;
    if (digit(peek())) {
      const std::size_t start = pos_;
      while (digit(peek())) ++pos_;
      const auto digits = s_.substr(start, pos_ - start);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.coefficient);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        pos_ = start;
        fail("coefficient out of range");
      }
      if (t.coefficient == 0) {
        pos_ = start;
        fail("zero coefficient in a term (write the zero complex as a lone '0')");
      }
      skip_ws();
    }
    if (!ident_start(peek())) fail("expected a species name");
    const std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    t.species = std::string(s_.substr(start, pos_ - start));
    return t;
  }

  Arrow arrow() {
    skip_ws();
    if (consume("<->")) return Arrow::Reversible;
    if (consume("->")) return Arrow::Forward;
    fail("expected '->' or '<->'");
  }

  double decimal() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && (digit(peek()) || peek() == '.' || peek() == 'e' || peek() == 'E' || peek() == '+' ||
                         peek() == '-')) {
      ++pos_;
    }
    const std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty()) fail("expected a number");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      pos_ = start;
      fail("malformed number '" + tok + "'");
    }
    return v;
  }

  RateSpec constant_rate() {
    const std::size_t at = pos_;
    const double v = decimal();
    if (!(v > 0) || !std::isfinite(v)) {
      pos_ = at;
      fail("rate constant must be positive", ParseErrorKind::BadRate);
    }
    return ConstantRate{v};
  }

  RateSpec band() {
    expect("[");
    const std::size_t at = pos_;
    const double a = decimal();
    expect(",");
    const double b = decimal();
    expect("]");
    if (!(a > 0) || !(a <= b) || !std::isfinite(b)) {
      pos_ = at;
      fail("rate band [a,b] requires 0 < a <= b", ParseErrorKind::BadRate);
    }
    return BandedRate{a, b, Profile{ProfileKind::Sinusoid}};
  }

  RateAnnotation rate_spec(Arrow arrow) {
    RateAnnotation r;
    skip_ws();
    if (consume("k~")) {
      r.forward = band();
      if (consume(",")) {
        if (!consume("krev~")) fail("expected 'krev~['");
        r.reverse = band();
      }
    } else if (consume("k=")) {
      r.forward = constant_rate();
      if (consume(",")) {
        if (!consume("krev=")) fail("expected 'krev='");
        r.reverse = constant_rate();
      }
    } else {
      fail("expected 'k=' or 'k~['");
    }
    if (r.reverse && arrow == Arrow::Forward) fail("'krev' given for an irreversible reaction", ParseErrorKind::BadRate);
    return r;
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

NetworkDocument parse(std::string_view text) {
  NetworkDocument doc;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    const std::string t = trim(line);
    if (!t.empty()) {
      if (t[0] == '#') {
        std::string body = trim(std::string_view(t).substr(1));
        if (body.rfind("name:", 0) == 0) doc.name = trim(std::string_view(body).substr(5));
        doc.comments.push_back(std::move(body));
      } else {
        doc.statements.push_back(LineParser(line, line_no).statement());
      }
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  if (doc.statements.empty()) throw ParseError(ParseErrorKind::EmptyDocument, line_no, 1, "document contains no reactions");
  return doc;
}

std::pair<ReactionNetwork, Kinetics> lower(const NetworkDocument& doc) {
  std::vector<std::string> species;
  std::map<std::string, std::size_t> species_index;
  for (const auto& st : doc.statements) {
    for (const auto* side : {&st.source, &st.product}) {
      for (const auto& t : *side) {
        if (species_index.emplace(t.species, species.size()).second) species.push_back(t.species);
      }
    }
  }

  RawNetwork raw;
  raw.species = species;
  std::map<IntVector, std::size_t> complex_index;
  auto intern = [&](const std::vector<Term>& terms) {
    IntVector y(species.size(), 0);
    for (const auto& t : terms) y[species_index.at(t.species)] += t.coefficient;
    auto [it, inserted] = complex_index.emplace(y, raw.complexes.size());
    if (inserted) raw.complexes.push_back(y);
    return it->second;
  };

  std::vector<RateSpec> rates;
  auto add_rate = [&rates](RateSpec r) {
    // Parsed bands oscillate across the band; phases differ per reaction.
    if (auto* b = std::get_if<BandedRate>(&r)) b->profile.phase = static_cast<double>(rates.size());
    rates.push_back(std::move(r));
  };
  for (const auto& st : doc.statements) {
    const std::size_t a = intern(st.source);
    const std::size_t b = intern(st.product);
    raw.reactions.push_back({a, b});
    add_rate(st.rate ? st.rate->forward : RateSpec{ConstantRate{1.0}});
    if (st.arrow == Arrow::Reversible) {
      raw.reactions.push_back({b, a});
      add_rate(st.rate && st.rate->reverse ? *st.rate->reverse : RateSpec{ConstantRate{1.0}});
    }
  }
  return {validate_network(raw), Kinetics(std::move(rates))};
}

std::pair<ReactionNetwork, Kinetics> parse_network(std::string_view text) { return lower(parse(text)); }

std::string render_complex(const ReactionNetwork& net, const Complex& y) {
  std::string out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (y[i] != 1) out += std::to_string(y[i]) + " ";
    out += net.species()[i].name;
  }
  return out.empty() ? "0" : out;
}

std::string render(const ReactionNetwork& net, const Kinetics& kin) {
  std::ostringstream os;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    os << render_complex(net, net.source(k)) << " -> " << render_complex(net, net.product(k));
    if (k < kin.size()) os << " | " << describe(kin[k]);
    os << "\n";
  }
  return os.str();
}

}  // namespace crn
