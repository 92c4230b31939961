#include "crnbound/network.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace crn {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid reaction network (" << violations.size() << " violation"
     << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) os << "\n  " << v.message;
  return os.str();
}

void check_dimensions(const RawNetwork& raw) {
  const std::size_t n = raw.species.size();
  if (n == 0) throw std::invalid_argument("network has no species");
  std::set<std::string> names;
  for (const auto& s : raw.species) {
    if (s.empty()) throw std::invalid_argument("empty species name");
    if (!names.insert(s).second) throw std::invalid_argument("duplicate species name '" + s + "'");
  }
  for (std::size_t c = 0; c < raw.complexes.size(); ++c) {
    if (raw.complexes[c].size() != n) {
      throw std::invalid_argument("complex " + std::to_string(c) + " has wrong dimension");
    }
    for (auto x : raw.complexes[c]) {
      if (x < 0) throw std::invalid_argument("complex " + std::to_string(c) + " has a negative coefficient");
    }
  }
  for (std::size_t k = 0; k < raw.reactions.size(); ++k) {
    const auto& r = raw.reactions[k];
    if (r.source >= raw.complexes.size() || r.product >= raw.complexes.size()) {
      throw std::invalid_argument("reaction " + std::to_string(k) + " references a missing complex");
    }
  }
  if (raw.reactions.empty()) throw std::invalid_argument("network has no reactions");
}

// Fraction-free Gaussian elimination; returns the rank.
std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace

std::int64_t Complex::order() const {
  std::int64_t s = 0;
  for (auto x : coefficients) s += x;
  return s;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

std::vector<Violation> find_violations(const RawNetwork& raw) {
  check_dimensions(raw);
  std::vector<Violation> out;
  const std::size_t n = raw.species.size();

  for (std::size_t i = 0; i < n; ++i) {
    bool present = false;
    for (const auto& y : raw.complexes) present = present || y[i] >= 1;
    if (!present) {
      out.push_back({ViolationKind::Condition1, i,
                     "species '" + raw.species[i] + "' does not appear in any complex"});
    }
  }
  for (std::size_t k = 0; k < raw.reactions.size(); ++k) {
    const auto& r = raw.reactions[k];
    if (r.source == r.product || raw.complexes[r.source] == raw.complexes[r.product]) {
      out.push_back({ViolationKind::Condition2, k, "reaction " + std::to_string(k) + " is trivial (y -> y)"});
    }
  }
  std::vector<bool> used(raw.complexes.size(), false);
  for (const auto& r : raw.reactions) used[r.source] = used[r.product] = true;
  for (std::size_t c = 0; c < raw.complexes.size(); ++c) {
    if (!used[c]) {
      out.push_back({ViolationKind::Condition3, c, "complex " + std::to_string(c) + " takes part in no reaction"});
    }
  }
  std::map<IntVector, std::size_t> first;
  for (std::size_t c = 0; c < raw.complexes.size(); ++c) {
    auto [it, inserted] = first.emplace(raw.complexes[c], c);
    if (!inserted) {
      out.push_back({ViolationKind::DuplicateComplex, c,
                     "complex " + std::to_string(c) + " duplicates complex " + std::to_string(it->second)});
    }
  }
  return out;
}

ReactionNetwork validate_network(const RawNetwork& raw) {
  auto violations = find_violations(raw);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  ReactionNetwork net;
  for (std::size_t i = 0; i < raw.species.size(); ++i) net.species_.push_back({i, raw.species[i]});
  for (const auto& y : raw.complexes) net.complexes_.push_back(Complex{y});
  net.reactions_ = raw.reactions;
  return net;
}

double monomial(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("monomial: dimension mismatch");
  double out = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0) throw std::domain_error("monomial: negative base");
    if (v[i] == 0) continue;
    if (u[i] == 0) {
      if (v[i] < 0) throw UndefinedMonomial("monomial: 0 raised to a negative power");
      return 0.0;
    }
    out *= std::pow(u[i], v[i]);
  }
  return out;
}

double monomial(std::span<const double> u, const Complex& y) {
  if (u.size() != y.size()) throw std::invalid_argument("monomial: dimension mismatch");
  double out = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    switch (y[i]) {
      case 0: break;
      case 1: out *= u[i]; break;
      case 2: out *= u[i] * u[i]; break;
      default: out *= std::pow(u[i], static_cast<double>(y[i]));
    }
  }
  return out;
}

std::vector<IntVector> reaction_vectors(const ReactionNetwork& net) {
  std::vector<IntVector> out;
  out.reserve(net.num_reactions());
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto& y = net.source(k);
    const auto& yp = net.product(k);
    IntVector d(net.num_species());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = yp[i] - y[i];
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t exact_rank(const std::vector<IntVector>& rows) {
  std::vector<std::vector<mpz_class>> m;
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (auto x : r) row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  return bareiss_rank(std::move(m));
}

StoichiometricBasis stoichiometric_basis(const ReactionNetwork& net) {
  StoichiometricBasis out;
  out.reaction_vectors = reaction_vectors(net);
  for (std::size_t k = 0; k < out.reaction_vectors.size(); ++k) {
    auto candidate = out.basis;
    candidate.push_back(out.reaction_vectors[k]);
    if (exact_rank(candidate) > out.basis.size()) {
      out.basis = std::move(candidate);
      out.basis_indices.push_back(k);
    }
  }
  out.dimension = out.basis.size();
  return out;
}

std::vector<RationalVector> orthogonal_complement(const std::vector<IntVector>& rows,
                                                  std::size_t dimension) {
  std::vector<RationalVector> m;
  for (const auto& r : rows) {
    if (r.size() != dimension) throw std::invalid_argument("orthogonal_complement: dimension mismatch");
    m.push_back(to_rational(r));
  }
  // Reduced row echelon form over the rationals.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dimension && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const Rational inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < dimension; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(dimension, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < dimension; ++free) {
    if (is_pivot[free]) continue;
    RationalVector w(dimension, Rational(0));
    w[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) w[pivot_cols[r]] = -m[r][free];
    basis.push_back(primitive(std::move(w)));
  }
  return basis;
}

}  // namespace crn
