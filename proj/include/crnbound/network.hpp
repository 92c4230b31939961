#pragma once

#include "crnbound/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct SpeciesId {
  std::size_t index = 0;
  std::string name;
};

/// A complex is a non-negative integer vector of species coefficients.
struct Complex {
  IntVector coefficients;

  std::size_t size() const { return coefficients.size(); }
  std::int64_t operator[](std::size_t i) const { return coefficients[i]; }
  std::int64_t order() const;
  bool operator==(const Complex&) const = default;
  auto operator<=>(const Complex&) const = default;
};

struct Reaction {
  std::size_t source = 0;
  std::size_t product = 0;
  bool operator==(const Reaction&) const = default;
};

/// Unvalidated input to validate_network.
struct RawNetwork {
  std::vector<std::string> species;
  std::vector<IntVector> complexes;
  std::vector<Reaction> reactions;
};

enum class ViolationKind {
  Condition1,  // species never appears with coefficient >= 1
  Condition2,  // trivial reaction y -> y
  Condition3,  // complex not used by any reaction
  DuplicateComplex,
};

struct Violation {
  ViolationKind kind;
  std::size_t index;  // species, reaction, or complex index depending on kind
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class UndefinedMonomial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A validated chemical reaction network. Instances are immutable once
/// constructed and can only be obtained through validate_network.
class ReactionNetwork {
 public:
  std::size_t num_species() const { return species_.size(); }
  std::size_t num_complexes() const { return complexes_.size(); }
  std::size_t num_reactions() const { return reactions_.size(); }

  const std::vector<SpeciesId>& species() const { return species_; }
  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  const Complex& complex(std::size_t i) const { return complexes_.at(i); }
  const Complex& source(std::size_t k) const { return complexes_[reactions_.at(k).source]; }
  const Complex& product(std::size_t k) const { return complexes_[reactions_.at(k).product]; }

 private:
  friend ReactionNetwork validate_network(const RawNetwork& raw);
  ReactionNetwork() = default;

  std::vector<SpeciesId> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
};

/// Checks the three network conditions plus complex uniqueness. Throws
/// ValidationError listing every violation; throws std::invalid_argument
/// when dimensions are inconsistent.
ReactionNetwork validate_network(const RawNetwork& raw);

/// Returns all violations without throwing. Empty means valid.
std::vector<Violation> find_violations(const RawNetwork& raw);

/// prod u_i^{v_i} with the convention 0^0 = 1.
double monomial(std::span<const double> u, std::span<const double> v);
double monomial(std::span<const double> u, const Complex& y);

/// y_k' - y_k for every reaction, in reaction order.
std::vector<IntVector> reaction_vectors(const ReactionNetwork& net);

struct StoichiometricBasis {
  std::vector<IntVector> reaction_vectors;
  std::vector<IntVector> basis;           // maximal independent subset of reaction_vectors
  std::vector<std::size_t> basis_indices;  // indices into reaction_vectors
  std::size_t dimension = 0;
};

StoichiometricBasis stoichiometric_basis(const ReactionNetwork& net);

/// Exact rank of a list of integer vectors (fraction-free elimination).
std::size_t exact_rank(const std::vector<IntVector>& rows);

/// Basis of {w : w . v = 0 for all v in rows}, as primitive integer vectors.
std::vector<RationalVector> orthogonal_complement(const std::vector<IntVector>& rows,
                                                  std::size_t dimension);

/// Component j of the result is v[subset[j]]. subset must be sorted.
template <typename T>
std::vector<T> project(const std::vector<T>& v, const std::vector<std::size_t>& subset) {
  std::vector<T> out;
  out.reserve(subset.size());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (subset[j] >= v.size()) throw std::out_of_range("project: index out of range");
    if (j > 0 && subset[j] <= subset[j - 1]) throw std::invalid_argument("project: subset must be sorted");
    out.push_back(v[subset[j]]);
  }
  return out;
}

}  // namespace crn
