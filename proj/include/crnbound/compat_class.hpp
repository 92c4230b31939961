#pragma once

#include "crnbound/dynamics.hpp"
#include "crnbound/network.hpp"
#include "crnbound/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace crn {

/// The stoichiometric compatibility class (x_ref + S) intersected with the
/// positive orthant, described by an exact basis of conservation laws.
class CompatibilityClass {
 public:
  CompatibilityClass(const ReactionNetwork& net, State x_ref);

  std::size_t num_species() const { return x_ref_.size(); }
  std::size_t stoichiometric_dimension() const { return stoich_dim_; }
  const State& reference() const { return x_ref_; }
  const std::vector<RationalVector>& conservation_laws() const { return laws_; }
  /// w . x_ref for each conservation law w.
  const std::vector<double>& totals() const { return totals_; }
  const std::vector<IntVector>& stoichiometric_basis() const { return basis_; }

  /// Bounded exactly when some strictly positive vector is orthogonal to all
  /// reaction vectors; then x_i <= (w . x_ref) / w_i on the whole class.
  bool bounded() const { return positive_law_.has_value(); }
  const std::optional<RationalVector>& positive_law() const { return positive_law_; }
  double upper_bound(std::size_t i) const { return upper_[i]; }

  /// A choice of coordinates fixed freely, the rest solved from the laws.
  struct Split {
    std::vector<std::size_t> free;
    std::vector<std::size_t> dependent;
    Eigen::MatrixXd coupling;  // x_dep = offset - coupling * x_free
    Eigen::VectorXd offset;
  };
  const std::vector<Split>& splits() const { return splits_; }

  /// Fills `out` from the free coordinates; false if a dependent coordinate
  /// is not strictly positive.
  bool complete(const Split& split, const std::vector<double>& free_values, State& out) const;

  /// Vertices of the polytope {x in class closure : lo <= x_i <= hi}. Empty
  /// when the class misses the box.
  std::vector<State> box_vertices(double lo, double hi) const;

  /// max |w . x - w . x_ref| / (1 + |w . x_ref|) over the laws.
  double drift(const State& x) const;

 private:
  State x_ref_;
  std::size_t stoich_dim_ = 0;
  std::vector<IntVector> basis_;
  std::vector<RationalVector> laws_;
  std::vector<std::vector<double>> laws_double_;
  std::vector<double> totals_;
  std::optional<RationalVector> positive_law_;
  std::vector<double> upper_;
  std::vector<Split> splits_;
};

}  // namespace crn
