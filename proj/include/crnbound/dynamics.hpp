#pragma once

#include "crnbound/kinetics.hpp"
#include "crnbound/network.hpp"

#include <span>
#include <vector>

namespace crn {

using State = std::vector<double>;

/// Network and kinetics flattened for repeated evaluation.
class MassActionSystem {
 public:
  MassActionSystem(const ReactionNetwork& net, Kinetics kin);

  std::size_t num_species() const { return n_; }
  std::size_t num_reactions() const { return r_; }
  const Kinetics& kinetics() const { return kin_; }

  double monomial(std::size_t k, std::span<const double> x) const;
  double rate(std::size_t k, std::span<const double> x, double t) const;
  void rhs(std::span<const double> x, double t, std::span<double> out) const;
  State rhs(std::span<const double> x, double t) const;
  /// Row-major N x N Jacobian of rhs with respect to x.
  void jacobian(std::span<const double> x, double t, std::span<double> out) const;
  /// Partial derivative of rhs with respect to t (nonzero only for banded rates).
  void time_derivative(std::span<const double> x, double t, std::span<double> out) const;

  double descent(std::span<const double> x, double t) const;
  double descent_worst_case(std::span<const double> x) const;
  /// a_k = x^{y_k} (y_k' - y_k) . ln x, the coefficient of kappa_k in descent.
  std::vector<double> descent_coefficients(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  Kinetics kin_;
  std::vector<double> source_;  // r x n
  std::vector<double> delta_;   // r x n
};

double rate(std::size_t k, std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin);
State rhs(std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin);

/// V1(z) = sum z_i (ln z_i - 1) + 1.
double lyapunov(std::span<const double> z);
State lyapunov_gradient(std::span<const double> z);

double descent(std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin);
double descent_worst_case(std::span<const double> x, const ReactionNetwork& net, const Kinetics& kin);

double sup_norm(std::span<const double> x);

}  // namespace crn
