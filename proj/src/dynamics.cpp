#include "crnbound/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crn {

MassActionSystem::MassActionSystem(const ReactionNetwork& net, Kinetics kin)
    : n_(net.num_species()), r_(net.num_reactions()), kin_(std::move(kin)) {
  if (kin_.size() != r_) throw KineticsError("kinetics must specify one rate per reaction");
  source_.resize(r_ * n_);
  delta_.resize(r_ * n_);
  for (std::size_t k = 0; k < r_; ++k) {
    const auto& y = net.source(k);
    const auto& yp = net.product(k);
    for (std::size_t i = 0; i < n_; ++i) {
      source_[k * n_ + i] = static_cast<double>(y[i]);
      delta_[k * n_ + i] = static_cast<double>(yp[i] - y[i]);
    }
  }
}

double MassActionSystem::monomial(std::size_t k, std::span<const double> x) const {
  return crn::monomial(x, std::span<const double>(source_.data() + k * n_, n_));
}

double MassActionSystem::rate(std::size_t k, std::span<const double> x, double t) const {
  return kin_.value(k, t) * monomial(k, x);
}

void MassActionSystem::rhs(std::span<const double> x, double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < r_; ++k) {
    const double v = rate(k, x, t);
    const double* d = delta_.data() + k * n_;
    for (std::size_t i = 0; i < n_; ++i) out[i] += v * d[i];
  }
}

State MassActionSystem::rhs(std::span<const double> x, double t) const {
  State out(n_);
  rhs(x, t, out);
  return out;
}

void MassActionSystem::jacobian(std::span<const double> x, double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < r_; ++k) {
    const double kappa = kin_.value(k, t);
    const double* y = source_.data() + k * n_;
    const double* d = delta_.data() + k * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j] == 0) continue;
      // d/dx_j x^y = y_j x^{y - e_j}, computed without dividing by x_j.
      double m = kappa * y[j];
      for (std::size_t i = 0; i < n_; ++i) {
        const double e = i == j ? y[i] - 1 : y[i];
        if (e != 0) m *= std::pow(x[i], e);
      }
      for (std::size_t i = 0; i < n_; ++i) out[i * n_ + j] += m * d[i];
    }
  }
}

void MassActionSystem::time_derivative(std::span<const double> x, double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (kin_.all_constant()) return;
  for (std::size_t k = 0; k < r_; ++k) {
    const double dk = kin_.derivative(k, t);
    if (dk == 0) continue;
    const double v = dk * monomial(k, x);
    const double* d = delta_.data() + k * n_;
    for (std::size_t i = 0; i < n_; ++i) out[i] += v * d[i];
  }
}

std::vector<double> MassActionSystem::descent_coefficients(std::span<const double> x) const {
  std::vector<double> lx(n_);
  for (std::size_t i = 0; i < n_; ++i) lx[i] = std::log(x[i]);
  std::vector<double> a(r_);
  for (std::size_t k = 0; k < r_; ++k) {
    const double* d = delta_.data() + k * n_;
    double s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += d[i] * lx[i];
    a[k] = s == 0 ? 0.0 : monomial(k, x) * s;
  }
  return a;
}

double MassActionSystem::descent(std::span<const double> x, double t) const {
  const auto dx = rhs(x, t);
  double s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += dx[i] * std::log(x[i]);
  return s;
}

double MassActionSystem::descent_worst_case(std::span<const double> x) const {
  const auto a = descent_coefficients(x);
  double s = 0;
  for (std::size_t k = 0; k < r_; ++k) s += a[k] * (a[k] > 0 ? kin_.upper(k) : kin_.lower(k));
  return s;
}

double rate(std::size_t k, std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin) {
  if (k >= net.num_reactions()) throw std::out_of_range("reaction index out of range");
  return kin.value(k, t) * monomial(x, net.source(k));
}

State rhs(std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin) {
  return MassActionSystem(net, kin).rhs(x, t);
}

double lyapunov(std::span<const double> z) {
  double s = 0;
  for (double v : z) s += v * (std::log(v) - 1) + 1;
  return s;
}

State lyapunov_gradient(std::span<const double> z) {
  State g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = std::log(z[i]);
  return g;
}

double descent(std::span<const double> x, double t, const ReactionNetwork& net, const Kinetics& kin) {
  return MassActionSystem(net, kin).descent(x, t);
}

double descent_worst_case(std::span<const double> x, const ReactionNetwork& net, const Kinetics& kin) {
  return MassActionSystem(net, kin).descent_worst_case(x);
}

double sup_norm(std::span<const double> x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace crn
