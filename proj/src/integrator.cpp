#include "crnbound/integrator.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace crn {

double Trajectory::max_norm() const {
  double m = 0;
  for (const auto& x : states) m = std::max(m, sup_norm(x));
  return m;
}

double Trajectory::min_component() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : states) {
    for (double v : x) m = std::min(m, v);
  }
  return m;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool positive_finite(const State& x) {
  for (double v : x) {
    if (!(v > 0) || !std::isfinite(v)) return false;
  }
  return true;
}

bool finite(const State& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double error_norm(const State& err, const State& y0, const State& y1, const IntegratorOptions& o) {
  double s = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = o.atol + o.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    s += r * r;
  }
  return std::sqrt(s / static_cast<double>(err.size()));
}

class Stepper {
 public:
  Stepper(const MassActionSystem& sys, const IntegratorOptions& opts)
      : sys_(sys), o_(opts), n_(sys.num_species()), k_(7, State(n_)), tmp_(n_) {}

  struct Attempt {
    bool accepted = false;
    bool positivity_failure = false;
    double h_next = 0;
  };

  // One attempted step from (t, y) with size h. On acceptance y_new holds the
  // new state.
  Attempt dopri(double t, const State& y, double h, State& y_new, bool& fsal_valid) {
    auto& k = k_;
    if (!fsal_valid) sys_.rhs(y, at(t), k[0]);
    auto stage = [&](std::initializer_list<std::pair<int, double>> terms) {
      for (std::size_t i = 0; i < n_; ++i) {
        double s = 0;
        for (auto [j, a] : terms) s += a * k[j][i];
        tmp_[i] = y[i] + h * s;
      }
    };
    Attempt a;
    // stage states can leave the orthant before the step itself does; mass action is undefined there
    auto reject = [&] {
      a.positivity_failure = true;
      a.h_next = 0.5 * h;
      fsal_valid = true;
      return a;
    };
    auto eval = [&](double ts, State& out) {
      if (!positive_finite(tmp_)) return false;
      sys_.rhs(tmp_, at(ts), out);
      return true;
    };
    stage({{0, a21}});
    if (!eval(t + c2 * h, k[1])) return reject();
    stage({{0, a31}, {1, a32}});
    if (!eval(t + c3 * h, k[2])) return reject();
    stage({{0, a41}, {1, a42}, {2, a43}});
    if (!eval(t + c4 * h, k[3])) return reject();
    stage({{0, a51}, {1, a52}, {2, a53}, {3, a54}});
    if (!eval(t + c5 * h, k[4])) return reject();
    stage({{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
    const State y_stage6 = tmp_;
    if (!eval(t + h, k[5])) return reject();
    for (std::size_t i = 0; i < n_; ++i) {
      y_new[i] = y[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
    }
    if (!positive_finite(y_new)) return reject();
    sys_.rhs(y_new, at(t + h), k[6]);
    State err(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
    }
    const double en = error_norm(err, y, y_new, o_);
    if (!std::isfinite(en)) {
      a.h_next = 0.5 * h;
      fsal_valid = true;
      return a;
    }
    if (en <= 1.0) {
      a.accepted = true;
      a.h_next = h * std::clamp(0.9 * std::pow(std::max(en, 1e-10), -0.2), 0.2, 5.0);
      // Stiffness estimate h * |f7 - f6| / |y7 - y6|.
      double num = 0, den = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        num += (k[6][i] - k[5][i]) * (k[6][i] - k[5][i]);
        den += (y_new[i] - y_stage6[i]) * (y_new[i] - y_stage6[i]);
      }
      stiff_ratio_ = den > 0 ? h * std::sqrt(num / den) : 0.0;
      k[0] = k[6];
      fsal_valid = true;
    } else {
      a.h_next = h * std::max(0.2, 0.9 * std::pow(en, -0.2));
      fsal_valid = true;
    }
    return a;
  }

  // Shampine's linearly implicit ode23s pair; W = I - h d J.
  Attempt rosenbrock(double t, const State& y, double h, State& y_new) {
    static const double d = 1.0 / (2.0 + std::sqrt(2.0));
    static const double e32 = 6.0 + std::sqrt(2.0);
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    const auto nn = static_cast<Eigen::Index>(n_);
    Mat J(nn, nn);
    sys_.jacobian(y, at(t), std::span<double>(J.data(), n_ * n_));
    J.transposeInPlace();  // filled row-major into a column-major matrix
    Vec T(nn);
    sys_.time_derivative(y, at(t), std::span<double>(T.data(), n_));
    Vec F0(nn);
    sys_.rhs(y, at(t), std::span<double>(F0.data(), n_));
    Mat W = Mat::Identity(nn, nn) - h * d * J;
    Eigen::PartialPivLU<Mat> lu(W);

    Attempt a;
    const Vec k1 = lu.solve(F0 + h * d * T);
    Vec arg(nn);
    for (Eigen::Index i = 0; i < nn; ++i) arg[i] = y[i] + 0.5 * h * k1[i];
    if (!positive_finite(State(arg.data(), arg.data() + nn))) {
      a.positivity_failure = true;
      a.h_next = 0.5 * h;
      return a;
    }
    Vec F1(nn);
    sys_.rhs(std::span<const double>(arg.data(), n_), at(t + 0.5 * h), std::span<double>(F1.data(), n_));
    const Vec k2 = lu.solve(F1 - k1) + k1;
    for (std::size_t i = 0; i < n_; ++i) y_new[i] = y[i] + h * k2[static_cast<Eigen::Index>(i)];
    if (!positive_finite(y_new)) {
      a.positivity_failure = finite(y_new);
      a.h_next = 0.5 * h;
      return a;
    }
    Vec F2(nn);
    sys_.rhs(y_new, at(t + h), std::span<double>(F2.data(), n_));
    const Vec k3 = lu.solve(F2 - e32 * (k2 - F1) - 2.0 * (k1 - F0) + h * d * T);
    State err(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto j = static_cast<Eigen::Index>(i);
      err[i] = h / 6.0 * (k1[j] - 2.0 * k2[j] + k3[j]);
    }
    const double en = error_norm(err, y, y_new, o_);
    if (!std::isfinite(en)) {
      a.h_next = 0.5 * h;
      return a;
    }
    constexpr double third = 1.0 / 3.0;
    if (en <= 1.0) {
      a.accepted = true;
      a.h_next = h * std::clamp(0.9 * std::pow(std::max(en, 1e-10), -third), 0.2, 5.0);
    } else {
      a.h_next = h * std::max(0.2, 0.9 * std::pow(en, -third));
    }
    return a;
  }

  double stiff_ratio() const { return stiff_ratio_; }
  // Stage times are clamped below a rate jump so a step ending on it sees the left limit.
  void set_time_cap(double cap) { cap_ = cap; }

 private:
  const MassActionSystem& sys_;
  const IntegratorOptions& o_;
  std::size_t n_;
  std::vector<State> k_;
  State tmp_;
  double stiff_ratio_ = 0;
  double cap_ = std::numeric_limits<double>::infinity();

  double at(double ts) const { return std::min(ts, cap_); }
};

double initial_step(const MassActionSystem& sys, const State& y, const IntegratorOptions& o, double span) {
  const auto f = sys.rhs(y, 0.0);
  double d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double sc = o.atol + o.rtol * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (f[i] / sc) * (f[i] / sc);
  }
  double h = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * std::sqrt(d0 / d1);
  return std::min(h, span);
}

}  // namespace

Trajectory integrate(const MassActionSystem& sys, const State& x0, double t_end, const IntegratorOptions& opts) {
  if (x0.size() != sys.num_species()) throw std::invalid_argument("initial state has wrong dimension");
  if (!positive_finite(x0)) throw std::invalid_argument("initial state must be strictly positive");
  if (!(t_end > 0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  if (!(opts.rtol > 0) || !(opts.atol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (opts.grid_intervals == 0) throw std::invalid_argument("grid_intervals must be positive");

  Trajectory traj;
  auto record = [&](double t, const State& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.v1.push_back(lyapunov(x));
    traj.descent.push_back(sys.descent(x, t));
  };

  const double dt_grid = t_end / static_cast<double>(opts.grid_intervals);
  auto grid_time = [&](std::size_t i) { return i == opts.grid_intervals ? t_end : dt_grid * static_cast<double>(i); };

  Stepper stepper(sys, opts);
  State y = x0, y_new(x0.size());
  // t = t_seg + tau: each rate jump restarts the offset so that transients
  // right after a late jump can still be resolved in steps far below ulp(t)
  double t = 0, t_seg = 0, tau = 0;
  record(t, y);
  std::size_t next_grid = 1;
  double h = initial_step(sys, y, opts, dt_grid);
  bool stiff = opts.method == Method::Rosenbrock;
  if (stiff) traj.stiff_switch_time = 0;
  bool fsal_valid = false;
  int stiff_hits = 0, non_stiff_hits = 0;
  std::size_t steps = 0;

  while (next_grid <= opts.grid_intervals) {
    if (++steps > opts.max_steps) {
      throw IntegrationError(IntegrationErrorKind::StepLimitExceeded, t, "step limit exceeded at t = " + std::to_string(t));
    }
    const double grid_target = grid_time(next_grid);
    const double jump = sys.kinetics().next_switch(t);
    const bool on_grid = grid_target <= jump;
    const bool at_jump = jump <= grid_target;
    const double target = std::min(jump, grid_target);
    const double span = target - t_seg;
    bool lands = false;
    double h_try = h;
    if (tau + h_try >= span * (1 - 1e-14)) {
      h_try = span - tau;
      lands = true;
    }
    stepper.set_time_cap(lands && at_jump ? std::nextafter(target, -std::numeric_limits<double>::infinity())
                                          : std::numeric_limits<double>::infinity());
    // underflow means the step no longer advances the offset
    if (h_try <= 10 * std::numeric_limits<double>::epsilon() * tau || h_try < std::numeric_limits<double>::min()) {
      if (!finite(y)) throw IntegrationError(IntegrationErrorKind::NonFiniteState, t, "non-finite state");
      throw IntegrationError(IntegrationErrorKind::StepSizeUnderflow, t,
                             "step size underflow at t = " + std::to_string(t));
    }

    const auto a = stiff ? stepper.rosenbrock(t, y, h_try, y_new) : stepper.dopri(t, y, h_try, y_new, fsal_valid);
    if (!a.accepted) {
      ++traj.rejected_steps;
      if (a.positivity_failure) ++traj.positivity_rejections;
      h = a.h_next;
      continue;
    }
    ++traj.accepted_steps;
    y = y_new;
    // Keep the proposed size across grid landings so short landing steps do
    // not throttle the integration.
    h = lands ? std::max(a.h_next, h) : a.h_next;
    if (lands && at_jump) {
      t_seg = t = target;
      tau = 0;
      // the cached f(y) was taken with the left-limit rates
      fsal_valid = false;
    } else {
      tau = lands ? span : tau + h_try;
      t = lands ? target : t_seg + tau;
    }

    const bool finished = sup_norm(y) > opts.norm_limit;
    if (lands && on_grid) ++next_grid;
    if ((lands && on_grid) || finished) {
      // steps inside a fast transient can round to the previously recorded time
      if (traj.times.back() == t) {
        traj.times.pop_back();
        traj.states.pop_back();
        traj.v1.pop_back();
        traj.descent.pop_back();
      }
      record(t, y);
    } else if (opts.store_accept_points && t > traj.times.back()) {
      record(t, y);
    }
    if (finished) {
      traj.status = TrajectoryStatus::NormLimitExceeded;
      return traj;
    }

    if (!stiff && opts.method == Method::Auto) {
      if (stepper.stiff_ratio() > 3.25) {
        non_stiff_hits = 0;
        if (++stiff_hits >= 15) {
          stiff = true;
          traj.switched_to_stiff = true;
          traj.stiff_switch_time = t;
        }
      } else if (++non_stiff_hits >= 6) {
        stiff_hits = 0;
      }
    }
  }
  return traj;
}

Trajectory integrate(const ReactionNetwork& net, const Kinetics& kin, const State& x0, double t_end,
                     const IntegratorOptions& opts) {
  return integrate(MassActionSystem(net, kin), x0, t_end, opts);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  out << ",V1,descent\n";
  for (std::size_t s = 0; s < traj.size(); ++s) {
    out << traj.times[s];
    for (double v : traj.states[s]) out << ',' << v;
    out << ',' << traj.v1[s] << ',' << traj.descent[s] << '\n';
  }
  return out.str();
}

std::string trajectory_summary_json(const Trajectory& traj, const std::vector<std::string>& species) {
  nlohmann::ordered_json j;
  j["species"] = species;
  j["samples"] = traj.size();
  j["t_final"] = traj.times.empty() ? 0.0 : traj.times.back();
  j["max_norm"] = traj.max_norm();
  j["final_state"] = traj.states.empty() ? State{} : traj.states.back();
  j["min_component"] = traj.min_component();
  j["V1_initial"] = traj.v1.empty() ? 0.0 : traj.v1.front();
  j["V1_max"] = traj.v1.empty() ? 0.0 : *std::max_element(traj.v1.begin(), traj.v1.end());
  j["status"] = traj.status == TrajectoryStatus::Completed ? "completed" : "norm_limit_exceeded";
  j["accepted_steps"] = traj.accepted_steps;
  j["rejected_steps"] = traj.rejected_steps;
  j["positivity_rejections"] = traj.positivity_rejections;
  j["stiff_switch"] = traj.switched_to_stiff;
  return j.dump(2) + "\n";
}

}  // namespace crn
