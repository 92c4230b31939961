#pragma once

#include "crnbound/dynamics.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

enum class Method {
  Auto,           // Dormand-Prince, switching to Rosenbrock once stiffness is detected
  DormandPrince,  // explicit 5(4) pair only
  Rosenbrock,     // linearly implicit 2(3) pair only
};

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  std::size_t grid_intervals = 200;  // uniform output grid on [0, t_end]
  bool store_accept_points = true;
  double norm_limit = 1e15;  // stop and report growth beyond this sup-norm
  std::size_t max_steps = 20'000'000;
  Method method = Method::Auto;
};

enum class TrajectoryStatus { Completed, NormLimitExceeded };

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<double> v1;
  std::vector<double> descent;
  TrajectoryStatus status = TrajectoryStatus::Completed;

  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t positivity_rejections = 0;
  bool switched_to_stiff = false;
  double stiff_switch_time = -1;

  std::size_t size() const { return times.size(); }
  double max_norm() const;
  double min_component() const;
};

enum class IntegrationErrorKind { StepSizeUnderflow, NonFiniteState, StepLimitExceeded };

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(IntegrationErrorKind kind, double t, const std::string& what)
      : std::runtime_error(what), kind_(kind), time_(t) {}
  IntegrationErrorKind kind() const { return kind_; }
  double time() const { return time_; }

 private:
  IntegrationErrorKind kind_;
  double time_;
};

/// Integrates x' = rhs(x, t) from x0 on [0, t_end]. Steps that would leave the
/// positive orthant are rejected and retried with half the step.
Trajectory integrate(const MassActionSystem& sys, const State& x0, double t_end, const IntegratorOptions& opts = {});
Trajectory integrate(const ReactionNetwork& net, const Kinetics& kin, const State& x0, double t_end,
                     const IntegratorOptions& opts = {});

/// Header "t,x1,...,xN,V1,descent".
std::string trajectory_csv(const Trajectory& traj);
/// {"max_norm", "final_state", "min_component", ...} as a JSON document.
std::string trajectory_summary_json(const Trajectory& traj, const std::vector<std::string>& species);

}  // namespace crn
