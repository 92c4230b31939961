#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crn {

enum class ProfileKind { Constant, Sinusoid, Switching };

/// Time dependence of a banded rate. All profiles are pure functions of t.
struct Profile {
  ProfileKind kind = ProfileKind::Constant;
  double period = 10.0;  // Sinusoid
  double phase = 0.0;    // Sinusoid, radians
  double dwell = 1.0;    // Switching: length of each constant segment
  std::uint64_t seed = 0;  // Switching
};

struct ConstantRate {
  double value = 1.0;
};

struct BandedRate {
  double lower = 1.0;
  double upper = 1.0;
  Profile profile;
};

using RateSpec = std::variant<ConstantRate, BandedRate>;

class KineticsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-reaction rates, bounded in the sense eta < k(t) < 1/eta.
class Kinetics {
 public:
  Kinetics() = default;
  explicit Kinetics(std::vector<RateSpec> rates);

  static Kinetics constant(const std::vector<double>& values);

  std::size_t size() const { return rates_.size(); }
  const RateSpec& operator[](std::size_t k) const { return rates_.at(k); }
  const std::vector<RateSpec>& rates() const { return rates_; }

  /// Value of kappa_k(t), always within [lower_k, upper_k].
  double value(std::size_t k, double t) const;
  /// d kappa_k / dt where defined (zero for piecewise-constant profiles).
  double derivative(std::size_t k, double t) const;
  /// Earliest jump of a switching profile strictly after t, or +inf.
  /// Switching profiles are right-continuous at their jumps.
  double next_switch(double t) const;

  double lower(std::size_t k) const;
  double upper(std::size_t k) const;
  bool all_constant() const;
  bool is_bounded() const;

  /// (1 - 1e-9) * min_k min(lower_k, 1/upper_k).
  double eta() const;

 private:
  std::vector<RateSpec> rates_;
};

std::string describe(const RateSpec& r);

}  // namespace crn
