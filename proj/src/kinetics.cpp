#include "crnbound/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace crn {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Segment j covers [j * dwell, (j + 1) * dwell) with the products rounded as
// computed here, so segment_of and next_switch agree at every boundary.
std::int64_t segment_of(const Profile& p, double t) {
  auto j = static_cast<std::int64_t>(std::floor(t / p.dwell));
  if (static_cast<double>(j) * p.dwell > t) --j;
  if (static_cast<double>(j + 1) * p.dwell <= t) ++j;
  return j;
}

// Position in [0, 1] of kappa(t) within the band, on a log scale.
double band_position(const Profile& p, double t) {
  switch (p.kind) {
    case ProfileKind::Constant:
      return 0.5;
    case ProfileKind::Sinusoid:
      return 0.5 + 0.5 * std::sin(2 * std::numbers::pi * t / p.period + p.phase);
    case ProfileKind::Switching: {
      const auto segment = segment_of(p, t);
      const std::uint64_t h = splitmix(p.seed ^ splitmix(static_cast<std::uint64_t>(segment)));
      return static_cast<double>(h >> 11) * 0x1.0p-53;
    }
  }
  return 0.5;
}

double band_position_derivative(const Profile& p, double t) {
  if (p.kind != ProfileKind::Sinusoid) return 0.0;
  const double w = 2 * std::numbers::pi / p.period;
  return 0.5 * w * std::cos(w * t + p.phase);
}

bool valid_double(double x) { return std::isfinite(x) && x > 0; }

}  // namespace

Kinetics::Kinetics(std::vector<RateSpec> rates) : rates_(std::move(rates)) {
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (const auto* c = std::get_if<ConstantRate>(&rates_[k])) {
      if (!valid_double(c->value)) throw KineticsError("rate " + std::to_string(k) + " must be positive and finite");
    } else {
      const auto& b = std::get<BandedRate>(rates_[k]);
      if (!valid_double(b.lower) || !valid_double(b.upper) || b.lower > b.upper) {
        throw KineticsError("rate band " + std::to_string(k) + " must satisfy 0 < lower <= upper");
      }
      if (b.profile.kind == ProfileKind::Sinusoid && !(b.profile.period > 0)) {
        throw KineticsError("sinusoid period must be positive");
      }
      if (b.profile.kind == ProfileKind::Switching && !(b.profile.dwell > 0)) {
        throw KineticsError("switching dwell time must be positive");
      }
    }
  }
}

Kinetics Kinetics::constant(const std::vector<double>& values) {
  std::vector<RateSpec> rates;
  for (double v : values) rates.emplace_back(ConstantRate{v});
  return Kinetics(std::move(rates));
}

double Kinetics::value(std::size_t k, double t) const {
  const auto& r = rates_.at(k);
  if (const auto* c = std::get_if<ConstantRate>(&r)) return c->value;
  const auto& b = std::get<BandedRate>(r);
  if (b.lower == b.upper) return b.lower;
  const double s = band_position(b.profile, t);
  const double v = std::exp(std::log(b.lower) + s * (std::log(b.upper) - std::log(b.lower)));
  return std::clamp(v, b.lower, b.upper);
}

double Kinetics::derivative(std::size_t k, double t) const {
  const auto& r = rates_.at(k);
  if (std::holds_alternative<ConstantRate>(r)) return 0.0;
  const auto& b = std::get<BandedRate>(r);
  if (b.lower == b.upper) return 0.0;
  return value(k, t) * (std::log(b.upper) - std::log(b.lower)) * band_position_derivative(b.profile, t);
}

double Kinetics::next_switch(double t) const {
  double next = std::numeric_limits<double>::infinity();
  for (const auto& r : rates_) {
    const auto* b = std::get_if<BandedRate>(&r);
    if (!b || b->lower == b->upper || b->profile.kind != ProfileKind::Switching) continue;
    next = std::min(next, static_cast<double>(segment_of(b->profile, t) + 1) * b->profile.dwell);
  }
  return next;
}

double Kinetics::lower(std::size_t k) const {
  const auto& r = rates_.at(k);
  if (const auto* c = std::get_if<ConstantRate>(&r)) return c->value;
  return std::get<BandedRate>(r).lower;
}

double Kinetics::upper(std::size_t k) const {
  const auto& r = rates_.at(k);
  if (const auto* c = std::get_if<ConstantRate>(&r)) return c->value;
  return std::get<BandedRate>(r).upper;
}

bool Kinetics::all_constant() const {
  return std::all_of(rates_.begin(), rates_.end(),
                     [](const RateSpec& r) { return std::holds_alternative<ConstantRate>(r); });
}

bool Kinetics::is_bounded() const {
  if (rates_.empty()) return false;
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (!valid_double(lower(k)) || !valid_double(upper(k)) || lower(k) > upper(k)) return false;
  }
  return eta() > 0;
}

double Kinetics::eta() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rates_.size(); ++k) m = std::min({m, lower(k), 1.0 / upper(k)});
  return (1 - 1e-9) * m;
}

std::string describe(const RateSpec& r) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* c = std::get_if<ConstantRate>(&r)) {
    os << "k=" << c->value;
  } else {
    const auto& b = std::get<BandedRate>(r);
    os << "k~[" << b.lower << "," << b.upper << "]";
  }
  return os.str();
}

}  // namespace crn
