#include "crnbound/compat_class.hpp"

#include "crnbound/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crn {

namespace {

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

CompatibilityClass::CompatibilityClass(const ReactionNetwork& net, State x_ref) : x_ref_(std::move(x_ref)) {
  const std::size_t n = net.num_species();
  if (x_ref_.size() != n) throw std::invalid_argument("reference point has wrong dimension");
  for (double v : x_ref_) {
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("reference point must be strictly positive");
  }
  const auto sb = crn::stoichiometric_basis(net);
  basis_ = sb.basis;
  stoich_dim_ = sb.dimension;
  laws_ = orthogonal_complement(sb.reaction_vectors, n);
  for (const auto& w : laws_) {
    auto wd = to_double(w);
    double c = 0;
    for (std::size_t i = 0; i < n; ++i) c += wd[i] * x_ref_[i];
    laws_double_.push_back(std::move(wd));
    totals_.push_back(c);
  }

  upper_.assign(n, std::numeric_limits<double>::infinity());
  std::vector<RationalVector> rv;
  for (const auto& v : sb.reaction_vectors) rv.push_back(to_rational(v));
  if (auto w = detail::find_positive_orthogonal(rv)) {
    positive_law_ = w->w;
    const auto wd = to_double(w->w);
    double c = 0;
    for (std::size_t i = 0; i < n; ++i) c += wd[i] * x_ref_[i];
    for (std::size_t i = 0; i < n; ++i) upper_[i] = c / wd[i];
  }

  const std::size_t q = laws_.size();
  for (const auto& dep : subsets(n, q)) {
    std::vector<IntVector> cols;
    for (auto j : dep) {
      IntVector col;
      for (const auto& w : laws_) col.push_back(w[j].get_num().get_si());
      cols.push_back(std::move(col));
    }
    if (q > 0 && exact_rank(cols) < q) continue;
    Split s;
    s.dependent = dep;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::binary_search(dep.begin(), dep.end(), i)) s.free.push_back(i);
    }
    const auto qq = static_cast<Eigen::Index>(q);
    Eigen::MatrixXd WD(qq, qq), WF(qq, static_cast<Eigen::Index>(s.free.size()));
    Eigen::VectorXd c(qq);
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t a = 0; a < dep.size(); ++a) WD(r, a) = laws_double_[r][dep[a]];
      for (std::size_t a = 0; a < s.free.size(); ++a) WF(r, a) = laws_double_[r][s.free[a]];
      c[r] = totals_[r];
    }
    if (q > 0) {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(WD);
      s.coupling = lu.solve(WF);
      s.offset = lu.solve(c);
    } else {
      s.coupling = Eigen::MatrixXd(0, static_cast<Eigen::Index>(s.free.size()));
      s.offset = Eigen::VectorXd(0);
    }
    splits_.push_back(std::move(s));
  }
  if (splits_.empty()) throw std::logic_error("conservation laws admit no coordinate split");
}

bool CompatibilityClass::complete(const Split& split, const std::vector<double>& free_values, State& out) const {
  out.assign(num_species(), 0.0);
  Eigen::VectorXd xf(static_cast<Eigen::Index>(split.free.size()));
  for (std::size_t a = 0; a < split.free.size(); ++a) {
    xf[static_cast<Eigen::Index>(a)] = free_values[a];
    out[split.free[a]] = free_values[a];
  }
  const Eigen::VectorXd xd = split.offset - split.coupling * xf;
  for (std::size_t a = 0; a < split.dependent.size(); ++a) {
    const double v = xd[static_cast<Eigen::Index>(a)];
    if (!(v > 0) || !std::isfinite(v)) return false;
    out[split.dependent[a]] = v;
  }
  return true;
}

std::vector<State> CompatibilityClass::box_vertices(double lo, double hi) const {
  std::vector<State> out;
  const double slack = 1e-12 * hi;
  for (const auto& s : splits_) {
    const std::size_t f = s.free.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << f); ++mask) {
      std::vector<double> xf(f);
      for (std::size_t a = 0; a < f; ++a) xf[a] = (mask >> a) & 1 ? hi : lo;
      State x(num_species());
      Eigen::VectorXd v(static_cast<Eigen::Index>(f));
      for (std::size_t a = 0; a < f; ++a) {
        v[static_cast<Eigen::Index>(a)] = xf[a];
        x[s.free[a]] = xf[a];
      }
      const Eigen::VectorXd xd = s.offset - s.coupling * v;
      bool inside = true;
      for (std::size_t a = 0; a < s.dependent.size() && inside; ++a) {
        const double d = xd[static_cast<Eigen::Index>(a)];
        inside = d >= lo * (1 - 1e-12) - slack && d <= hi + slack;
        x[s.dependent[a]] = std::clamp(d, lo, hi);
      }
      if (inside) out.push_back(std::move(x));
    }
  }
  return out;
}

double CompatibilityClass::drift(const State& x) const {
  double m = 0;
  for (std::size_t r = 0; r < laws_double_.size(); ++r) {
    double c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) c += laws_double_[r][i] * x[i];
    m = std::max(m, std::abs(c - totals_[r]) / (1 + std::abs(totals_[r])));
  }
  return m;
}

}  // namespace crn
