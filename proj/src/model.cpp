#include "eup/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eup {

double flow_potential(double h, double a) {
  if (!(h > 0.0)) throw std::domain_error("flow_potential: h must be positive");
  if (!(a >= 0.0)) throw std::domain_error("flow_potential: a must be nonnegative");
  return std::log(h) + a / (2.0 * h * h);
}

double flow_potential_slope(double h, double a) {
  return (h * h - a) / (h * h * h);
}

double invert_flow_potential(double target, double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("invert_flow_potential: a must be in [0, 1]");
  const double floor = a / 2.0;  // value at h = 1, the minimum on [1, inf)
  if (target < floor)
    throw std::domain_error("invert_flow_potential: target below value at h = 1");
  if (target == floor) return 1.0;

  double lo = 1.0, hi = 2.0;
  while (flow_potential(hi, a) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (flow_potential(mid, a) < target ? lo : hi) = mid;
  }
  double h = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double slope = flow_potential_slope(h, a);
    if (slope <= 0.0) break;  // only at h = 1 with a = 1
    const double step = (flow_potential(h, a) - target) / slope;
    h = std::max(h - step, 1.0);
    if (std::abs(step) <= 1e-16 * h) break;
  }
  return h;
}

FlowClass classify_flow(double g_value, double j) {
  if (!(g_value > 0.0)) throw std::domain_error("classify_flow: g must be positive");
  if (std::abs(g_value - j) <= 1e-14) return FlowClass::Sonic;
  return g_value > j ? FlowClass::Subsonic : FlowClass::Supersonic;
}

double electric_field(double r, double g, double g_r, double theta, double j) {
  if (!(r > 0.0)) throw std::domain_error("electric_field: r must be positive");
  if (!(g > 0.0)) throw std::domain_error("electric_field: g must be positive");
  return (1.0 / g - j * j / (g * g * g)) * g_r + theta * j / g - 2.0 / r;
}

double scaled_density(double rho, double r) {
  if (!(rho > 0.0) || !(r > 0.0))
    throw std::domain_error("scaled_density: inputs must be positive");
  return r * r * rho;
}

double physical_density(double g, double r) {
  if (!(g > 0.0) || !(r > 0.0))
    throw std::domain_error("physical_density: inputs must be positive");
  return g / (r * r);
}

DopingProfile DopingProfile::constant(double level) {
  DopingProfile p;
  p.kind_ = Kind::Constant;
  p.base_ = level;
  return p;
}

DopingProfile DopingProfile::piecewise_linear(std::vector<double> breakpoints,
                                              std::vector<double> values) {
  if (breakpoints.size() < 2 || breakpoints.size() != values.size())
    throw std::invalid_argument("doping: need matching breakpoints/values, at least two");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("doping: breakpoints must be strictly increasing");
  DopingProfile p;
  p.kind_ = Kind::PiecewiseLinear;
  p.breakpoints_ = std::move(breakpoints);
  p.values_ = std::move(values);
  return p;
}

DopingProfile DopingProfile::bump(double base, double level, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("doping: bump interval must have lo < hi");
  DopingProfile p;
  p.kind_ = Kind::Bump;
  p.base_ = base;
  p.level_ = level;
  p.lo_ = lo;
  p.hi_ = hi;
  return p;
}

double DopingProfile::value(double r) const {
  switch (kind_) {
    case Kind::Constant:
      return base_;
    case Kind::Bump:
      // right-continuous: the bump level holds on [lo, hi)
      return (r >= lo_ && r < hi_) ? level_ : base_;
    case Kind::PiecewiseLinear: {
      if (r <= breakpoints_.front()) return values_.front();
      if (r >= breakpoints_.back()) return values_.back();
      const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
      const std::size_t hi = static_cast<std::size_t>(it - breakpoints_.begin());
      const double t = (r - breakpoints_[hi - 1]) / (breakpoints_[hi] - breakpoints_[hi - 1]);
      return values_[hi - 1] + t * (values_[hi] - values_[hi - 1]);
    }
  }
  return base_;
}

double DopingProfile::sup() const {
  switch (kind_) {
    case Kind::Constant:
      return base_;
    case Kind::Bump:
      return std::max(base_, level_);
    case Kind::PiecewiseLinear:
      return *std::max_element(values_.begin(), values_.end());
  }
  return base_;
}

double DopingProfile::inf() const {
  switch (kind_) {
    case Kind::Constant:
      return base_;
    case Kind::Bump:
      return std::min(base_, level_);
    case Kind::PiecewiseLinear:
      return *std::min_element(values_.begin(), values_.end());
  }
  return base_;
}

void DopingProfile::validate(double epsilon0) const {
  if (!std::isfinite(value(epsilon0)) || !std::isfinite(value(1.0)))
    throw std::invalid_argument("doping: profile must be finite");
  if (kind_ == Kind::Bump) {
    if (lo_ < epsilon0 - 1e-15 || hi_ > 1.0 + 1e-15)
      throw std::invalid_argument("doping: bump interval must lie within [epsilon0, 1]");
  }
  if (kind_ == Kind::PiecewiseLinear) {
    if (breakpoints_.front() < epsilon0 - 1e-15 || breakpoints_.back() > 1.0 + 1e-15)
      throw std::invalid_argument("doping: breakpoints must lie within [epsilon0, 1]");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("doping: values must be finite");
  }
}

void ProblemSpec::validate() const {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
    throw std::invalid_argument("epsilon0 must lie in (0, 1)");
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be nonnegative");
  if (!(j > 0.0 && j <= 1.0)) throw std::invalid_argument("j must lie in (0, 1]");
  if (!(eta0 > 1.0)) throw std::invalid_argument("eta0 must exceed 1");
  if (!(m_lower > 1.0)) throw std::invalid_argument("m_lower must exceed 1");
  doping.validate(epsilon0);
}

}  // namespace eup
