#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fucik {

/// An ell-periodic positive step function given by its breakpoints and cell
/// values on one period: value c_i on [x_{i-1}, x_i) with
/// 0 = x_0 < x_1 < ... < x_N = period. Cells are half-open on the right, so
/// evaluation at a breakpoint yields the right-limit value.
///
/// Every value must lie in the declared global bounds [a, b]; by default the
/// bounds are tightened to the min/max of the values. The bounds feed the
/// Sturm brackets in the spectrum solver, so a weight constructed with wider
/// declared bounds still produces valid (just looser) brackets.
class PiecewiseConstantWeight {
public:
  PiecewiseConstantWeight(std::vector<double> breakpoints,
                          std::vector<double> values)
      : PiecewiseConstantWeight(std::move(breakpoints), std::move(values),
                                0.0, 0.0, /*bounds_from_values=*/true) {}

  PiecewiseConstantWeight(std::vector<double> breakpoints,
                          std::vector<double> values, double bound_lo,
                          double bound_hi)
      : PiecewiseConstantWeight(std::move(breakpoints), std::move(values),
                                bound_lo, bound_hi,
                                /*bounds_from_values=*/false) {}

  static PiecewiseConstantWeight constant(double c, double period = 1.0) {
    return PiecewiseConstantWeight({0.0, period}, {c});
  }

  double period() const { return breakpoints_.back(); }
  std::size_t cell_count() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double bound_lo() const { return bound_lo_; }
  double bound_hi() const { return bound_hi_; }

  /// Step value at y in [0, period); y outside is reduced periodically.
  double value(double y) const {
    double r = std::fmod(y, period());
    if (r < 0) r += period();
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    if (i == 0) return values_.front();
    if (i > values_.size()) return values_.back();
    return values_[i - 1];
  }

  /// Mean value (1/period) * integral over one period; lies in [a, b].
  double average() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      s += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    return s / period();
  }

  /// Multiplies every value by s > 0 (bounds follow). Used by the
  /// homogeneity and scaling-covariance checks.
  PiecewiseConstantWeight scaled_values(double s) const {
    if (!(s > 0.0))
      throw std::invalid_argument("weight value scale must be positive");
    std::vector<double> v = values_;
    for (double& c : v) c *= s;
    return PiecewiseConstantWeight(breakpoints_, std::move(v), bound_lo_ * s,
                                   bound_hi_ * s);
  }

private:
  PiecewiseConstantWeight(std::vector<double> breakpoints,
                          std::vector<double> values, double bound_lo,
                          double bound_hi, bool bounds_from_values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2)
      throw std::invalid_argument("weight needs at least two breakpoints");
    if (breakpoints_.front() != 0.0)
      throw std::invalid_argument("first breakpoint must be 0");
    if (!(breakpoints_.back() > 0.0))
      throw std::invalid_argument("period must be positive");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
      if (!(breakpoints_[i] > breakpoints_[i - 1]))
        throw std::invalid_argument("breakpoints must be strictly increasing");
    if (values_.size() + 1 != breakpoints_.size())
      throw std::invalid_argument("values must have one entry per cell");
    for (double c : values_)
      if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("weight values must be positive finite");
    if (bounds_from_values) {
      bound_lo_ = *std::min_element(values_.begin(), values_.end());
      bound_hi_ = *std::max_element(values_.begin(), values_.end());
    } else {
      bound_lo_ = bound_lo;
      bound_hi_ = bound_hi;
      if (!(bound_lo_ > 0.0) || !(bound_hi_ >= bound_lo_))
        throw std::invalid_argument("weight bounds must satisfy 0 < a <= b");
      for (double c : values_)
        if (c < bound_lo_ || c > bound_hi_)
          throw std::invalid_argument(
              "weight value " + std::to_string(c) +
              " outside declared bounds [a, b]");
    }
  }

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double bound_lo_ = 0.0;
  double bound_hi_ = 0.0;
};

/// The rescaled weight x -> base(x/eps), realized as a step function on
/// [0, ell] and extended (eps * period)-periodically beyond ell.
///
/// The base period and the domain length are independent parameters: with
/// base period T, the realized function has period eps*T, so ell/(eps*T)
/// copies of the pattern fit in the domain (the final partial copy is
/// truncated at ell when that ratio is not an integer).
///
/// Cells of the extension are addressed by a global index i >= 0 with
/// i = q*N + r (q-th period copy, r-th base cell); all cell walls are
/// computed from (q, r) directly, never re-derived from a coordinate, which
/// keeps the propagation loop immune to fmod rounding at walls that are not
/// binary-representable.
class ScaledWeight {
public:
  ScaledWeight(PiecewiseConstantWeight base, double epsilon, double ell)
      : base_(std::move(base)), epsilon_(epsilon), ell_(ell) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
      throw std::invalid_argument("epsilon must be positive");
    if (!(ell > 0.0) || !std::isfinite(ell))
      throw std::invalid_argument("ell must be positive");
    realize();
  }

  const PiecewiseConstantWeight& base() const { return base_; }
  double epsilon() const { return epsilon_; }
  double ell() const { return ell_; }
  double bound_lo() const { return base_.bound_lo(); }
  double bound_hi() const { return base_.bound_hi(); }

  /// Realized breakpoints on [0, ell]; last entry is exactly ell.
  const std::vector<double>& realized_breakpoints() const { return walls_; }
  const std::vector<double>& realized_values() const { return cell_values_; }

  /// Right-limit step value at x in [0, ell].
  double value_at(double x) const {
    if (!(x >= 0.0) || !(x <= ell_))
      throw std::invalid_argument("value_at: x outside [0, ell]");
    auto it = std::upper_bound(walls_.begin(), walls_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - walls_.begin());
    if (i == 0) return cell_values_.front();
    if (i > cell_values_.size()) {
      // x == ell on a pattern wall: periodic extension value (right limit)
      return cell_value(cell_count_to_ell_);
    }
    return cell_values_[i - 1];
  }

  // --- extension cell addressing (valid for all x >= 0) ---

  /// End coordinate of extension cell i.
  double cell_end(long i) const {
    const long n = static_cast<long>(base_.cell_count());
    const long q = (i >= 0) ? i / n : -((-i + n - 1) / n);
    const long r = i - q * n;
    return (static_cast<double>(q) * base_.period() +
            base_.breakpoints()[static_cast<std::size_t>(r) + 1]) *
           epsilon_;
  }

  /// Value on extension cell i.
  double cell_value(long i) const {
    const long n = static_cast<long>(base_.cell_count());
    long r = i % n;
    if (r < 0) r += n;
    return base_.values()[static_cast<std::size_t>(r)];
  }

private:
  void realize() {
    const double cells_needed =
        ell_ / (epsilon_ * base_.period()) * static_cast<double>(base_.cell_count());
    if (cells_needed > 1e7)
      throw std::invalid_argument(
          "epsilon too small relative to ell (realized weight would exceed "
          "1e7 cells)");
    walls_.push_back(0.0);
    long i = 0;
    const double fuzz = 1e-12 * ell_;
    for (;; ++i) {
      double e = cell_end(i);
      if (e >= ell_ - fuzz) {
        walls_.push_back(ell_);
        cell_values_.push_back(cell_value(i));
        // ell exactly on a pattern wall: the right limit lives in cell i+1;
        // a truncated partial cell keeps its own value at ell
        cell_count_to_ell_ = (e <= ell_ + fuzz) ? i + 1 : i;
        break;
      }
      walls_.push_back(e);
      cell_values_.push_back(cell_value(i));
    }
  }

  PiecewiseConstantWeight base_;
  double epsilon_;
  double ell_;
  std::vector<double> walls_;        // realized breakpoints, [0, ..., ell]
  std::vector<double> cell_values_;  // one per realized cell
  long cell_count_to_ell_ = 0;
};

inline double average(const PiecewiseConstantWeight& w) { return w.average(); }

inline ScaledWeight scale(const PiecewiseConstantWeight& w, double epsilon,
                          double ell) {
  return ScaledWeight(w, epsilon, ell);
}

}  // namespace fucik
