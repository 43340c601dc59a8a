#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fucik/weights.hpp"

namespace fucik {

/// Sign of u'(0): the branch label of a half-eigenvalue.
enum class Sign { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// Numerical failure in the shooting/bisection pipeline (as opposed to
/// invalid inputs, which throw std::invalid_argument).
class SolveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Instantaneous shooting state: position, solution value and slope, the
/// interior zeros found so far, and the sign of u on the current nodal piece.
struct ShootState {
  double x = 0.0;
  double u = 0.0;
  double du = 1.0;
  std::vector<double> zeros_found;
  int current_sign = +1;  // +1: u > 0 on the current piece, -1: u < 0
};

/// One constant-frequency piece of the solution: on [x0, x1] the solution is
/// u(x) = u0 cos(w (x-x0)) + (du0/w) sin(w (x-x0)).
struct Segment {
  double x0, x1;
  double omega;
  double u0, du0;

  double value(double x) const {
    const double s = x - x0;
    return u0 * std::cos(omega * s) + du0 / omega * std::sin(omega * s);
  }
  double slope(double x) const {
    const double s = x - x0;
    return -u0 * omega * std::sin(omega * s) + du0 * std::cos(omega * s);
  }
};

/// Result of shooting across [0, ell]: interior zeros in (0, ell), the end
/// state, and the per-piece sinusoid descriptors. trajectory_scale is the
/// largest within-cell amplitude sqrt(u0^2 + (u0'/w)^2); end_closed tells
/// whether |u(ell)| is zero at that scale (the boundary condition holds).
struct ShootResult {
  std::vector<double> zeros;
  double end_value = 0.0;
  double end_slope = 0.0;
  int nodal_count = 0;
  double trajectory_scale = 0.0;
  bool end_closed = false;
  std::vector<Segment> segments;
};

namespace detail {

// Distance from the piece start to the first zero of
// u(s) = u0 cos(w s) + (du0/w) sin(w s), s > 0. Writing u = A cos(w s - phi)
// with phi = atan2(du0/w, u0), the zeros sit at w s = phi + pi/2 + j pi; the
// principal branch is shifted to the smallest positive root. Two safeguarded
// Newton steps polish the root to machine precision.
inline double first_zero_distance(double u0, double du0, double omega) {
  double s;
  if (u0 == 0.0) {
    s = M_PI / omega;  // consecutive zeros of a pure sinusoid
  } else {
    const double phi = std::atan2(du0 / omega, u0);
    double q = std::fmod(phi + M_PI / 2.0, M_PI);
    if (q <= 1e-15) q += M_PI;
    s = q / omega;
  }
  for (int it = 0; it < 2; ++it) {
    const double f = u0 * std::cos(omega * s) + du0 / omega * std::sin(omega * s);
    const double fp = -u0 * omega * std::sin(omega * s) + du0 * std::cos(omega * s);
    if (fp == 0.0) break;
    double step = f / fp;
    // keep the iterate inside (0, pi/w]: a zero is guaranteed there
    const double cap = M_PI / omega;
    if (s - step <= 0.0 || s - step > cap) break;
    s -= step;
  }
  return s;
}

}  // namespace detail

/// Propagates the state across one constant-weight piece with frequency
/// omega = sqrt(lambda * weight). Returns the state either at cell_end or at
/// the first interior zero inside the cell, whichever comes first; hit_zero
/// tells which. The energy form w^2 u^2 + (u')^2 is conserved exactly by the
/// closed-form update.
struct PropagateOutcome {
  ShootState state;
  bool hit_zero = false;
};

inline PropagateOutcome propagate_cell(const ShootState& state, double cell_end,
                                       double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(cell_end > state.x))
    throw std::invalid_argument("cell_end must exceed state.x");
  PropagateOutcome out{state, false};
  const double s_zero = detail::first_zero_distance(state.u, state.du, omega);
  const double span = cell_end - state.x;
  // a zero a rounding error past the wall is the same event as one on it;
  // missing it would desynchronize the branch bookkeeping
  const bool hit = s_zero <= span * (1.0 + 1e-12);
  const double s = hit ? s_zero : span;
  const double c = std::cos(omega * s), sn = std::sin(omega * s);
  const double u1 = state.u * c + state.du / omega * sn;
  const double du1 = -state.u * omega * sn + state.du * c;
  if (hit) {
    out.hit_zero = true;
    out.state.x = state.x + s_zero;
    out.state.u = 0.0;
    out.state.du = du1;
    out.state.zeros_found.push_back(out.state.x);
    out.state.current_sign = -state.current_sign;
  } else {
    out.state.x = cell_end;
    out.state.u = u1;
    out.state.du = du1;
  }
  return out;
}

namespace detail {

// Event-driven walk: pieces end at weight breakpoints (union of both weight
// grids) or at zeros of u. A zero landing within fuzz of a breakpoint is one
// event: the branch flips and the cell indices advance together, so no
// zero-length cell is ever propagated.
struct Walk {
  const ScaledWeight& m;
  const ScaledWeight& n;
  double lambda;
  double t;
  double fuzz;

  ShootState state;
  long im = 0, in = 0;
  std::vector<Segment>* segments = nullptr;

  double scale_u = 0.0, scale_du = 0.0, scale_amp = 0.0;

  Walk(const ScaledWeight& m_, const ScaledWeight& n_, double lambda_,
       double t_, Sign sign, double fuzz_)
      : m(m_), n(n_), lambda(lambda_), t(t_), fuzz(fuzz_) {
    state.du = (sign == Sign::plus) ? 1.0 : -1.0;
    state.current_sign = (sign == Sign::plus) ? +1 : -1;
    scale_du = 1.0;
  }

  double omega() const {
    const double w = (state.current_sign > 0) ? m.cell_value(im)
                                              : t * n.cell_value(in);
    return std::sqrt(lambda * w);
  }

  void sync_cells() {
    while (m.cell_end(im) <= state.x + fuzz) ++im;
    while (n.cell_end(in) <= state.x + fuzz) ++in;
  }

  // advance to the next event (zero or cell wall), not beyond x_max
  void step(double x_max) {
    const double end =
        std::min({m.cell_end(im), n.cell_end(in), x_max});
    const double w = omega();
    const double x0 = state.x, u0 = state.u, du0 = state.du;
    PropagateOutcome out = propagate_cell(state, end, w);
    state = std::move(out.state);
    if (segments)
      segments->push_back(Segment{x0, state.x, w, u0, du0});
    scale_amp = std::max(scale_amp, std::hypot(u0, du0 / w));
    scale_u = std::max(scale_u, std::abs(state.u));
    scale_du = std::max(scale_du, std::abs(state.du));
    if (std::abs(state.u) < 1e-14 * scale_u &&
        std::abs(state.du) < 1e-14 * scale_du)
      throw SolveError("degenerate trajectory: |u| and |u'| both below "
                       "1e-14 of trajectory scale");
    if (state.u != 0.0 &&
        (state.u > 0.0 ? +1 : -1) != state.current_sign)
      throw SolveError("branch desynchronization: zero crossing missed");
    sync_cells();
  }
};

}  // namespace detail

/// Integrates -u'' = lambda (m u+ - t n u-) from u(0) = 0, u'(0) = +-1 across
/// [0, ell], switching frequency branch at every zero crossing and splitting
/// pieces at every weight breakpoint. Weights are evaluated through their
/// scaled step structure; both must share the domain [0, ell].
inline ShootResult shoot(double lambda, double t, Sign sign,
                         const ScaledWeight& m, const ScaledWeight& n,
                         double ell, bool record_segments = false) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
  const double fuzz = 1e-13 * ell;
  detail::Walk walk(m, n, lambda, t, sign, fuzz);
  ShootResult res;
  if (record_segments) walk.segments = &res.segments;
  while (walk.state.x < ell - fuzz) walk.step(ell);
  res.end_value = walk.state.u;
  res.end_slope = walk.state.du;
  res.trajectory_scale = walk.scale_amp;
  res.zeros = std::move(walk.state.zeros_found);
  // a zero recorded at ell itself is the boundary zero, not an interior one
  while (!res.zeros.empty() && res.zeros.back() >= ell - fuzz) {
    res.end_value = 0.0;
    res.zeros.pop_back();
  }
  res.end_closed = std::abs(res.end_value) <= 1e-9 * res.trajectory_scale;
  // domains fully contained in (0, ell): the piece after the last zero only
  // counts when the trajectory closes at the boundary
  res.nodal_count = static_cast<int>(res.zeros.size()) + (res.end_closed ? 1 : 0);
  return res;
}

/// Position of the k-th zero z_k(lambda) of the shooting solution, integrating
/// past ell if necessary with both weights extended periodically. Strictly
/// decreasing and continuous in lambda. Fails if the k-th zero would exceed
/// the safety cap; the overload without a cap uses 4 ell sqrt(lambda_hi /
/// lambda) with lambda_hi from the Sturm bracket of the declared bounds.
inline double kth_zero(double lambda, int k, double t, Sign sign,
                       const ScaledWeight& m, const ScaledWeight& n,
                       double cap) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
  const double ell = m.ell();
  const double fuzz = 1e-13 * std::max(ell, cap);
  detail::Walk walk(m, n, lambda, t, sign, fuzz);
  while (static_cast<int>(walk.state.zeros_found.size()) < k) {
    if (walk.state.x > cap)
      throw SolveError("kth_zero: safety cap exceeded before finding zero " +
                       std::to_string(k));
    walk.step(cap * 2.0);
  }
  return walk.state.zeros_found.back();
}

}  // namespace fucik
