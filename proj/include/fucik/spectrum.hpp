#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fucik/parallel.hpp"
#include "fucik/shooting.hpp"
#include "fucik/weights.hpp"

namespace fucik {

/// Sturm bracket for lambda_{k,t}^{+-}: any half-eigenvalue of weights
/// bounded in [a, b] lies in [lambda_lo, lambda_hi], with
/// z_k(lambda_lo) >= ell >= z_k(lambda_hi).
struct Bracket {
  double lambda_lo;
  double lambda_hi;
};

/// lambda_hi = k^2 pi^2 / (ell^2 a min(1,t)): the largest nodal domain has
/// length >= ell/k and its one-sided eigenvalue is Sturm-bounded by the
/// weight floor a. lambda_lo is the mirrored comparison against the ceiling b
/// on the smallest domain.
inline Bracket bracket(int k, double t, Sign /*sign*/, double a, double b,
                       double ell) {
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(a > 0.0) || !(b >= a))
    throw std::invalid_argument("weight bounds must satisfy 0 < a <= b");
  if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
  const double kk = static_cast<double>(k) * static_cast<double>(k);
  const double pi2 = M_PI * M_PI;
  return Bracket{kk * pi2 / (ell * ell * b * std::max(1.0, t)),
                 kk * pi2 / (ell * ell * a * std::min(1.0, t))};
}

/// A solved half-eigenpair of -u'' = lambda (m u+ - t n u-) on (0, ell):
/// the k-th eigenvalue on the branch with sign(u'(0)) = sign, the Fucik point
/// (alpha, beta) = (lambda, t lambda), and the eigenfunction as a list of
/// per-cell sinusoids plus its interior zeros. epsilon is empty for
/// limit-problem (constant-weight) eigenpairs.
struct HalfEigenvalue {
  int k = 1;
  Sign sign = Sign::plus;
  double t = 1.0;
  double lambda = 0.0;
  double ell = 0.0;
  std::optional<double> epsilon;
  std::vector<double> zeros;       // k-1 interior zeros in (0, ell)
  std::vector<Segment> segments;   // piecewise sinusoid descriptor

  double alpha() const { return lambda; }
  double beta() const { return t * lambda; }

  double value(double x) const {
    for (const auto& s : segments)
      if (x <= s.x1) return s.value(x);
    return segments.back().value(x);
  }
  double slope(double x) const {
    for (const auto& s : segments)
      if (x <= s.x1) return s.slope(x);
    return segments.back().slope(x);
  }
};

namespace detail {

inline double zero_cap(double ell, double lambda_hi, double lambda) {
  return 4.0 * ell * std::sqrt(lambda_hi / lambda);
}

}  // namespace detail

inline double kth_zero(double lambda, int k, double t, Sign sign,
                       const ScaledWeight& m, const ScaledWeight& n) {
  const double a = std::min(m.bound_lo(), n.bound_lo());
  const double b = std::max(m.bound_hi(), n.bound_hi());
  const Bracket br = bracket(k, t, sign, a, b, m.ell());
  return kth_zero(lambda, k, t, sign, m, n,
                  detail::zero_cap(m.ell(), br.lambda_hi, lambda));
}

/// Solves z_k(lambda) = ell by bisection. z_k is strictly decreasing, so the
/// root is unique; the bracket must straddle it (it does whenever the weights
/// really lie within their declared bounds). Pure bisection: g has no usable
/// derivative across branch switches. Converges to relative width tol,
/// capped at 200 iterations.
inline HalfEigenvalue solve_half_eigenvalue(
    int k, double t, Sign sign, const ScaledWeight& m, const ScaledWeight& n,
    double ell, double tol = 1e-12,
    std::optional<Bracket> bracket_override = std::nullopt) {
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double a = std::min(m.bound_lo(), n.bound_lo());
  const double b = std::max(m.bound_hi(), n.bound_hi());
  Bracket br = bracket_override ? *bracket_override
                                : bracket(k, t, sign, a, b, ell);
  double lo = br.lambda_lo, hi = br.lambda_hi;

  const auto g = [&](double lam) {
    return kth_zero(lam, k, t, sign, m, n,
                    detail::zero_cap(ell, br.lambda_hi, lam)) -
           ell;
  };

  if (hi - lo > tol * hi) {
    const double slack = 1e-9 * ell;
    if (g(lo) < -slack || g(hi) > slack)
      throw SolveError(
          "bracket endpoints do not straddle the root (weight bounds a, b "
          "misdeclared?)");
    int it = 0;
    for (; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) >= 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= tol * mid) break;
    }
    if (it == 200 && hi - lo > tol * (0.5 * (lo + hi)))
      throw SolveError("bisection failed to converge within 200 iterations");
  }

  HalfEigenvalue e;
  e.k = k;
  e.sign = sign;
  e.t = t;
  e.lambda = 0.5 * (lo + hi);
  e.ell = ell;
  e.epsilon = m.epsilon();
  ShootResult res = shoot(e.lambda, t, sign, m, n, ell, /*record_segments=*/true);
  if (std::abs(res.end_value) > 1e-8 * res.trajectory_scale)
    throw SolveError("converged lambda does not close the boundary condition");
  // the k-th zero is the boundary; bisection may park it a bracket-width
  // inside ell, in which case it was recorded as interior
  const double merge = std::max(1e-13, 10.0 * tol) * ell;
  if (static_cast<int>(res.zeros.size()) == k && ell - res.zeros.back() <= merge)
    res.zeros.pop_back();
  if (static_cast<int>(res.zeros.size()) != k - 1)
    throw SolveError("eigenfunction has " + std::to_string(res.zeros.size()) +
                     " interior zeros, expected " + std::to_string(k - 1));
  e.zeros = std::move(res.zeros);
  e.segments = std::move(res.segments);
  return e;
}

/// Closed form for the constant-weight limit problem
/// -u'' = lambda (mbar u+ - t nbar u-): with p positive humps of length
/// pi/sqrt(lambda mbar) and q negative humps of length pi/sqrt(lambda t nbar)
/// filling (0, ell),
///   lambda = (pi/ell)^2 (p/sqrt(mbar) + q/sqrt(t nbar))^2,
/// where sign + starts positive so p = ceil(k/2), q = floor(k/2), and sign -
/// swaps the counts.
inline HalfEigenvalue limit_half_eigenvalue(int k, double t, Sign sign,
                                            double m_bar, double n_bar,
                                            double ell) {
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(m_bar > 0.0) || !(n_bar > 0.0))
    throw std::invalid_argument("weight means must be positive");
  if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
  const int p = (sign == Sign::plus) ? (k + 1) / 2 : k / 2;
  const int q = k - p;
  const double root = p / std::sqrt(m_bar) + q / std::sqrt(t * n_bar);
  HalfEigenvalue e;
  e.k = k;
  e.sign = sign;
  e.t = t;
  e.ell = ell;
  e.lambda = (M_PI / ell) * (M_PI / ell) * root * root;

  const double w_pos = std::sqrt(e.lambda * m_bar);
  const double w_neg = std::sqrt(e.lambda * t * n_bar);
  double x = 0.0;
  double du = (sign == Sign::plus) ? 1.0 : -1.0;
  int cur = (sign == Sign::plus) ? +1 : -1;
  for (int j = 0; j < k; ++j) {
    const double w = (cur > 0) ? w_pos : w_neg;
    const double len = M_PI / w;
    e.segments.push_back(Segment{x, x + len, w, 0.0, du});
    x += len;
    if (j + 1 < k) e.zeros.push_back(x);
    du = -du;  // u' is continuous; each half-wave flips the boundary slope
    cur = -cur;
  }
  return e;
}

/// The trivial Fucik curves are vertical/horizontal lines through the first
/// weighted Dirichlet eigenvalues: C_0^+ = {lambda_1^m} x R and
/// C_0^- = R x {lambda_1^n}.
inline std::pair<double, double> trivial_curves(const ScaledWeight& m,
                                                const ScaledWeight& n,
                                                double ell, double tol = 1e-12) {
  const double lm =
      solve_half_eigenvalue(1, 1.0, Sign::plus, m, m, ell, tol).lambda;
  const double ln =
      solve_half_eigenvalue(1, 1.0, Sign::plus, n, n, ell, tol).lambda;
  return {lm, ln};
}

/// One traced point of C_k^{sigma}: failures are recorded, not thrown, so a
/// partially traced curve still comes back.
struct CurvePoint {
  double t = 0.0;
  double lambda = 0.0;
  bool ok = false;
  std::string error;

  double alpha() const { return lambda; }
  double beta() const { return t * lambda; }
};

/// Default t grid: 33 log-spaced points over [1/16, 16], covering both cone
/// halves symmetrically.
inline std::vector<double> default_t_grid() {
  std::vector<double> g;
  const int n = 33;
  for (int i = 0; i < n; ++i)
    g.push_back(std::exp2(-4.0 + 8.0 * i / (n - 1)));
  return g;
}

/// Traces C_k^{sigma} over a sorted positive t grid as the point set
/// (lambda_{k,t}, t lambda_{k,t}). Points solve in parallel; output order
/// follows the grid regardless of completion order.
inline std::vector<CurvePoint> trace_curve(int k, Sign sign,
                                           const ScaledWeight& m,
                                           const ScaledWeight& n, double ell,
                                           const std::vector<double>& t_grid,
                                           double tol = 1e-12) {
  if (t_grid.empty()) throw std::invalid_argument("t_grid must be non-empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0))
      throw std::invalid_argument("t_grid values must be positive");
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw std::invalid_argument("t_grid must be sorted ascending");
  }
  return parallel_map<CurvePoint>(t_grid.size(), [&](std::size_t i) {
    CurvePoint p;
    p.t = t_grid[i];
    try {
      p.lambda = solve_half_eigenvalue(k, p.t, sign, m, n, ell, tol).lambda;
      p.ok = true;
    } catch (const std::exception& ex) {
      p.error = ex.what();
    }
    return p;
  });
}

/// Relative residual of the reflection identity
/// t lambda_{k,t}^{sigma}(m, n) = lambda_{k,1/t}^{-sigma}(n, m): substituting
/// v = -u turns one problem into the other.
inline double symmetry_check(int k, double t, Sign sign, const ScaledWeight& m,
                             const ScaledWeight& n, double ell,
                             double tol = 1e-12) {
  const double left =
      t * solve_half_eigenvalue(k, t, sign, m, n, ell, tol).lambda;
  const double right =
      solve_half_eigenvalue(k, 1.0 / t, flip(sign), n, m, ell, tol).lambda;
  return std::abs(left - right) / left;
}

}  // namespace fucik
