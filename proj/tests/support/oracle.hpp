#pragma once

// Independent fine-grid oracle for the half-eigenvalue problem
//   -u'' = lambda (m(x/eps) u+ - t n(x/eps) u-),  u(0) = 0, u'(0) = +-1.
//
// Classical RK4 time-stepping on a uniform grid (>= 1e5 base steps) with
// substeps split exactly at weight breakpoints and at sign-change events;
// zeros are located by bisecting the crossing substep. Eigenvalues come from
// bisection on z_k(lambda) = ell. Shares nothing with the library's
// closed-form cell propagation beyond the problem statement, so agreement is
// evidence, not tautology.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Weight {
  std::vector<double> breakpoints;  // 0 = x0 < ... < xN = period
  std::vector<double> values;
  double eps = 1.0;

  double period() const { return breakpoints.back() * eps; }

  // value at y (any y >= 0), reduced into the base period
  double at(double y) const {
    double r = std::fmod(y / eps, breakpoints.back());
    if (r < 0) r += breakpoints.back();
    std::size_t i = 0;
    while (i + 1 < values.size() && r >= breakpoints[i + 1]) ++i;
    return values[i];
  }

  // smallest scaled breakpoint strictly greater than x
  double next_wall(double x) const {
    const double T = breakpoints.back();
    double q = std::floor(x / (T * eps));
    for (;;) {
      for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double cand = (q * T + breakpoints[i]) * eps;
        if (cand > x * (1.0 + 1e-15) + 1e-300) return cand;
      }
      q += 1.0;
    }
  }
};

namespace detail {

struct State {
  double u, du;
};

// one RK4 step of u'' = -w2 u
inline State rk4(State s, double w2, double h) {
  const auto f = [w2](State y) { return State{y.du, -w2 * y.u}; };
  const State k1 = f(s);
  const State k2 = f({s.u + 0.5 * h * k1.u, s.du + 0.5 * h * k1.du});
  const State k3 = f({s.u + 0.5 * h * k2.u, s.du + 0.5 * h * k2.du});
  const State k4 = f({s.u + h * k3.u, s.du + h * k3.du});
  return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
          s.du + h / 6.0 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du)};
}

}  // namespace detail

struct Problem {
  Weight m, n;
  double t = 1.0;
  int sign = +1;
  double lambda = 1.0;
};

// position of the k-th zero of u, or a negative value if the cap is exceeded
inline double kth_zero(const Problem& p, int k, double cap,
                       int base_steps = 200000) {
  const double h0 = cap / base_steps;
  double x = 0.0;
  detail::State s{0.0, p.sign > 0 ? 1.0 : -1.0};
  bool positive = p.sign > 0;
  int zeros = 0;
  while (x <= cap) {
    double end = std::min({x + h0, p.m.next_wall(x), p.n.next_wall(x)});
    const double mid = 0.5 * (x + end);
    const double w2 =
        p.lambda * (positive ? p.m.at(mid) : p.t * p.n.at(mid));
    const double h = end - x;
    detail::State s1 = detail::rk4(s, w2, h);
    if (s.u != 0.0 && s1.u != 0.0 && (s.u > 0) != (s1.u > 0)) {
      double lo = 0.0, hi = h;
      for (int it = 0; it < 80; ++it) {
        const double smid = 0.5 * (lo + hi);
        const detail::State sm = detail::rk4(s, w2, smid);
        if (sm.u == 0.0) {
          lo = hi = smid;
          break;
        }
        if ((sm.u > 0) == (s.u > 0))
          lo = smid;
        else
          hi = smid;
      }
      const double sz = 0.5 * (lo + hi);
      const detail::State at_zero = detail::rk4(s, w2, sz);
      x += sz;
      s = {0.0, at_zero.du};
      positive = !positive;
      if (++zeros == k) return x;
    } else {
      x = end;
      s = s1;
    }
  }
  return -1.0;
}

// half-eigenvalue by bisection on z_k = ell over the Sturm bracket
inline double solve(const Weight& m, const Weight& n, int k, double t,
                    int sign, double ell, double a, double b,
                    int base_steps = 200000) {
  double lo = k * k * M_PI * M_PI / (ell * ell * b * std::max(1.0, t));
  double hi = k * k * M_PI * M_PI / (ell * ell * a * std::min(1.0, t));
  const double cap = 4.0 * ell * std::sqrt(hi / lo);
  Problem p{m, n, t, sign, 0.0};
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    p.lambda = mid;
    const double z = kth_zero(p, k, cap, base_steps);
    if (z < 0.0 || z > ell)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * mid) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
