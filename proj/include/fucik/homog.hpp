#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fucik/parallel.hpp"
#include "fucik/spectrum.hpp"
#include "fucik/weights.hpp"

namespace fucik {

/// Rate prefactor gamma(t) = max(t^{-3/2}, t^{1/2}) of the quantitative
/// homogenization bound; equals 1 at t = 1.
inline double gamma(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  return std::max(std::pow(t, -1.5), std::sqrt(t));
}

/// Epsilon-sweep experiment description. Defaults: eps = ell/j for
/// j in {4, 8, ..., 256} (integer period fit keeps boundary truncation out of
/// the rate measurement), both signs, solver tolerance 1e-12.
struct ExperimentConfig {
  PiecewiseConstantWeight m = PiecewiseConstantWeight::constant(1.0);
  PiecewiseConstantWeight n = PiecewiseConstantWeight::constant(1.0);
  double ell = 1.0;
  std::vector<int> k_list = {1, 2, 3, 4, 5, 6};
  std::vector<double> t_list = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<Sign> signs = {Sign::plus, Sign::minus};
  std::vector<double> epsilon_list;  // empty: geometric default
  double tol = 1e-12;
  std::string out_dir;
  bool t_list_explicit = false;  // set when a config file supplied t_list

  std::vector<double> epsilons() const {
    if (!epsilon_list.empty()) return epsilon_list;
    std::vector<double> v;
    for (int j = 4; j <= 256; j *= 2) v.push_back(ell / j);
    return v;
  }

  void validate() const {
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    if (k_list.empty()) throw std::invalid_argument("k_list must be non-empty");
    for (int k : k_list)
      if (k < 1) throw std::invalid_argument("k_list entries must be >= 1");
    if (t_list.empty()) throw std::invalid_argument("t_list must be non-empty");
    for (double t : t_list)
      if (!(t > 0.0)) throw std::invalid_argument("t_list entries must be positive");
    for (double e : epsilon_list)
      if (!(e > 0.0))
        throw std::invalid_argument("epsilon_list entries must be positive");
    if (signs.empty()) throw std::invalid_argument("signs must be non-empty");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  }
};

struct RateRow {
  double epsilon = 0.0;
  double lambda_eps = 0.0;
  double lambda_0 = 0.0;
  double abs_err = 0.0;
  bool ok = false;
  std::string error;
};

/// Per-(k, t, sign) series: rows sorted by decreasing epsilon, the fitted
/// log-log slope/intercept over rows above the noise floor, and the empirical
/// constant C_emp = max over rows of err / (eps (k/ell)^3 gamma(t)).
struct RateSeries {
  int k = 1;
  Sign sign = Sign::plus;
  double t = 1.0;
  double lambda_0 = 0.0;
  std::vector<RateRow> rows;
  std::optional<double> slope;
  std::optional<double> intercept;
  double c_emp = 0.0;
  int usable_rows = 0;
  bool complete = true;  // false when any row failed to solve
};

struct RateReport {
  ExperimentConfig config;
  std::vector<RateSeries> series;
};

/// Ordinary least squares through (log eps, log err). Rows with err below the
/// caller's floor must be dropped before the call; fewer than 3 rows is an
/// error (no meaningful order estimate).
inline std::pair<double, double> fit_rate(
    const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 3)
    throw std::invalid_argument("fit_rate needs at least 3 usable rows");
  double mx = 0.0, my = 0.0;
  for (const auto& [e, r] : rows) {
    if (!(e > 0.0) || !(r > 0.0))
      throw std::invalid_argument("fit_rate rows must be positive");
    mx += std::log(e);
    my += std::log(r);
  }
  const double n = static_cast<double>(rows.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [e, r] : rows) {
    const double dx = std::log(e) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r) - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

/// Noise floor below which a row measures solver tolerance, not
/// homogenization error.
inline double noise_floor(double tol, double lambda_0) {
  return 10.0 * tol * lambda_0;
}

/// Runs the sweep: for each (k, t, sign), lambda_0 from the weight means and
/// lambda_eps from the scaled problems; errors, slope fit over rows above the
/// noise floor, and C_emp. Per-row solver failures are recorded in the row
/// and flag the series incomplete; they are not fatal. The (k, t, sign, eps)
/// grid evaluates in parallel with deterministic, grid-ordered reduction.
inline RateReport run_rate_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const double m_bar = cfg.m.average();
  const double n_bar = cfg.n.average();
  const std::vector<double> eps = cfg.epsilons();

  struct Key {
    int k;
    double t;
    Sign sign;
  };
  std::vector<Key> keys;
  for (int k : cfg.k_list)
    for (double t : cfg.t_list)
      for (Sign s : cfg.signs) keys.push_back(Key{k, t, s});

  const std::size_t n_eps = eps.size();
  auto cells = parallel_map<RateRow>(
      keys.size() * n_eps, [&](std::size_t idx) {
        const Key& key = keys[idx / n_eps];
        RateRow row;
        row.epsilon = eps[idx % n_eps];
        row.lambda_0 =
            limit_half_eigenvalue(key.k, key.t, key.sign, m_bar, n_bar, cfg.ell)
                .lambda;
        try {
          const ScaledWeight ms(cfg.m, row.epsilon, cfg.ell);
          const ScaledWeight ns(cfg.n, row.epsilon, cfg.ell);
          row.lambda_eps = solve_half_eigenvalue(key.k, key.t, key.sign, ms, ns,
                                                 cfg.ell, cfg.tol)
                               .lambda;
          row.abs_err = std::abs(row.lambda_eps - row.lambda_0);
          row.ok = true;
        } catch (const std::exception& ex) {
          row.error = ex.what();
        }
        return row;
      });

  RateReport report;
  report.config = cfg;
  for (std::size_t s = 0; s < keys.size(); ++s) {
    RateSeries ser;
    ser.k = keys[s].k;
    ser.t = keys[s].t;
    ser.sign = keys[s].sign;
    ser.rows.assign(cells.begin() + static_cast<long>(s * n_eps),
                    cells.begin() + static_cast<long>((s + 1) * n_eps));
    std::sort(ser.rows.begin(), ser.rows.end(),
              [](const RateRow& a, const RateRow& b) {
                return a.epsilon > b.epsilon;
              });
    ser.lambda_0 = ser.rows.front().lambda_0;
    std::vector<std::pair<double, double>> usable;
    for (const auto& row : ser.rows) {
      if (!row.ok) {
        ser.complete = false;
        continue;
      }
      ser.c_emp = std::max(
          ser.c_emp, row.abs_err / (row.epsilon *
                                    std::pow(ser.k / cfg.ell, 3.0) *
                                    gamma(ser.t)));
      if (row.abs_err > noise_floor(cfg.tol, ser.lambda_0))
        usable.emplace_back(row.epsilon, row.abs_err);
    }
    ser.usable_rows = static_cast<int>(usable.size());
    if (usable.size() >= 3) {
      const auto [sl, ic] = fit_rate(usable);
      ser.slope = sl;
      ser.intercept = ic;
    }
    report.series.push_back(std::move(ser));
  }
  return report;
}

/// True iff every successful row obeys err <= C_budget (k/ell)^3 gamma(t) eps.
inline bool check_rate_bound(const RateReport& report, double c_budget) {
  if (!(c_budget > 0.0))
    throw std::invalid_argument("C_budget must be positive");
  for (const auto& ser : report.series)
    for (const auto& row : ser.rows) {
      if (!row.ok) continue;
      const double allowed = c_budget *
                             std::pow(ser.k / report.config.ell, 3.0) *
                             gamma(ser.t) * row.epsilon;
      if (row.abs_err > allowed) return false;
    }
  return true;
}

/// k = 2 rate check against the first-curve bound err <= C eps t^{-3/2}
/// (0 < t <= 1; t = 1 included since gamma(1) = 1): the per-t empirical
/// constants must be finite and spread by at most a factor 10.
struct K2RateCheck {
  std::vector<std::pair<double, double>> per_t_constant;  // (t, C)
  double ratio = 1.0;
  bool ok = true;
};

inline K2RateCheck check_k2_rate(const RateReport& report) {
  K2RateCheck chk;
  std::map<double, double> by_t;  // max constant per t, both signs merged
  for (const auto& ser : report.series) {
    if (ser.k != 2 || ser.t > 1.0) continue;
    for (const auto& row : ser.rows) {
      if (!row.ok) continue;
      if (row.abs_err <= noise_floor(report.config.tol, ser.lambda_0)) continue;
      const double c = row.abs_err / (row.epsilon * std::pow(ser.t, -1.5));
      auto [it, inserted] = by_t.emplace(ser.t, c);
      if (!inserted) it->second = std::max(it->second, c);
    }
  }
  for (const auto& [t, c] : by_t) chk.per_t_constant.emplace_back(t, c);
  if (chk.per_t_constant.size() > 1) {
    double lo = chk.per_t_constant.front().second;
    double hi = lo;
    for (const auto& [t, c] : chk.per_t_constant) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    chk.ratio = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
    chk.ok = std::isfinite(chk.ratio) && chk.ratio <= 10.0;
  }
  return chk;
}

}  // namespace fucik
