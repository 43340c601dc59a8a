#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fucik/spectrum.hpp"

namespace fucik {

/// One signed nodal interval (left, right) with sign of u on its interior.
struct NodalInterval {
  double left;
  double right;
  int sign;  // +1 or -1

  double length() const { return right - left; }
};

/// Ordered signed nodal intervals of an eigenfunction, covering [0, ell] with
/// strictly alternating signs; the first sign matches the branch sign.
struct NodalDecomposition {
  std::vector<NodalInterval> intervals;
  double ell = 0.0;

  int count() const { return static_cast<int>(intervals.size()); }
  std::vector<double> lengths_of(int sign) const {
    std::vector<double> v;
    for (const auto& I : intervals)
      if (I.sign == sign) v.push_back(I.length());
    return v;
  }
};

/// Slices [0, ell] at the recorded interior zeros. The interval count equals
/// k and alternation is structural (signs flip at every zero).
inline NodalDecomposition extract(const HalfEigenvalue& e) {
  if (static_cast<int>(e.zeros.size()) != e.k - 1)
    throw SolveError("nodal extract: zero count mismatch (" +
                     std::to_string(e.zeros.size()) + " zeros for k = " +
                     std::to_string(e.k) + ")");
  NodalDecomposition d;
  d.ell = e.ell;
  double left = 0.0;
  int s = (e.sign == Sign::plus) ? +1 : -1;
  for (int j = 0; j < e.k; ++j) {
    const double right = (j + 1 < e.k) ? e.zeros[static_cast<std::size_t>(j)]
                                       : e.ell;
    d.intervals.push_back(NodalInterval{left, right, s});
    left = right;
    s = -s;
  }
  return d;
}

/// Floating-point slack added to every strict nodal inequality.
inline double nodal_slack(double ell) { return 1e-9 * ell; }

/// Same-sign nodal lengths of an eps-periodic eigenfunction agree to within
/// 2 eps: translating the shortest domain by an integer number of periods
/// into a longer one would otherwise produce a degenerate first eigenfunction.
struct EqualLengthReport {
  double worst_gap_pos = 0.0;
  double worst_gap_neg = 0.0;
  double bound = 0.0;
  bool ok_pos = true;
  bool ok_neg = true;

  bool ok() const { return ok_pos && ok_neg; }
  double worst_gap() const { return std::max(worst_gap_pos, worst_gap_neg); }
};

inline EqualLengthReport check_equal_lengths(const NodalDecomposition& d,
                                             double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  EqualLengthReport r;
  r.bound = 2.0 * epsilon + nodal_slack(d.ell);
  for (int s : {+1, -1}) {
    const auto lens = d.lengths_of(s);
    double gap = 0.0;
    if (lens.size() > 1) {
      const auto [mn, mx] = std::minmax_element(lens.begin(), lens.end());
      gap = *mx - *mn;
    }
    if (s > 0) {
      r.worst_gap_pos = gap;
      r.ok_pos = gap < r.bound;
    } else {
      r.worst_gap_neg = gap;
      r.ok_neg = gap < r.bound;
    }
  }
  return r;
}

/// Pair-length check. For even k the decomposition splits into k/2
/// consecutive (+,-) pairs whose lengths deviate from 2 ell / k by less than
/// 4 eps (each pair holds one domain of each sign class, so the equal-length
/// lemma bounds pairwise gaps by 4 eps and the averaging lemma pins the
/// common value at the mean 2 ell / k; constant weights give exactly
/// 2 ell / k). For odd k the domain is doubled by odd reflection and every
/// domain is paired with its mirror image; those pairs carry a single sign
/// class each, so they are compared against their class mean pair length
/// (the 2 ell / k target would require one domain of each class per pair,
/// which no pairing of the 2k doubled domains achieves when k is odd).
struct PairLengthReport {
  std::vector<double> pair_lengths;
  std::vector<double> targets;     // per pair
  double worst_deviation = 0.0;
  double bound = 0.0;
  bool ok = true;
};

inline PairLengthReport check_pair_lengths(const NodalDecomposition& d,
                                           double epsilon, int k, double ell) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (k != d.count())
    throw std::invalid_argument("k does not match the decomposition");
  PairLengthReport r;
  r.bound = 4.0 * epsilon + nodal_slack(ell);
  if (k % 2 == 0) {
    const double target = 2.0 * ell / k;
    for (int j = 0; j + 1 < k; j += 2) {
      const double len = d.intervals[static_cast<std::size_t>(j)].length() +
                         d.intervals[static_cast<std::size_t>(j) + 1].length();
      r.pair_lengths.push_back(len);
      r.targets.push_back(target);
    }
  } else {
    // doubled domain: mirror pairs have length 2 |I_j|, one sign class each
    for (int s : {+1, -1}) {
      const auto lens = d.lengths_of(s);
      if (lens.empty()) continue;
      const double class_mean =
          2.0 * std::accumulate(lens.begin(), lens.end(), 0.0) /
          static_cast<double>(lens.size());
      for (double L : lens) {
        r.pair_lengths.push_back(2.0 * L);
        r.targets.push_back(class_mean);
      }
    }
  }
  for (std::size_t i = 0; i < r.pair_lengths.size(); ++i)
    r.worst_deviation = std::max(
        r.worst_deviation, std::abs(r.pair_lengths[i] - r.targets[i]));
  r.ok = r.worst_deviation <= r.bound;
  return r;
}

/// Sturm lower bounds on nodal lengths inside the cone: every domain is at
/// least (ell/k) sqrt(t a / b) long and every consecutive pair at least
/// (ell/k) sqrt(a/b) (1 + sqrt(t)). Stated for 0 < t < 1; for t >= 1 the
/// symmetry-reduced problem (t -> 1/t, u -> -u) has the same domain lengths,
/// so the bounds apply with t_eff = min(t, 1/t).
struct LowerBoundReport {
  double min_domain = 0.0;
  double domain_bound = 0.0;
  double min_pair = 0.0;
  double pair_bound = 0.0;
  bool has_pairs = false;
  bool ok_domain = true;
  bool ok_pair = true;

  bool ok() const { return ok_domain && ok_pair; }
};

inline LowerBoundReport check_lower_bounds(const NodalDecomposition& d,
                                           double t, double a, double b, int k,
                                           double ell) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(a > 0.0) || !(b >= a))
    throw std::invalid_argument("weight bounds must satisfy 0 < a <= b");
  if (k != d.count())
    throw std::invalid_argument("k does not match the decomposition");
  const double te = std::min(t, 1.0 / t);
  LowerBoundReport r;
  r.domain_bound = (ell / k) * std::sqrt(te * a / b);
  r.pair_bound = (ell / k) * std::sqrt(a / b) * (1.0 + std::sqrt(te));
  r.min_domain = d.intervals.front().length();
  for (const auto& I : d.intervals)
    r.min_domain = std::min(r.min_domain, I.length());
  r.ok_domain = r.min_domain >= r.domain_bound - nodal_slack(ell);
  if (k > 1) {
    r.has_pairs = true;
    r.min_pair = d.intervals[0].length() + d.intervals[1].length();
    for (int j = 0; j + 1 < k; ++j)
      r.min_pair = std::min(
          r.min_pair, d.intervals[static_cast<std::size_t>(j)].length() +
                          d.intervals[static_cast<std::size_t>(j) + 1].length());
    r.ok_pair = r.min_pair >= r.pair_bound - nodal_slack(ell);
  }
  return r;
}

/// Elementary averaging lemma: if K reals sum to M and differ pairwise by
/// less than eps, each lies within eps of M/K. Returns whether the conclusion
/// holds for the given list (the hypothesis flag is reported alongside).
struct AveragingCheck {
  double max_pairwise_gap = 0.0;
  double max_deviation = 0.0;
  bool hypothesis = false;  // all pairwise gaps < eps
  bool conclusion = false;  // all |a_i - M/K| < eps
};

inline AveragingCheck averaging_lemma(const std::vector<double>& values,
                                      double M, double epsilon) {
  if (values.empty()) throw std::invalid_argument("values must be non-empty");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - M) > 1e-12 * std::max(std::abs(M), 1.0))
    throw std::invalid_argument("values do not sum to M");
  AveragingCheck c;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  c.max_pairwise_gap = *mx - *mn;
  const double mean = M / static_cast<double>(values.size());
  for (double v : values)
    c.max_deviation = std::max(c.max_deviation, std::abs(v - mean));
  c.hypothesis = c.max_pairwise_gap < epsilon;
  c.conclusion = c.max_deviation < epsilon;
  return c;
}

}  // namespace fucik
