#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "fucik/homog.hpp"
#include "fucik/nodal.hpp"
#include "fucik/spectrum.hpp"

namespace fucik {

/// 17-significant-digit decimal rendering, '.' separator, locale-independent.
inline std::string float17(double v) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc())
    throw std::runtime_error("float17: to_chars failed");
  return std::string(buf, res.ptr);
}

/// Shortest round-trip rendering; used for file-name components.
inline std::string float_short(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("float_short: to_chars failed");
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // no platform newline translation
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

}  // namespace detail

/// Curve CSV: k,sign,t,lambda,alpha,beta. Failed points are skipped.
inline void write_curve_csv(const std::string& path, int k, Sign sign,
                            const std::vector<CurvePoint>& points) {
  auto f = detail::open_out(path);
  f << "k,sign,t,lambda,alpha,beta\n";
  for (const auto& p : points) {
    if (!p.ok) continue;
    f << k << ',' << sign_char(sign) << ',' << float17(p.t) << ','
      << float17(p.lambda) << ',' << float17(p.alpha()) << ','
      << float17(p.beta()) << '\n';
  }
}

/// Nodal CSV: k,sign,t,epsilon,domain_index,left,right,sign_of_u,length.
/// Limit-problem rows carry "limit" in the epsilon column.
inline void write_nodal_csv(const std::string& path, const HalfEigenvalue& e,
                            const NodalDecomposition& d) {
  auto f = detail::open_out(path);
  f << "k,sign,t,epsilon,domain_index,left,right,sign_of_u,length\n";
  const std::string eps = e.epsilon ? float17(*e.epsilon) : "limit";
  for (std::size_t j = 0; j < d.intervals.size(); ++j) {
    const auto& I = d.intervals[j];
    f << e.k << ',' << sign_char(e.sign) << ',' << float17(e.t) << ',' << eps
      << ',' << j << ',' << float17(I.left) << ',' << float17(I.right) << ','
      << (I.sign > 0 ? '+' : '-') << ',' << float17(I.length()) << '\n';
  }
}

/// Rate CSV: k,sign,t,epsilon,lambda_eps,lambda_0,abs_err,slope,C_emp
/// (slope and C_emp repeat on every row of a series; failed rows carry nan).
inline void write_rate_csv(const std::string& path,
                           const std::vector<RateSeries>& series) {
  auto f = detail::open_out(path);
  f << "k,sign,t,epsilon,lambda_eps,lambda_0,abs_err,slope,C_emp\n";
  for (const auto& ser : series) {
    const std::string slope = ser.slope ? float17(*ser.slope) : "nan";
    for (const auto& row : ser.rows) {
      f << ser.k << ',' << sign_char(ser.sign) << ',' << float17(ser.t) << ','
        << float17(row.epsilon) << ','
        << (row.ok ? float17(row.lambda_eps) : "nan") << ','
        << float17(row.lambda_0) << ','
        << (row.ok ? float17(row.abs_err) : "nan") << ',' << slope << ','
        << float17(ser.c_emp) << '\n';
    }
  }
}

/// Trajectory CSV: x,u,du sampled at segment boundaries (cell walls and
/// zeros).
inline void write_trajectory_csv(const std::string& path,
                                 const HalfEigenvalue& e) {
  auto f = detail::open_out(path);
  f << "x,u,du\n";
  if (e.segments.empty()) return;
  const auto& first = e.segments.front();
  f << float17(first.x0) << ',' << float17(first.u0) << ','
    << float17(first.du0) << '\n';
  for (const auto& s : e.segments)
    f << float17(s.x1) << ',' << float17(s.value(s.x1)) << ','
      << float17(s.slope(s.x1)) << '\n';
}

}  // namespace fucik
