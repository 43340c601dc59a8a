#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fucik/homog.hpp"
#include "fucik/weights.hpp"

namespace fucik {

// Experiment config file: a JSON object with keys
//   weights_m, weights_n : {period, breakpoints, values}
//   ell                  : number or "pi"
//   k_list, t_list, signs ("+"/"-"), epsilon_list, tol, out_dir
//   a, b                 : optional global weight bounds
// Unknown keys are rejected (fail-closed) so typos surface immediately.

namespace detail {

inline void reject_unknown(const nlohmann::json& obj,
                           const std::set<std::string>& known,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("unknown config key \"" + it.key() +
                                  "\" in " + where);
}

// numbers, plus the literal "pi" for exact classical cases
inline double number_or_pi(const nlohmann::json& v, const std::string& field) {
  if (v.is_string()) {
    if (v.get<std::string>() == "pi") return M_PI;
    throw std::invalid_argument("field " + field +
                                " accepts numbers or the literal \"pi\"");
  }
  if (!v.is_number())
    throw std::invalid_argument("field " + field + " must be a number");
  return v.get<double>();
}

inline PiecewiseConstantWeight parse_weight(const nlohmann::json& obj,
                                            const std::string& field,
                                            double a, double b,
                                            bool have_bounds) {
  if (!obj.is_object())
    throw std::invalid_argument("field " + field + " must be an object");
  reject_unknown(obj, {"period", "breakpoints", "values"}, field);
  if (!obj.contains("period") || !obj.contains("breakpoints") ||
      !obj.contains("values"))
    throw std::invalid_argument(
        "field " + field + " needs period, breakpoints, values");
  const double period = number_or_pi(obj.at("period"), field + ".period");
  std::vector<double> bk, vals;
  for (const auto& v : obj.at("breakpoints"))
    bk.push_back(number_or_pi(v, field + ".breakpoints"));
  for (const auto& v : obj.at("values"))
    vals.push_back(number_or_pi(v, field + ".values"));
  if (bk.empty() || std::abs(bk.back() - period) > 1e-12 * period)
    throw std::invalid_argument("field " + field +
                                ": last breakpoint must equal period");
  try {
    return have_bounds ? PiecewiseConstantWeight(bk, vals, a, b)
                       : PiecewiseConstantWeight(bk, vals);
  } catch (const std::invalid_argument& ex) {
    throw std::invalid_argument("field " + field + ": " + ex.what());
  }
}

}  // namespace detail

inline constexpr double kTMin = 1e-4;
inline constexpr double kTMax = 1e4;

inline void check_t_range(double t) {
  if (!(t >= kTMin) || !(t <= kTMax))
    throw std::invalid_argument(
        "field t outside the accepted range [1e-4, 1e4]");
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  detail::reject_unknown(j,
                         {"weights_m", "weights_n", "ell", "k_list", "t_list",
                          "signs", "epsilon_list", "tol", "out_dir", "a", "b"},
                         "config");
  ExperimentConfig cfg;
  const bool have_bounds = j.contains("a") || j.contains("b");
  double a = 0.0, b = 0.0;
  if (have_bounds) {
    if (!j.contains("a") || !j.contains("b"))
      throw std::invalid_argument("fields a and b must be given together");
    a = detail::number_or_pi(j.at("a"), "a");
    b = detail::number_or_pi(j.at("b"), "b");
  }
  if (!j.contains("weights_m") || !j.contains("weights_n"))
    throw std::invalid_argument("config needs weights_m and weights_n");
  cfg.m = detail::parse_weight(j.at("weights_m"), "weights_m", a, b, have_bounds);
  cfg.n = detail::parse_weight(j.at("weights_n"), "weights_n", a, b, have_bounds);
  if (j.contains("ell")) cfg.ell = detail::number_or_pi(j.at("ell"), "ell");
  if (j.contains("k_list")) {
    cfg.k_list.clear();
    for (const auto& v : j.at("k_list")) {
      if (!v.is_number_integer())
        throw std::invalid_argument("field k_list must hold integers");
      cfg.k_list.push_back(v.get<int>());
    }
  }
  if (j.contains("t_list")) {
    cfg.t_list.clear();
    cfg.t_list_explicit = true;
    for (const auto& v : j.at("t_list")) {
      const double t = detail::number_or_pi(v, "t_list");
      check_t_range(t);
      cfg.t_list.push_back(t);
    }
  }
  if (j.contains("signs")) {
    cfg.signs.clear();
    for (const auto& v : j.at("signs")) {
      const std::string s = v.get<std::string>();
      if (s == "+")
        cfg.signs.push_back(Sign::plus);
      else if (s == "-")
        cfg.signs.push_back(Sign::minus);
      else
        throw std::invalid_argument("field signs entries must be \"+\" or \"-\"");
    }
  }
  if (j.contains("epsilon_list")) {
    cfg.epsilon_list.clear();
    for (const auto& v : j.at("epsilon_list"))
      cfg.epsilon_list.push_back(detail::number_or_pi(v, "epsilon_list"));
  }
  if (j.contains("tol")) cfg.tol = detail::number_or_pi(j.at("tol"), "tol");
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("config parse error in " + path + ": " +
                                ex.what());
  }
  return parse_config(j);
}

}  // namespace fucik
