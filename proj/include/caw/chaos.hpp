#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "caw/error.hpp"

namespace caw {

/// Which second-coordinate rule the map uses.
///
/// `standard` is the textbook Hénon map, y' = beta * x. `paper_literal`
/// is the printed form y' = beta * y, under which y decays geometrically
/// and the map collapses onto the 1-D quadratic family.
enum class HenonVariant { standard, paper_literal };

inline std::string_view to_string(HenonVariant v) {
  return v == HenonVariant::standard ? "standard" : "paper-literal";
}

inline HenonVariant parse_variant(std::string_view s) {
  if (s == "standard") return HenonVariant::standard;
  if (s == "paper-literal" || s == "paper_literal") return HenonVariant::paper_literal;
  throw Error(Errc::invalid_argument, "unknown Henon variant '" + std::string(s) + "'");
}

struct HenonParams {
  double alpha = 1.4;
  double beta = 0.3;
  double x0 = 0.01;
  double y0 = 0.003;
  HenonVariant variant = HenonVariant::standard;
};

struct Orbit {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t burn_in = 0;
};

struct LyapunovSpectrum {
  double largest = 0.0;
  double smallest = 0.0;
};

inline constexpr std::size_t kDefaultBurnIn = 1000;
inline constexpr double kDivergenceBound = 1e6;

namespace detail {

inline void require_finite_params(const HenonParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.x0) ||
      !std::isfinite(p.y0)) {
    throw Error(Errc::non_finite, "Henon parameters must be finite");
  }
}

struct HenonStepper {
  double alpha, beta;
  HenonVariant variant;

  std::pair<double, double> operator()(double x, double y) const {
    const double nx = 1.0 - alpha * x * x + y;
    const double ny = variant == HenonVariant::standard ? beta * x : beta * y;
    return {nx, ny};
  }
};

inline void guard(double x, double y, std::size_t step) {
  if (!(std::fabs(x) <= kDivergenceBound) || !(std::fabs(y) <= kDivergenceBound)) {
    throw Error(Errc::divergence, "Henon orbit diverged at step " + std::to_string(step));
  }
}

}  // namespace detail

/// Iterate burn_in + n steps from (x0, y0) and keep the last n states.
inline Orbit iterate_henon(const HenonParams& params, std::size_t n,
                           std::size_t burn_in = kDefaultBurnIn) {
  if (n == 0) throw Error(Errc::invalid_argument, "orbit length must be positive");
  detail::require_finite_params(params);

  const detail::HenonStepper step{params.alpha, params.beta, params.variant};
  Orbit orbit;
  orbit.burn_in = burn_in;
  orbit.xs.reserve(n);
  orbit.ys.reserve(n);

  double x = params.x0;
  double y = params.y0;
  for (std::size_t k = 1; k <= burn_in + n; ++k) {
    std::tie(x, y) = step(x, y);
    detail::guard(x, y, k);
    if (k > burn_in) {
      orbit.xs.push_back(x);
      orbit.ys.push_back(y);
    }
  }
  return orbit;
}

// Benettin-style tangent evolution: push two tangent vectors through the
// Jacobian each step, Gram-Schmidt them, and accumulate the log stretch
// factors. |det J| = beta for the standard map, so the exponents sum to
// ln(beta).
inline LyapunovSpectrum lyapunov_exponents(const HenonParams& params, std::size_t n,
                                           std::size_t burn_in = kDefaultBurnIn) {
  if (n < 100) throw Error(Errc::invalid_argument, "need at least 100 steps for Lyapunov exponents");
  detail::require_finite_params(params);
  if (params.beta <= 0.0) {
    throw Error(Errc::invalid_argument, "Lyapunov spectrum needs beta > 0");
  }

  const detail::HenonStepper step{params.alpha, params.beta, params.variant};
  double x = params.x0;
  double y = params.y0;
  for (std::size_t k = 1; k <= burn_in; ++k) {
    std::tie(x, y) = step(x, y);
    detail::guard(x, y, k);
  }

  // Columns of the orthonormal tangent frame.
  double u1 = 1.0, u2 = 0.0;
  double v1 = 0.0, v2 = 1.0;
  double sum1 = 0.0, sum2 = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    // J = [[-2 alpha x, 1], [beta, 0]] (standard) or [[-2 alpha x, 1], [0, beta]].
    const double j11 = -2.0 * params.alpha * x;
    const double j12 = 1.0;
    const double j21 = params.variant == HenonVariant::standard ? params.beta : 0.0;
    const double j22 = params.variant == HenonVariant::standard ? 0.0 : params.beta;

    const double a1 = j11 * u1 + j12 * u2;
    const double a2 = j21 * u1 + j22 * u2;
    const double b1 = j11 * v1 + j12 * v2;
    const double b2 = j21 * v1 + j22 * v2;

    const double r11 = std::hypot(a1, a2);
    const double q1 = a1 / r11;
    const double q2 = a2 / r11;
    const double r12 = q1 * b1 + q2 * b2;
    const double w1 = b1 - r12 * q1;
    const double w2 = b2 - r12 * q2;
    const double r22 = std::hypot(w1, w2);

    sum1 += std::log(r11);
    sum2 += std::log(r22);
    u1 = q1;
    u2 = q2;
    v1 = w1 / r22;
    v2 = w2 / r22;

    std::tie(x, y) = step(x, y);
    detail::guard(x, y, burn_in + k);
  }

  const double l1 = sum1 / static_cast<double>(n);
  const double l2 = sum2 / static_cast<double>(n);
  return {std::max(l1, l2), std::min(l1, l2)};
}

}  // namespace caw
