#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "collapse/errors.hpp"

namespace collapse {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

// Kronrod 15-point abscissae (non-negative half); odd indices are the
// embedded 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
QuadratureResult gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half), 15};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 quadrature of f over [a, b].
///
/// Intervals are bisected until each one satisfies
/// |K15 - G7| <= max(abs_tol * width / (b - a), rel_tol * |K15|).
/// Throws QuadratureError when an interval would need more than
/// `max_depth` bisections.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    double abs_tol = 0.0, int max_depth = 40) {
  struct Pending {
    double lo, hi;
    int depth;
  };
  QuadratureResult total;
  if (a == b) return total;
  const double span = b - a;
  std::vector<Pending> stack{{a, b, 0}};
  while (!stack.empty()) {
    const Pending cur = stack.back();
    stack.pop_back();
    const auto piece = detail::gauss_kronrod_15(f, cur.lo, cur.hi);
    total.evaluations += piece.evaluations;
    if (!std::isfinite(piece.value))
      throw QuadratureError("integrand is not finite", piece.error_estimate);
    const double allowed =
        std::max(abs_tol * (cur.hi - cur.lo) / span, rel_tol * std::abs(piece.value));
    if (piece.error_estimate <= allowed) {
      total.value += piece.value;
      total.error_estimate += piece.error_estimate;
      continue;
    }
    if (cur.depth >= max_depth)
      throw QuadratureError("adaptive quadrature did not converge", piece.error_estimate);
    const double mid = 0.5 * (cur.lo + cur.hi);
    stack.push_back({mid, cur.hi, cur.depth + 1});
    stack.push_back({cur.lo, mid, cur.depth + 1});
  }
  return total;
}

}  // namespace collapse
