#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "collapse/errors.hpp"

namespace collapse {

/// A value with a one-standard-deviation uncertainty, in the SI units of
/// whatever it describes.
template <typename Scalar = double>
struct BasicUncertainValue {
  Scalar value{};
  Scalar sigma{};

  /// sigma / |value|; throws when value is zero and sigma is not.
  Scalar relative() const {
    if (sigma == Scalar(0)) return Scalar(0);
    if (value == Scalar(0))
      throw DivisionByZeroError("relative uncertainty of a zero value");
    return sigma / std::abs(value);
  }

  bool operator==(const BasicUncertainValue&) const = default;
};

using UncertainValue = BasicUncertainValue<double>;

namespace detail {

template <typename Scalar>
bool is_integer(Scalar e) {
  return std::isfinite(e) && std::trunc(e) == e;
}

/// x^e, with the exponents this code hits often taken on exact paths.
template <typename Scalar>
Scalar power(Scalar x, Scalar e) {
  if (e == Scalar(1)) return x;
  if (e == Scalar(2)) return x * x;
  if (e == Scalar(0.5)) return std::sqrt(x);
  return std::pow(x, e);
}

}  // namespace detail

/// First-order propagation through x -> x^exponent.
///
/// sigma_out = |exponent| * |x^exponent| * sigma / |x|. At x = 0 the
/// derivative form |exponent * x^(exponent-1)| * sigma is used, which is
/// finite for exponent >= 1 and undefined otherwise.
template <typename Scalar>
BasicUncertainValue<Scalar> propagate_power(const BasicUncertainValue<Scalar>& x,
                                            Scalar exponent) {
  if (x.sigma < Scalar(0) || !std::isfinite(x.sigma))
    throw DomainError("uncertainty must be finite and non-negative");
  if (x.value < Scalar(0) && !detail::is_integer(exponent))
    throw DomainError("negative base with non-integer exponent");
  if (x.value == Scalar(0)) {
    if (exponent < Scalar(0)) throw DivisionByZeroError("zero base with negative exponent");
    const Scalar value = detail::power(x.value, exponent);
    if (x.sigma == Scalar(0) || exponent == Scalar(0)) return {value, Scalar(0)};
    if (exponent == Scalar(1)) return {value, x.sigma};
    if (exponent > Scalar(1)) return {value, Scalar(0)};
    throw DivisionByZeroError("relative uncertainty undefined at zero for exponent < 1");
  }
  const Scalar value = detail::power(x.value, exponent);
  if (exponent == Scalar(1)) return {value, x.sigma};
  const Scalar sigma = std::abs(exponent) * std::abs(value) * (x.sigma / std::abs(x.value));
  return {value, sigma};
}

/// One factor of a product of powers.
template <typename Scalar = double>
struct PowerFactor {
  BasicUncertainValue<Scalar> base;
  Scalar exponent;
};

/// Product of independent uncertain factors raised to powers:
/// value = prod v_i^e_i, sigma^2 = sum_i (sigma'_i * prod_{j != i} v'_j)^2
/// where (v'_i, sigma'_i) = propagate_power(v_i, e_i). For non-zero values
/// this is the relative-variance sum  sum (e_i s_i / v_i)^2.
template <typename Scalar>
BasicUncertainValue<Scalar> product_with_uncertainty(
    std::span<const PowerFactor<Scalar>> factors) {
  std::vector<BasicUncertainValue<Scalar>> powered;
  powered.reserve(factors.size());
  for (const auto& f : factors) powered.push_back(propagate_power(f.base, f.exponent));

  Scalar value(1);
  for (const auto& p : powered) value *= p.value;

  Scalar variance(0);
  for (std::size_t i = 0; i < powered.size(); ++i) {
    if (powered[i].sigma == Scalar(0)) continue;
    Scalar partial = powered[i].sigma;
    for (std::size_t j = 0; j < powered.size(); ++j)
      if (j != i) partial *= powered[j].value;
    variance += partial * partial;
  }
  return {value, std::sqrt(variance)};
}

template <typename Scalar>
BasicUncertainValue<Scalar> product_with_uncertainty(
    std::initializer_list<PowerFactor<Scalar>> factors) {
  return product_with_uncertainty(
      std::span<const PowerFactor<Scalar>>(factors.begin(), factors.size()));
}

/// Multiplies by an exact constant.
template <typename Scalar>
BasicUncertainValue<Scalar> scale(const BasicUncertainValue<Scalar>& x, Scalar factor) {
  return {x.value * factor, x.sigma * std::abs(factor)};
}

}  // namespace collapse
