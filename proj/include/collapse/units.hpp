#pragma once

#include <cmath>
#include <compare>

namespace collapse::units {

/// Physical dimension as exponents of (mass, length, time).
///
/// Exponents are stored doubled so that amplitude spectral densities, which
/// carry a time exponent of -3/2, stay representable.
struct Dimension {
  int twice_mass = 0;
  int twice_length = 0;
  int twice_time = 0;

  constexpr bool operator==(const Dimension&) const = default;

  constexpr Dimension operator+(const Dimension& o) const {
    return {twice_mass + o.twice_mass, twice_length + o.twice_length,
            twice_time + o.twice_time};
  }
  constexpr Dimension operator-(const Dimension& o) const {
    return {twice_mass - o.twice_mass, twice_length - o.twice_length,
            twice_time - o.twice_time};
  }
  constexpr Dimension scaled(int num, int den = 1) const {
    return {twice_mass * num / den, twice_length * num / den,
            twice_time * num / den};
  }
  constexpr bool halvable() const {
    return twice_mass % 2 == 0 && twice_length % 2 == 0 && twice_time % 2 == 0;
  }
};

constexpr Dimension dim(int mass, int length, int time) {
  return {2 * mass, 2 * length, 2 * time};
}

inline constexpr Dimension kDimensionless = dim(0, 0, 0);
inline constexpr Dimension kMass = dim(1, 0, 0);
inline constexpr Dimension kLength = dim(0, 1, 0);
inline constexpr Dimension kTime = dim(0, 0, 1);
inline constexpr Dimension kRate = dim(0, 0, -1);
inline constexpr Dimension kDensity = dim(1, -3, 0);
inline constexpr Dimension kAction = dim(1, 2, -1);
inline constexpr Dimension kGravitation = dim(-1, 3, -2);
inline constexpr Dimension kAcceleration = dim(0, 1, -2);
inline constexpr Dimension kForce = dim(1, 1, -2);
/// (m s^-2)^2 / Hz
inline constexpr Dimension kAccelerationPsd = dim(0, 2, -3);
/// m s^-2 / sqrt(Hz)
inline constexpr Dimension kAccelerationAsd = Dimension{0, 2, -3};
/// Strength of a white force, <F(t)F(t')> = D delta(t - t'): kg^2 m^2 s^-3.
inline constexpr Dimension kDiffusion = dim(2, 2, -3);

/// A scalar tagged with its SI dimension. Arithmetic tracks the dimension at
/// compile time; adding mismatched dimensions does not compile.
template <Dimension D, typename Scalar = double>
class Quantity {
public:
  static constexpr Dimension dimension = D;
  using scalar_type = Scalar;

  constexpr Quantity() = default;
  constexpr explicit Quantity(Scalar si_value) : value_(si_value) {}

  constexpr Scalar value() const { return value_; }

  constexpr Quantity operator+(Quantity o) const { return Quantity(value_ + o.value_); }
  constexpr Quantity operator-(Quantity o) const { return Quantity(value_ - o.value_); }
  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity operator*(Scalar s) const { return Quantity(value_ * s); }
  constexpr Quantity operator/(Scalar s) const { return Quantity(value_ / s); }
  friend constexpr Quantity operator*(Scalar s, Quantity q) { return q * s; }

  constexpr auto operator<=>(const Quantity&) const = default;

private:
  Scalar value_{};
};

template <Dimension A, Dimension B, typename S>
constexpr Quantity<A + B, S> operator*(Quantity<A, S> a, Quantity<B, S> b) {
  return Quantity<A + B, S>(a.value() * b.value());
}

template <Dimension A, Dimension B, typename S>
constexpr Quantity<A - B, S> operator/(Quantity<A, S> a, Quantity<B, S> b) {
  return Quantity<A - B, S>(a.value() / b.value());
}

template <Dimension A, typename S>
constexpr Quantity<A + A, S> square(Quantity<A, S> q) {
  return Quantity<A + A, S>(q.value() * q.value());
}

template <Dimension A, typename S>
constexpr Quantity<A.scaled(3), S> cube(Quantity<A, S> q) {
  return Quantity<A.scaled(3), S>(q.value() * q.value() * q.value());
}

template <Dimension A, typename S>
  requires(A.halvable())
Quantity<A.scaled(1, 2), S> sqrt(Quantity<A, S> q) {
  using std::sqrt;
  return Quantity<A.scaled(1, 2), S>(sqrt(q.value()));
}

template <Dimension A, typename S>
  requires(A.twice_mass % 3 == 0 && A.twice_length % 3 == 0 &&
           A.twice_time % 3 == 0)
Quantity<A.scaled(1, 3), S> cbrt(Quantity<A, S> q) {
  using std::cbrt;
  return Quantity<A.scaled(1, 3), S>(cbrt(q.value()));
}

using Mass = Quantity<kMass>;
using Length = Quantity<kLength>;
using Time = Quantity<kTime>;
using Rate = Quantity<kRate>;
using Density = Quantity<kDensity>;
using Action = Quantity<kAction>;
using Gravitation = Quantity<kGravitation>;
using AccelerationPsd = Quantity<kAccelerationPsd>;
using AccelerationAsd = Quantity<kAccelerationAsd>;
using Diffusion = Quantity<kDiffusion>;
using Dimensionless = Quantity<kDimensionless>;

// Presentation units. Multiply to convert into SI, divide to convert out.
inline constexpr double femtometre = 1e-15;
inline constexpr double nanometre = 1e-9;
inline constexpr double millimetre = 1e-3;
inline constexpr double angstrom = 1e-10;
inline constexpr double millihertz = 1e-3;
inline constexpr double kilohertz = 1e3;
/// fm s^-2 / sqrt(Hz)
inline constexpr double femto_asd = 1e-15;

}  // namespace collapse::units
