#include "collapse/constants.hpp"

#include <cmath>

#include "collapse/errors.hpp"

namespace collapse {

namespace {
void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and > 0");
}
}  // namespace

void validate(const PhysicalConstants& c) {
  require_positive(c.hbar, "constants.hbar");
  require_positive(c.G, "constants.G");
  require_positive(c.m0, "constants.m0");
}

void validate(const FrequencyBand& band) {
  require_positive(band.f_lo, "band.f_lo");
  if (!(band.f_hi > band.f_lo) || !std::isfinite(band.f_hi))
    throw ValidationError("band.f_hi", "must be finite and > f_lo");
}

}  // namespace collapse
