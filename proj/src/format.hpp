#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "gmreslab/dense.hpp"

namespace gmreslab {

// 17 significant digits; non-finite values become JSON null.
inline std::string json_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Real numbers stay scalars; complex ones become [re, im].
inline std::string json_complex(cplx z) {
  if (z.imag() == 0.0) return json_real(z.real());
  return "[" + json_real(z.real()) + ", " + json_real(z.imag()) + "]";
}

}  // namespace gmreslab
