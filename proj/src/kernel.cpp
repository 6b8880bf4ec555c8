#include "oms/kernel.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "oms/errors.h"

namespace oms {

Kernel make_feathered_kernel(int radius, double sigma)
{
  if (radius < 1) {
    throw ParameterError("kernel radius must be >= 1, got " + std::to_string(radius));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("kernel sigma must be a positive finite number");
  }

  Kernel k;
  k.radius_ = radius;
  k.sigma_ = sigma;
  const int n = 2 * radius;
  k.weights_.assign(static_cast<std::size_t>(n) * n, 0.0);

  const double r = radius;
  const double two_sigma_sq = 2.0 * sigma * sigma;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dy = i + 0.5 - r;
    for (int j = 0; j < n; ++j) {
      const double dx = j + 0.5 - r;
      const double d2 = dx * dx + dy * dy;
      if (d2 > r * r) {
        continue;
      }
      const double g = std::exp(-d2 / two_sigma_sq);
      k.weights_[static_cast<std::size_t>(i) * n + j] = g;
      total += g;
    }
  }
  // total > 0: the four central cells sit at distance sqrt(0.5) < 1 <= r
  for (auto & w : k.weights_) {
    w /= total;
  }
  return k;
}

std::string format_kernel(const Kernel & kernel)
{
  std::string out;
  char buf[32];
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = 0; j < kernel.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", kernel(i, j));
      if (j > 0) {
        out += ' ';
      }
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace oms
