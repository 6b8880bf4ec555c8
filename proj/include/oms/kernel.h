#pragma once

#include <span>
#include <string>
#include <vector>

namespace oms {

/// Normalized feathered-circle Gaussian on a (2r)x(2r) grid.
///
/// Cell (i, j) is sampled at its center (i + 0.5, j + 0.5) relative to the
/// continuous matrix center (r, r). Cells farther than r from the center are
/// zero, and the remaining weights sum to one.
class Kernel
{
public:
  int radius() const noexcept { return radius_; }
  double sigma() const noexcept { return sigma_; }
  /// Side length, always 2 * radius.
  int size() const noexcept { return 2 * radius_; }

  double operator()(int i, int j) const noexcept { return weights_[static_cast<std::size_t>(i) * size() + j]; }
  std::span<const double> weights() const noexcept { return weights_; }

  friend Kernel make_feathered_kernel(int radius, double sigma);

private:
  int radius_ = 0;
  double sigma_ = 0.0;
  std::vector<double> weights_;
};

/// Throws ParameterError for radius < 1 or sigma <= 0 (or non-finite).
Kernel make_feathered_kernel(int radius, double sigma);

/// Row-major text dump: one line per row, weights separated by single
/// spaces, 12 significant digits.
std::string format_kernel(const Kernel & kernel);

}  // namespace oms
