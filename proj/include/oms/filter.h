#pragma once

#include "oms/image.h"
#include "oms/kernel.h"

namespace oms {

enum class FilterMode
{
  /// Stride 1, zero padding of `radius` on every side; output has the
  /// input's dimensions.
  dense,
  /// Valid (unpadded) cross-correlation at the requested stride.
  strided,
};

/// Output rows (or columns) of a strided filter over `extent` pixels.
int strided_extent(int extent, int kernel_size, int stride) noexcept;

/// Cross-correlates a binary frame with `kernel`.
///
/// Dense:   out(y, x) = sum_ij K(i, j) * F(y - r + i, x - r + j), F = 0 off-sensor.
/// Strided: out(a, b) = sum_ij K(i, j) * F(a * stride + i, b * stride + j).
///
/// `stride` is ignored in dense mode. Rows are processed in parallel; each
/// output value is summed in the same tap order regardless of thread count.
/// Throws DimensionError if 2r exceeds either frame dimension and
/// ParameterError for stride < 1.
FieldMap filter_frame(const BinaryFrame & frame, const Kernel & kernel, int stride, FilterMode mode);

}  // namespace oms
