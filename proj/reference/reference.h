#pragma once

// Serial, unoptimized implementations used as test oracles and as the
// baseline in the benchmark. Nothing here shares code with src/.

#include <vector>

#include "oms/filter.h"
#include "oms/image.h"
#include "oms/kernel.h"

namespace oms::reference {

/// Four nested loops over output pixels and kernel cells, including
/// zero-weight cells, with explicit bounds checks for padding.
FieldMap filter(const BinaryFrame & frame, const Kernel & kernel, int stride, FilterMode mode);

/// Direct evaluation of the feathered-kernel formula, returned row-major.
std::vector<double> kernel_weights(int radius, double sigma);

/// Dense-mode |center - surround| computed straight from the frame.
FieldMap dense_scores(const BinaryFrame & frame, const Kernel & center, const Kernel & surround);

}  // namespace oms::reference
