#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "oms/filter.h"
#include "oms/image.h"
#include "oms/kernel.h"

namespace oms {

/// Object Motion Sensitivity parameters. Defaults are the EV-IMO settings.
struct OmsParams
{
  int r1 = 2;               ///< center radius
  int r2 = 4;               ///< surround radius, must exceed r1
  int surround_stride = 1;  ///< s_s
  double alpha = 0.96;      ///< spike when |center - surround| > alpha
  double sigma_c = 1.0;
  double sigma_s = 2.0;
  FilterMode mode = FilterMode::dense;

  friend bool operator==(const OmsParams &, const OmsParams &) = default;
};

/// Threshold used for the MOD dataset, where spikes are sparser.
inline constexpr double kModAlpha = 0.5;

/// Throws ParameterError on r1 < 1, r1 >= r2, stride < 1, alpha outside
/// [0, 1] or non-positive sigmas.
void validate(const OmsParams & params);

/// s_c = s_s + r2 - r1.
int center_stride(int surround_stride, int r1, int r2) noexcept;
inline int center_stride(const OmsParams & p) noexcept { return center_stride(p.surround_stride, p.r1, p.r2); }

std::string_view to_string(FilterMode mode) noexcept;
/// Accepts "dense" or "strided"; throws ParameterError otherwise.
FilterMode parse_filter_mode(std::string_view text);

struct KernelPair
{
  Kernel center;
  Kernel surround;
};

/// Validates `params` and builds both kernels.
KernelPair make_kernels(const OmsParams & params);

/// Per-cell |center - surround| before thresholding. In dense mode the grid
/// has the frame's dimensions; in strided mode it is the top-left aligned
/// common grid of the two strided responses.
FieldMap oms_scores(const BinaryFrame & frame, const OmsParams & params, const KernelPair & kernels);

/// Motion mask at the frame's resolution: 1 where the score exceeds alpha.
/// In strided mode coarse cell (a, b) paints the pixel block
/// [r2 + a*s_s, r2 + (a+1)*s_s) x [r2 + b*s_s, r2 + (b+1)*s_s).
SegMask oms_frame(const BinaryFrame & frame, const OmsParams & params, const KernelPair & kernels);
SegMask oms_frame(const BinaryFrame & frame, const OmsParams & params);

/// Applies oms_frame to every frame, in parallel across frames when
/// `threads` != 1 (0 = OpenMP default). Output order matches input order
/// and is bitwise independent of the thread count.
std::vector<SegMask> oms_sequence(std::span<const BinaryFrame> frames, const OmsParams & params, int threads = 0);

/// Pixel-wise AND; throws ValidationError on a dimension mismatch.
SegMask apply_mask(const BinaryFrame & frame, const SegMask & mask);

}  // namespace oms
