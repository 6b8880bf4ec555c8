#include "oms/oms.h"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oms {

void validate(const OmsParams & p)
{
  if (p.r1 < 1) {
    throw ParameterError("r1 must be >= 1");
  }
  if (p.r1 >= p.r2) {
    throw ParameterError(
      "r1 must be smaller than r2 (r1=" + std::to_string(p.r1) + ", r2=" + std::to_string(p.r2) + ")");
  }
  if (p.surround_stride < 1) {
    throw ParameterError("surround stride must be >= 1");
  }
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
    throw ParameterError("alpha must lie in [0, 1]");
  }
  if (!(p.sigma_c > 0.0) || !(p.sigma_s > 0.0) || !std::isfinite(p.sigma_c) || !std::isfinite(p.sigma_s)) {
    throw ParameterError("sigmas must be positive");
  }
}

int center_stride(int surround_stride, int r1, int r2) noexcept
{
  return surround_stride + r2 - r1;
}

std::string_view to_string(FilterMode mode) noexcept
{
  return mode == FilterMode::dense ? "dense" : "strided";
}

FilterMode parse_filter_mode(std::string_view text)
{
  if (text == "dense") {
    return FilterMode::dense;
  }
  if (text == "strided") {
    return FilterMode::strided;
  }
  throw ParameterError("unknown filter mode '" + std::string(text) + "' (expected dense or strided)");
}

KernelPair make_kernels(const OmsParams & params)
{
  validate(params);
  return {make_feathered_kernel(params.r1, params.sigma_c), make_feathered_kernel(params.r2, params.sigma_s)};
}

FieldMap oms_scores(const BinaryFrame & frame, const OmsParams & params, const KernelPair & kernels)
{
  if (params.mode == FilterMode::dense) {
    FieldMap c = filter_frame(frame, kernels.center, 1, FilterMode::dense);
    const FieldMap s = filter_frame(frame, kernels.surround, 1, FilterMode::dense);
    auto cv = c.values();
    auto sv = s.values();
    for (std::size_t i = 0; i < cv.size(); ++i) {
      cv[i] = std::abs(cv[i] - sv[i]);
    }
    return c;
  }

  const FieldMap s = filter_frame(frame, kernels.surround, params.surround_stride, FilterMode::strided);
  const FieldMap c = filter_frame(frame, kernels.center, center_stride(params), FilterMode::strided);
  const int rows = std::min(c.rows(), s.rows());
  const int cols = std::min(c.cols(), s.cols());
  if (rows == 0 || cols == 0) {
    throw ConfigError("strided center and surround responses share no common cells");
  }
  FieldMap out(rows, cols);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      out(a, b) = std::abs(c(a, b) - s(a, b));
    }
  }
  return out;
}

SegMask oms_frame(const BinaryFrame & frame, const OmsParams & params, const KernelPair & kernels)
{
  const FieldMap scores = oms_scores(frame, params, kernels);
  SegMask mask(frame.geometry());

  if (params.mode == FilterMode::dense) {
    for (int y = 0; y < scores.rows(); ++y) {
      for (int x = 0; x < scores.cols(); ++x) {
        mask.set(y, x, scores(y, x) > params.alpha);
      }
    }
    return mask;
  }

  const int s = params.surround_stride;
  const int off = params.r2;
  for (int a = 0; a < scores.rows(); ++a) {
    for (int b = 0; b < scores.cols(); ++b) {
      if (!(scores(a, b) > params.alpha)) {
        continue;
      }
      const int y_end = std::min(off + (a + 1) * s, frame.height());
      const int x_end = std::min(off + (b + 1) * s, frame.width());
      for (int y = off + a * s; y < y_end; ++y) {
        for (int x = off + b * s; x < x_end; ++x) {
          mask.set(y, x, true);
        }
      }
    }
  }
  return mask;
}

SegMask oms_frame(const BinaryFrame & frame, const OmsParams & params)
{
  return oms_frame(frame, params, make_kernels(params));
}

std::vector<SegMask> oms_sequence(std::span<const BinaryFrame> frames, const OmsParams & params, int threads)
{
  const KernelPair kernels = make_kernels(params);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].geometry() != frames[0].geometry()) {
      throw ValidationError("frame " + std::to_string(i) + " geometry differs from frame 0");
    }
  }

  // the loop body must not throw inside the parallel region
  if (!frames.empty()) {
    const auto & g = frames[0].geometry();
    if (kernels.surround.size() > std::min(g.width, g.height)) {
      throw DimensionError("surround kernel does not fit the frame geometry");
    }
  }

  std::vector<SegMask> masks(frames.size());
  const long long n = static_cast<long long>(frames.size());
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team) if (team > 1)
#endif
  for (long long i = 0; i < n; ++i) {
    masks[static_cast<std::size_t>(i)] = oms_frame(frames[static_cast<std::size_t>(i)], params, kernels);
  }
  return masks;
}

SegMask apply_mask(const BinaryFrame & frame, const SegMask & mask)
{
  if (frame.geometry() != mask.geometry()) {
    throw ValidationError("frame and mask dimensions differ");
  }
  SegMask out(frame.geometry());
  const auto f = frame.pixels();
  const auto m = mask.pixels();
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * frame.width() + x;
      out.set(y, x, (f[i] & m[i]) != 0);
    }
  }
  return out;
}

}  // namespace oms
