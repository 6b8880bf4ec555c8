#include "oms/filter.h"

#include <string>
#include <vector>

namespace oms {

namespace {

struct Tap
{
  int di;
  int dj;
  double w;
};

// Nonzero weights in row-major order, so summation order matches a plain
// i/j loop over the kernel.
std::vector<Tap> support_taps(const Kernel & kernel)
{
  std::vector<Tap> taps;
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = 0; j < kernel.size(); ++j) {
      if (kernel(i, j) != 0.0) {
        taps.push_back({i, j, kernel(i, j)});
      }
    }
  }
  return taps;
}

// Gathers out(a, b) = sum_taps w * src[(a*s + di) * src_cols + b*s + dj].
void correlate(
  const std::vector<double> & src, int src_cols, const std::vector<Tap> & taps, int stride,
  FieldMap & out)
{
  const int rows = out.rows();
  const int cols = out.cols();
  const long long work = static_cast<long long>(rows) * cols * static_cast<long long>(taps.size());

#pragma omp parallel for schedule(static) if (work > 200000)
  for (int a = 0; a < rows; ++a) {
    double * acc = &out(a, 0);
    for (const Tap & tap : taps) {
      const double * line =
        src.data() + static_cast<std::size_t>(a * stride + tap.di) * src_cols + tap.dj;
      const double w = tap.w;
      if (stride == 1) {
        for (int b = 0; b < cols; ++b) {
          acc[b] += w * line[b];
        }
      } else {
        for (int b = 0; b < cols; ++b) {
          acc[b] += w * line[static_cast<std::size_t>(b) * stride];
        }
      }
    }
  }
}

}  // namespace

int strided_extent(int extent, int kernel_size, int stride) noexcept
{
  if (extent < kernel_size || stride < 1) {
    return 0;
  }
  return (extent - kernel_size) / stride + 1;
}

FieldMap filter_frame(const BinaryFrame & frame, const Kernel & kernel, int stride, FilterMode mode)
{
  const int h = frame.height();
  const int w = frame.width();
  const int n = kernel.size();
  if (n > h || n > w) {
    throw DimensionError(
      "kernel " + std::to_string(n) + "x" + std::to_string(n) + " does not fit " +
      std::to_string(w) + "x" + std::to_string(h) + " frame");
  }
  if (mode == FilterMode::strided && stride < 1) {
    throw ParameterError("stride must be >= 1, got " + std::to_string(stride));
  }

  const auto taps = support_taps(kernel);
  const auto px = frame.pixels();

  if (mode == FilterMode::dense) {
    const int r = kernel.radius();
    // padded by r on the leading side, r on the trailing side
    const int pw = w + 2 * r;
    const int ph = h + 2 * r;
    std::vector<double> padded(static_cast<std::size_t>(pw) * ph, 0.0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        padded[static_cast<std::size_t>(y + r) * pw + x + r] = px[static_cast<std::size_t>(y) * w + x];
      }
    }
    FieldMap out(h, w);
    correlate(padded, pw, taps, 1, out);
    return out;
  }

  std::vector<double> src(px.begin(), px.end());
  FieldMap out(strided_extent(h, n, stride), strided_extent(w, n, stride));
  correlate(src, w, taps, stride, out);
  return out;
}

}  // namespace oms
