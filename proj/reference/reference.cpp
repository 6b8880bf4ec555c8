#include "reference.h"

#include <cmath>

namespace oms::reference {

FieldMap filter(const BinaryFrame & frame, const Kernel & kernel, int stride, FilterMode mode)
{
  const int h = frame.height();
  const int w = frame.width();
  const int n = kernel.size();
  const int r = kernel.radius();

  if (mode == FilterMode::dense) {
    FieldMap out(h, w);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            const int yy = y - r + i;
            const int xx = x - r + j;
            const double v = (yy >= 0 && yy < h && xx >= 0 && xx < w) ? frame(yy, xx) : 0.0;
            sum += kernel(i, j) * v;
          }
        }
        out(y, x) = sum;
      }
    }
    return out;
  }

  const int rows = (h - n) / stride + 1;
  const int cols = (w - n) / stride + 1;
  FieldMap out(rows, cols);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          sum += kernel(i, j) * frame(a * stride + i, b * stride + j);
        }
      }
      out(a, b) = sum;
    }
  }
  return out;
}

std::vector<double> kernel_weights(int radius, double sigma)
{
  const int n = 2 * radius;
  std::vector<double> g(static_cast<std::size_t>(n) * n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = std::hypot(i + 0.5 - radius, j + 0.5 - radius);
      const double v = d > radius ? 0.0 : std::exp(-(d * d) / (2.0 * sigma * sigma));
      g[static_cast<std::size_t>(i) * n + j] = v;
      total += v;
    }
  }
  for (auto & v : g) {
    v /= total;
  }
  return g;
}

FieldMap dense_scores(const BinaryFrame & frame, const Kernel & center, const Kernel & surround)
{
  const FieldMap c = filter(frame, center, 1, FilterMode::dense);
  const FieldMap s = filter(frame, surround, 1, FilterMode::dense);
  FieldMap out(c.rows(), c.cols());
  for (int y = 0; y < c.rows(); ++y) {
    for (int x = 0; x < c.cols(); ++x) {
      out(y, x) = std::abs(c(y, x) - s(y, x));
    }
  }
  return out;
}

}  // namespace oms::reference
