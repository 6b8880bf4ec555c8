#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oms/errors.h"

namespace oms {

struct SensorGeometry
{
  int width = 0;
  int height = 0;

  std::size_t pixel_count() const noexcept
  {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  bool contains(int x, int y) const noexcept
  {
    return x >= 0 && y >= 0 && x < width && y < height;
  }

  friend bool operator==(const SensorGeometry &, const SensorGeometry &) = default;
};

/// Throws ValidationError unless width >= 1 and height >= 1.
void validate(const SensorGeometry & geometry);

/// Row-major grid of {0,1} pixels. The tag keeps activation frames and
/// segmentation masks from being mixed up by accident.
template <class Tag>
class BinaryImage
{
public:
  BinaryImage() = default;

  explicit BinaryImage(SensorGeometry geometry)
  : geometry_(geometry), pixels_(geometry.pixel_count(), 0)
  {
    validate(geometry);
  }

  /// Adopts `pixels`; any nonzero value is stored as 1.
  BinaryImage(SensorGeometry geometry, std::vector<std::uint8_t> pixels)
  : geometry_(geometry), pixels_(std::move(pixels))
  {
    validate(geometry);
    if (pixels_.size() != geometry.pixel_count()) {
      throw ValidationError("pixel buffer size does not match geometry");
    }
    for (auto & p : pixels_) {
      p = p != 0 ? 1 : 0;
    }
  }

  const SensorGeometry & geometry() const noexcept { return geometry_; }
  int width() const noexcept { return geometry_.width; }
  int height() const noexcept { return geometry_.height; }

  std::uint8_t operator()(int y, int x) const noexcept { return pixels_[index(y, x)]; }

  void set(int y, int x, bool on) noexcept { pixels_[index(y, x)] = on ? 1 : 0; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  std::size_t count() const noexcept
  {
    std::size_t n = 0;
    for (auto p : pixels_) {
      n += p;
    }
    return n;
  }

  friend bool operator==(const BinaryImage &, const BinaryImage &) = default;

private:
  std::size_t index(int y, int x) const noexcept
  {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(geometry_.width) +
           static_cast<std::size_t>(x);
  }

  SensorGeometry geometry_;
  std::vector<std::uint8_t> pixels_;
};

struct FrameTag;
struct MaskTag;

/// Bipolar-cell activation image: 1 where at least one event fired.
using BinaryFrame = BinaryImage<FrameTag>;
/// Predicted or ground-truth moving-object pixels.
using SegMask = BinaryImage<MaskTag>;

inline SegMask to_mask(const BinaryFrame & frame)
{
  return SegMask(frame.geometry(), {frame.pixels().begin(), frame.pixels().end()});
}

/// Real-valued filter response grid, row-major.
class FieldMap
{
public:
  FieldMap() = default;
  FieldMap(int rows, int cols) : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double operator()(int r, int c) const noexcept { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  double & operator()(int r, int c) noexcept { return values_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  friend bool operator==(const FieldMap &, const FieldMap &) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

}  // namespace oms
