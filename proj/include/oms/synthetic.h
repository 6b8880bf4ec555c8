#pragma once

#include <cstdint>
#include <vector>

#include "oms/event.h"
#include "oms/image.h"

namespace oms {

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

enum class ObjectShape
{
  disk,  ///< size is the diameter
  rect,  ///< axis-aligned square, size is the side length
};

struct SceneObject
{
  ObjectShape shape = ObjectShape::disk;
  int size = 20;
  Vec2 velocity;  ///< pixels per frame
  Vec2 start;     ///< center at frame 0

  friend bool operator==(const SceneObject &, const SceneObject &) = default;
};

/// A 2D scene: a random binary texture (toroidally translated by the
/// camera) with solid objects painted on top.
struct SceneConfig
{
  SensorGeometry geometry{346, 260};
  int n_frames = 50;
  double bg_density = 0.1;  ///< probability that a texture pixel is 1
  Vec2 camera_velocity;     ///< pixels per frame
  std::vector<SceneObject> objects;
  double noise_rate = 0.0;  ///< expected spurious events per frame
  std::uint64_t seed = 1;

  friend bool operator==(const SceneConfig &, const SceneConfig &) = default;
};

/// Frame k sits at t = k * kFramePeriodUs.
inline constexpr Micros kFramePeriodUs = 1000;

struct Scene
{
  std::vector<Event> events;
  std::vector<SegMask> masks;       ///< object footprints at frames k-1 and k
  std::vector<Micros> timestamps;   ///< frame times, usable as mask timestamps
};

/// Throws ConfigError on n_frames < 2, bg_density outside (0, 1), negative
/// noise, object size outside [1, min(width, height)] or a start position
/// off the sensor.
void validate(const SceneConfig & config);

/// Renders n_frames binary images and emits one event per pixel that changes
/// between frame k-1 and k (p = +1 for 0->1, -1 for 1->0) at t = k * 1000 us,
/// followed by Poisson(noise_rate) uniformly placed noise events. Mask k is
/// the union of the object footprints at frames k-1 and k (frame 0 alone for
/// k = 0), so every object-caused event of window k lies inside it.
///
/// Randomness comes from std::mt19937_64 seeded with `seed`. Draw order: the
/// texture row-major (one draw per pixel, 1 iff u < bg_density), then per
/// frame k >= 1 the noise count and for each noise event x, y and polarity.
/// Uniform reals are (draw >> 11) * 2^-53.
Scene generate_scene(const SceneConfig & config);

/// Mean bf_ratio between each frame's accumulated events and its mask, over
/// frames with at least one event inside the mask.
double scene_br(const SceneConfig & config);

/// Renders frame k (background plus objects) as a row-major 0/1 image.
std::vector<std::uint8_t> render_scene_frame(const SceneConfig & config, const std::vector<std::uint8_t> & texture, int k);

}  // namespace oms
