#include "oms/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "oms/metrics.h"

namespace oms {

namespace {

class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int index(int n) { return std::min(n - 1, static_cast<int>(uniform() * n)); }

  // Knuth's multiplication method, split into chunks to keep exp(-lambda) normal.
  long poisson(double lambda)
  {
    long count = 0;
    while (lambda > 0.0) {
      const double step = std::min(lambda, 500.0);
      const double limit = std::exp(-step);
      double prod = 1.0;
      long k = 0;
      do {
        ++k;
        prod *= uniform();
      } while (prod > limit);
      count += k - 1;
      lambda -= step;
    }
    return count;
  }

private:
  std::mt19937_64 engine_;
};

int round_half_up(double v)
{
  return static_cast<int>(std::floor(v + 0.5));
}

int wrap(int v, int n)
{
  const int m = v % n;
  return m < 0 ? m + n : m;
}

void paint_object(const SceneObject & obj, int k, const SensorGeometry & g, std::vector<std::uint8_t> & img)
{
  const int cx = round_half_up(obj.start.x + k * obj.velocity.x);
  const int cy = round_half_up(obj.start.y + k * obj.velocity.y);
  if (obj.shape == ObjectShape::rect) {
    const int x0 = cx - obj.size / 2;
    const int y0 = cy - obj.size / 2;
    for (int y = std::max(0, y0); y < std::min(g.height, y0 + obj.size); ++y) {
      for (int x = std::max(0, x0); x < std::min(g.width, x0 + obj.size); ++x) {
        img[static_cast<std::size_t>(y) * g.width + x] = 1;
      }
    }
    return;
  }
  const double r = obj.size / 2.0;
  const int reach = static_cast<int>(std::ceil(r));
  for (int y = std::max(0, cy - reach); y <= std::min(g.height - 1, cy + reach); ++y) {
    for (int x = std::max(0, cx - reach); x <= std::min(g.width - 1, cx + reach); ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy <= r * r) {
        img[static_cast<std::size_t>(y) * g.width + x] = 1;
      }
    }
  }
}

// Pixels covered by any object at frame k or k - 1: everything the objects
// swept through during the window ending at frame k.
SegMask footprint(const SceneConfig & config, int k)
{
  std::vector<std::uint8_t> img(config.geometry.pixel_count(), 0);
  for (const auto & obj : config.objects) {
    paint_object(obj, k, config.geometry, img);
    if (k > 0) {
      paint_object(obj, k - 1, config.geometry, img);
    }
  }
  return SegMask(config.geometry, std::move(img));
}

}  // namespace

void validate(const SceneConfig & config)
{
  const auto & g = config.geometry;
  if (g.width < 1 || g.height < 1) {
    throw ConfigError("scene geometry must be at least 1x1");
  }
  if (config.n_frames < 2) {
    throw ConfigError("scene needs at least 2 frames");
  }
  if (!(config.bg_density > 0.0 && config.bg_density < 1.0)) {
    throw ConfigError("bg_density must lie in (0, 1)");
  }
  if (!(config.noise_rate >= 0.0) || !std::isfinite(config.noise_rate)) {
    throw ConfigError("noise_rate must be a non-negative number");
  }
  for (std::size_t i = 0; i < config.objects.size(); ++i) {
    const auto & obj = config.objects[i];
    if (obj.size < 1 || obj.size > std::min(g.width, g.height)) {
      throw ConfigError("object " + std::to_string(i) + " size " + std::to_string(obj.size) + " does not fit the frame");
    }
    if (!(obj.start.x >= 0.0 && obj.start.x < g.width && obj.start.y >= 0.0 && obj.start.y < g.height)) {
      throw ConfigError("object " + std::to_string(i) + " starts outside the frame");
    }
  }
}

std::vector<std::uint8_t> render_scene_frame(const SceneConfig & config, const std::vector<std::uint8_t> & texture, int k)
{
  const auto & g = config.geometry;
  const int ox = round_half_up(k * config.camera_velocity.x);
  const int oy = round_half_up(k * config.camera_velocity.y);
  std::vector<std::uint8_t> img(g.pixel_count());
  for (int y = 0; y < g.height; ++y) {
    const int ty = wrap(y - oy, g.height);
    for (int x = 0; x < g.width; ++x) {
      img[static_cast<std::size_t>(y) * g.width + x] =
        texture[static_cast<std::size_t>(ty) * g.width + wrap(x - ox, g.width)];
    }
  }
  for (const auto & obj : config.objects) {
    paint_object(obj, k, g, img);
  }
  return img;
}

Scene generate_scene(const SceneConfig & config)
{
  validate(config);
  const auto & g = config.geometry;
  Rng rng(config.seed);

  std::vector<std::uint8_t> texture(g.pixel_count());
  for (auto & t : texture) {
    t = rng.uniform() < config.bg_density ? 1 : 0;
  }

  Scene scene;
  scene.masks.reserve(config.n_frames);
  scene.timestamps.reserve(config.n_frames);
  std::vector<std::uint8_t> previous = render_scene_frame(config, texture, 0);
  scene.masks.push_back(footprint(config, 0));
  scene.timestamps.push_back(0);

  for (int k = 1; k < config.n_frames; ++k) {
    const Micros t = k * kFramePeriodUs;
    std::vector<std::uint8_t> current = render_scene_frame(config, texture, k);
    for (int y = 0; y < g.height; ++y) {
      for (int x = 0; x < g.width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * g.width + x;
        if (current[i] != previous[i]) {
          scene.events.push_back({t, x, y, current[i] ? 1 : -1});
        }
      }
    }
    const long noise = rng.poisson(config.noise_rate);
    for (long n = 0; n < noise; ++n) {
      const int x = rng.index(g.width);
      const int y = rng.index(g.height);
      const int p = rng.uniform() < 0.5 ? -1 : 1;
      scene.events.push_back({t, x, y, p});
    }
    scene.masks.push_back(footprint(config, k));
    scene.timestamps.push_back(t);
    previous = std::move(current);
  }
  return scene;
}

double scene_br(const SceneConfig & config)
{
  const Scene scene = generate_scene(config);
  const auto frames = accumulate_frames(scene.events, scene.timestamps, config.geometry);
  double total = 0.0;
  int counted = 0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const double br = bf_ratio(frames[k], scene.masks[k]);
    if (std::isfinite(br)) {
      total += br;
      ++counted;
    }
  }
  return counted == 0 ? 0.0 : total / counted;
}

}  // namespace oms
