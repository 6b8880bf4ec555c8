#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "oms/image.h"
#include "oms/synthetic.h"

namespace oms::test {

inline BinaryFrame random_frame(std::mt19937_64 & rng, int w, int h, double density = 0.5)
{
  std::bernoulli_distribution on(density);
  BinaryFrame f({w, h});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f.set(y, x, on(rng));
    }
  }
  return f;
}

inline SegMask random_mask(std::mt19937_64 & rng, int w, int h, double density = 0.5)
{
  return to_mask(random_frame(rng, w, h, density));
}

/// Fresh empty directory under the build tree's temp area.
inline std::filesystem::path scratch_dir(const std::string & name)
{
  const auto dir = std::filesystem::temp_directory_path() / ("oms_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path source_dir()
{
  return OMS_SOURCE_DIR;
}

/// 346x260 scene where background and object activity are comparable.
inline SceneConfig balanced_scene()
{
  SceneConfig c;
  c.geometry = {346, 260};
  c.n_frames = 50;
  c.bg_density = 0.0015;
  c.camera_velocity = {1.0, 0.0};
  c.objects = {{ObjectShape::disk, 40, {3.0, 1.0}, {90.0, 110.0}}};
  c.noise_rate = 0.0;
  c.seed = 42;
  return c;
}

/// Background-dominant variant: denser texture, faster camera.
inline SceneConfig cluttered_scene()
{
  SceneConfig c = balanced_scene();
  c.bg_density = 0.05;
  c.camera_velocity = {3.0, 1.0};
  return c;
}

}  // namespace oms::test
