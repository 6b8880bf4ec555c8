#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <spdlog/spdlog.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oms::cli {

namespace {

constexpr const char * kToolName = "oms";
constexpr int kRunManifestVersion = 1;

int guarded(std::ostream & err, const std::function<int()> & body)
{
  try {
    return body();
  } catch (const ParseError & e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const IoError & e) {
    err << "I/O error: " << e.what() << "\n";
  } catch (const ImportError & e) {
    err << "import error: " << e.what() << "\n";
  } catch (const ConfigError & e) {
    err << "config error: " << e.what() << "\n";
  } catch (const Error & e) {
    // ValidationError, ParameterError, DimensionError
    err << "validation error: " << e.what() << "\n";
  } catch (const fs::filesystem_error & e) {
    err << "I/O error: " << e.what() << "\n";
  } catch (const std::exception & e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

void write_text(const fs::path & path, const std::string & text)
{
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  f << text;
  if (!f) {
    throw IoError("write failed for " + path.string());
  }
}

int resolve_threads(int threads)
{
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

std::vector<std::uint8_t> overlay(const BinaryFrame & dvs, const SegMask & gt, const SegMask & pred)
{
  const int w = dvs.width();
  const int h = dvs.height();
  std::vector<std::uint8_t> px(static_cast<std::size_t>(3) * w * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t row = static_cast<std::size_t>(y) * 3 * w;
      px[row + x] = dvs(y, x) ? 255 : 0;
      px[row + w + x] = gt(y, x) ? 255 : 0;
      px[row + 2 * w + x] = pred(y, x) ? 255 : 0;
    }
  }
  return px;
}

double percentile(std::vector<double> samples, double p)
{
  if (samples.empty()) {
    return 0.0;
  }
  std::sort(samples.begin(), samples.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(samples.size())));
  return samples[std::clamp<std::size_t>(rank, 1, samples.size()) - 1];
}

}  // namespace

nlohmann::json to_json(const OmsParams & p)
{
  return {
    {"r1", p.r1},
    {"r2", p.r2},
    {"stride", p.surround_stride},
    {"alpha", p.alpha},
    {"sigma_c", p.sigma_c},
    {"sigma_s", p.sigma_s},
    {"mode", std::string(to_string(p.mode))},
  };
}

void merge_params(const nlohmann::json & j, OmsParams & p)
{
  try {
    p.r1 = j.value("r1", p.r1);
    p.r2 = j.value("r2", p.r2);
    p.surround_stride = j.value("stride", p.surround_stride);
    p.alpha = j.value("alpha", p.alpha);
    p.sigma_c = j.value("sigma_c", p.sigma_c);
    p.sigma_s = j.value("sigma_s", p.sigma_s);
    if (j.contains("mode")) {
      p.mode = parse_filter_mode(j["mode"].get<std::string>());
    }
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
}

nlohmann::json to_json(const RunConfig & c)
{
  return {
    {"manifest", c.manifest_path.string()},
    {"out", c.output_dir.string()},
    {"params", to_json(c.params)},
    {"emit_overlays", c.emit_overlays},
    {"threads", c.threads == 0 ? nlohmann::json("auto") : nlohmann::json(c.threads)},
  };
}

int parse_threads(const std::string & text)
{
  if (text == "auto") {
    return 0;
  }
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || n < 1) {
    throw ConfigError("threads must be 'auto' or a positive integer, got '" + text + "'");
  }
  return n;
}

void merge_run_config(const nlohmann::json & j, RunConfig & c)
{
  try {
    if (j.contains("manifest")) c.manifest_path = j["manifest"].get<std::string>();
    if (j.contains("out")) c.output_dir = j["out"].get<std::string>();
    if (j.contains("params")) merge_params(j["params"], c.params);
    c.emit_overlays = j.value("emit_overlays", c.emit_overlays);
    if (j.contains("threads")) {
      const auto & t = j["threads"];
      c.threads = t.is_string() ? parse_threads(t.get<std::string>()) : parse_threads(std::to_string(t.get<int>()));
    }
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
}

nlohmann::json to_json(const SequenceReport & r, bool per_frame)
{
  nlohmann::json j = {
    {"mean_iou", r.mean_iou},
    {"iou_std", r.iou_std},
    {"detection_rate", r.detection_rate},
    {"frames_evaluated", r.frames_evaluated},
    {"frames_skipped", r.frames_skipped},
    {"br_mean", r.br_mean},
  };
  if (per_frame) {
    auto frames = nlohmann::json::array();
    for (std::size_t i = 0; i < r.frames.size(); ++i) {
      const auto & s = r.frames[i];
      frames.push_back({
        {"index", i},
        {"evaluated", s.evaluated},
        {"iou", s.iou},
        {"detected", s.detected},
        {"gt_area", s.gt_area},
        {"pred_area", s.pred_area},
        {"inter_area", s.inter_area},
        {"outside_inter_area", s.outside_inter_area},
        {"br", s.br},
      });
    }
    j["frames"] = std::move(frames);
  }
  return j;
}

PreparedDataset prepare_dataset(const fs::path & manifest_path)
{
  PreparedDataset p;
  p.dataset = load_dataset(read_manifest(manifest_path));
  const auto & m = p.dataset.manifest;
  p.frames = accumulate_frames(p.dataset.events, m.mask_timestamps, m.geometry);
  return p;
}

SceneConfig default_bench_scene(int n_frames)
{
  SceneConfig c;
  c.geometry = {346, 260};
  c.n_frames = n_frames;
  c.bg_density = 0.05;
  c.camera_velocity = {1.0, 0.0};
  c.objects = {
    {ObjectShape::disk, 40, {3.0, 1.0}, {90.0, 110.0}},
    {ObjectShape::rect, 30, {-2.0, 2.0}, {250.0, 60.0}},
  };
  c.noise_rate = 20.0;
  c.seed = 7;
  return c;
}

int cmd_run(const RunConfig & config, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    validate(config.params);
    const PreparedDataset prepared = prepare_dataset(config.manifest_path);
    const auto & frames = prepared.frames;
    spdlog::info("running OMS on {} frames", frames.size());
    const auto masks = oms_sequence(frames, config.params, config.threads);

    const fs::path dir = config.output_dir;
    fs::create_directories(dir / "masks");
    nlohmann::json listing = nlohmann::json::array();
    const auto & ts = prepared.dataset.manifest.mask_timestamps;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      const std::string name = mask_file_name(k);
      write_mask(dir / "masks" / name, masks[k]);
      listing.push_back({{"index", k}, {"timestamp", ts[k]}, {"file", "masks/" + name}});
    }
    if (config.emit_overlays) {
      fs::create_directories(dir / "overlays");
      for (std::size_t k = 0; k < masks.size(); ++k) {
        const SegMask gt = apply_mask(frames[k], prepared.dataset.masks[k]);
        const SegMask pred = apply_mask(frames[k], masks[k]);
        char name[40];
        std::snprintf(name, sizeof name, "overlay_%06zu.pgm", k);
        write_pgm(dir / "overlays" / name, 3 * frames[k].width(), frames[k].height(), overlay(frames[k], gt, pred));
      }
    }

    const nlohmann::json run_manifest = {
      {"format_version", kRunManifestVersion},
      {"tool", kToolName},
      {"mask_format", "pgm-p5-8bit-0-255"},
      {"event_format_version", kEventFormatVersion},
      {"manifest_version", kManifestVersion},
      {"dataset_manifest", config.manifest_path.string()},
      {"geometry", {{"width", prepared.dataset.manifest.geometry.width}, {"height", prepared.dataset.manifest.geometry.height}}},
      {"params", to_json(config.params)},
      {"frames", listing},
    };
    write_text(dir / "run_manifest.json", run_manifest.dump(2) + "\n");
    write_text(dir / "config.json", to_json(config).dump(2) + "\n");
    out << "wrote " << masks.size() << " masks to " << (dir / "masks").string() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_eval(const EvalOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    const PreparedDataset prepared = prepare_dataset(options.manifest_path);
    const auto & m = prepared.dataset.manifest;
    const fs::path mask_dir =
      fs::is_regular_file(options.pred_dir / "run_manifest.json") ? options.pred_dir / "masks" : options.pred_dir;
    if (!fs::is_directory(mask_dir)) {
      throw IoError("prediction directory not found: " + mask_dir.string());
    }
    std::vector<SegMask> preds;
    preds.reserve(m.mask_timestamps.size());
    for (std::size_t k = 0; k < m.mask_timestamps.size(); ++k) {
      preds.push_back(read_mask(mask_dir / mask_file_name(k), m.geometry));
    }
    const SequenceReport report = evaluate_sequence(preds, prepared.dataset.masks, prepared.frames);
    const std::string text = to_json(report, options.verbose).dump(2) + "\n";
    write_text(options.report_path.value_or(options.pred_dir / "report.json"), text);
    out << text;
    return static_cast<int>(kOk);
  });
}

int cmd_synth(const fs::path & scene_config_path, const fs::path & out_dir, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    const SceneConfig config = read_scene_config(scene_config_path);
    const Scene scene = generate_scene(config);
    write_dataset(out_dir, config.geometry, scene.events, scene.masks, scene.timestamps, DatasetSource::native);
    write_text(out_dir / "scene.json", to_json(config).dump(2) + "\n");
    out << "wrote " << scene.events.size() << " events and " << scene.masks.size() << " masks to " << out_dir.string() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_bench(const BenchOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    using clock = std::chrono::steady_clock;
    validate(options.params);

    std::vector<BinaryFrame> frames;
    if (options.manifest_path) {
      frames = prepare_dataset(*options.manifest_path).frames;
    } else if (options.synthetic_frames > 0) {
      const Scene scene = generate_scene(default_bench_scene(std::max(2, options.synthetic_frames)));
      frames = accumulate_frames(scene.events, scene.timestamps, {346, 260});
      frames.resize(static_cast<std::size_t>(options.synthetic_frames));
    }
    if (frames.empty()) {
      out << "no frames to benchmark (empty dataset)\n";
      return static_cast<int>(kOk);
    }

    const KernelPair kernels = make_kernels(options.params);
    const int repeats = std::max(1, options.repeats);
    const int team = resolve_threads(options.threads);

    std::vector<double> single_ms;
    std::vector<SegMask> single_masks;
    auto start = clock::now();
    for (int rep = 0; rep < repeats; ++rep) {
      single_masks.clear();
      for (const auto & f : frames) {
        const auto t0 = clock::now();
        single_masks.push_back(oms_frame(f, options.params, kernels));
        single_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
      }
    }
    const double single_s = std::chrono::duration<double>(clock::now() - start).count();

    std::vector<double> multi_ms(frames.size() * static_cast<std::size_t>(repeats));
    std::vector<SegMask> multi_masks(frames.size());
    const long long n = static_cast<long long>(frames.size());
    start = clock::now();
    for (int rep = 0; rep < repeats; ++rep) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
      for (long long i = 0; i < n; ++i) {
        const auto t0 = clock::now();
        multi_masks[static_cast<std::size_t>(i)] = oms_frame(frames[static_cast<std::size_t>(i)], options.params, kernels);
        multi_ms[static_cast<std::size_t>(rep) * frames.size() + static_cast<std::size_t>(i)] =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      }
    }
    const double multi_s = std::chrono::duration<double>(clock::now() - start).count();

    const double total = static_cast<double>(frames.size()) * repeats;
    out << std::fixed << std::setprecision(3);
    out << "frames: " << frames.size() << " x " << repeats << " (" << frames[0].width() << "x" << frames[0].height()
        << ", " << to_string(options.params.mode) << ")\n";
    out << "single-thread: p50 " << percentile(single_ms, 50) << " ms  p95 " << percentile(single_ms, 95)
        << " ms  throughput " << total / single_s << " frames/s\n";
    out << "multi-thread (" << team << " threads): p50 " << percentile(multi_ms, 50) << " ms  p95 "
        << percentile(multi_ms, 95) << " ms  throughput " << total / multi_s << " frames/s\n";
    out << "masks identical across thread counts: " << (single_masks == multi_masks ? "yes" : "no") << "\n";
    return single_masks == multi_masks ? static_cast<int>(kOk) : static_cast<int>(kInternalError);
  });
}

int cmd_kernel_dump(int radius, std::optional<double> sigma, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    out << format_kernel(make_feathered_kernel(radius, sigma.value_or(radius / 2.0)));
    return static_cast<int>(kOk);
  });
}

int cmd_import(const std::string & format, const fs::path & in_dir, const fs::path & out_dir, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    DatasetManifest m;
    if (format == "evimo") {
      m = import_evimo(in_dir, out_dir);
    } else if (format == "mod") {
      m = import_mod(in_dir, out_dir);
    } else {
      throw ValidationError("unknown import format '" + format + "' (expected evimo or mod)");
    }
    out << "imported " << m.mask_timestamps.size() << " masks into " << out_dir.string() << "\n";
    return static_cast<int>(kOk);
  });
}

}  // namespace oms::cli
