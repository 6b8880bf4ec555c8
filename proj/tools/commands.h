#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "oms/dataset_io.h"
#include "oms/metrics.h"
#include "oms/oms.h"

namespace oms::cli {

namespace fs = std::filesystem;

enum ExitCode : int
{
  kOk = 0,
  kInternalError = 1,
  kInputError = 2,
};

struct RunConfig
{
  fs::path manifest_path;
  OmsParams params;
  fs::path output_dir;
  bool emit_overlays = false;
  int threads = 0;  ///< 0 = auto
};

nlohmann::json to_json(const OmsParams & params);
/// Overlays the keys present in `j` onto `params`.
void merge_params(const nlohmann::json & j, OmsParams & params);
nlohmann::json to_json(const RunConfig & config);
/// Overlays the keys present in `j` onto `config`.
void merge_run_config(const nlohmann::json & j, RunConfig & config);
/// "auto" -> 0, otherwise a positive integer.
int parse_threads(const std::string & text);

nlohmann::json to_json(const SequenceReport & report, bool per_frame);

/// Writes masks/mask_NNNNNN.pgm, run_manifest.json and config.json under
/// output_dir; with emit_overlays also overlays/overlay_NNNNNN.pgm
/// (DVS frame | GT-masked frame | OMS-masked frame).
int cmd_run(const RunConfig & config, std::ostream & out, std::ostream & err);

struct EvalOptions
{
  fs::path pred_dir;       ///< run directory or a directory of mask_NNNNNN.pgm
  fs::path manifest_path;
  std::optional<fs::path> report_path;  ///< default: <pred_dir>/report.json
  bool verbose = false;
};

int cmd_eval(const EvalOptions & options, std::ostream & out, std::ostream & err);

int cmd_synth(const fs::path & scene_config_path, const fs::path & out_dir, std::ostream & out, std::ostream & err);

struct BenchOptions
{
  std::optional<fs::path> manifest_path;
  int synthetic_frames = 0;  ///< used when no manifest is given
  OmsParams params;
  int threads = 0;           ///< multi-thread team size, 0 = auto
  int repeats = 1;
};

int cmd_bench(const BenchOptions & options, std::ostream & out, std::ostream & err);

int cmd_kernel_dump(int radius, std::optional<double> sigma, std::ostream & out, std::ostream & err);

int cmd_import(const std::string & format, const fs::path & in_dir, const fs::path & out_dir, std::ostream & out, std::ostream & err);

/// Loaded dataset plus its accumulated DVS frames.
struct PreparedDataset
{
  Dataset dataset;
  std::vector<BinaryFrame> frames;
};

PreparedDataset prepare_dataset(const fs::path & manifest_path);

/// Default desk-scale scene used by `bench --synthetic` and the tests.
SceneConfig default_bench_scene(int n_frames);

}  // namespace oms::cli
