// oms: object motion sensitivity pipeline for event-camera data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.h"

namespace {

void setup_logging()
{
  auto logger = spdlog::stderr_color_mt("oms");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char * env = std::getenv("OMS_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

struct ParamFlags
{
  CLI::Option * r1 = nullptr;
  CLI::Option * r2 = nullptr;
  CLI::Option * stride = nullptr;
  CLI::Option * alpha = nullptr;
  CLI::Option * mode = nullptr;
  CLI::Option * sigma_c = nullptr;
  CLI::Option * sigma_s = nullptr;
  oms::OmsParams values;
  std::string mode_text = "dense";

  void add(CLI::App & app)
  {
    r1 = app.add_option("--r1", values.r1, "center kernel radius");
    r2 = app.add_option("--r2", values.r2, "surround kernel radius");
    stride = app.add_option("--stride", values.surround_stride, "surround stride s_s");
    alpha = app.add_option("--alpha", values.alpha, "spike threshold");
    mode = app.add_option("--mode", mode_text, "dense or strided")->check(CLI::IsMember({"dense", "strided"}));
    sigma_c = app.add_option("--sigma-c", values.sigma_c, "center Gaussian sigma");
    sigma_s = app.add_option("--sigma-s", values.sigma_s, "surround Gaussian sigma");
  }

  // flags win over whatever is already in `p`
  void apply(oms::OmsParams & p) const
  {
    if (r1->count()) p.r1 = values.r1;
    if (r2->count()) p.r2 = values.r2;
    if (stride->count()) p.surround_stride = values.surround_stride;
    if (alpha->count()) p.alpha = values.alpha;
    if (mode->count()) p.mode = oms::parse_filter_mode(mode_text);
    if (sigma_c->count()) p.sigma_c = values.sigma_c;
    if (sigma_s->count()) p.sigma_s = values.sigma_s;
  }
};

std::optional<nlohmann::json> load_json(const std::string & path)
{
  if (path.empty()) {
    return std::nullopt;
  }
  std::ifstream in(path);
  if (!in) {
    throw oms::IoError("config not found: " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error & e) {
    throw oms::ParseError("config " + path + ": " + e.what(), e.byte);
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  setup_logging();
  namespace cli = oms::cli;

  CLI::App app{"Object motion sensitivity for event cameras"};
  app.require_subcommand(1);

  // run
  auto * run = app.add_subcommand("run", "run OMS over a dataset and write motion masks");
  std::string run_manifest, run_config, run_out, run_threads;
  bool overlays = false;
  ParamFlags run_params;
  run->add_option("--manifest", run_manifest, "dataset manifest.json");
  run->add_option("--config", run_config, "JSON run config (flags override it)");
  run->add_option("--out", run_out, "output directory");
  run->add_option("--threads", run_threads, "worker threads or 'auto'");
  run->add_flag("--overlays", overlays, "write DVS | GT | OMS composites");
  run_params.add(*run);

  // eval
  auto * eval = app.add_subcommand("eval", "score predicted masks against ground truth");
  cli::EvalOptions eval_opts;
  std::string eval_report;
  eval->add_option("--pred", eval_opts.pred_dir, "run directory or directory of mask_NNNNNN.pgm")->required();
  eval->add_option("--manifest", eval_opts.manifest_path, "dataset manifest.json")->required();
  eval->add_option("--out", eval_report, "report path (default <pred>/report.json)");
  eval->add_flag("--verbose", eval_opts.verbose, "include per-frame scores");

  // synth
  auto * synth = app.add_subcommand("synth", "generate a synthetic dataset");
  std::string scene_path, synth_out;
  synth->add_option("--scene", scene_path, "scene config JSON")->required();
  synth->add_option("--out", synth_out, "output directory")->required();

  // bench
  auto * bench = app.add_subcommand("bench", "time the OMS pipeline single- and multi-threaded");
  std::string bench_manifest, bench_threads = "auto";
  cli::BenchOptions bench_opts;
  ParamFlags bench_params;
  bench->add_option("--manifest", bench_manifest, "dataset manifest.json");
  bench->add_option("--synthetic", bench_opts.synthetic_frames, "benchmark N synthetic 346x260 frames instead");
  bench->add_option("--threads", bench_threads, "multi-thread team size or 'auto'");
  bench->add_option("--repeats", bench_opts.repeats, "passes over the frames");
  bench_params.add(*bench);

  // kernel-dump
  auto * dump = app.add_subcommand("kernel-dump", "print a feathered kernel as text");
  int dump_radius = 2;
  std::optional<double> dump_sigma;
  dump->add_option("--radius", dump_radius, "kernel radius")->required();
  dump->add_option("--sigma", dump_sigma, "Gaussian sigma (default radius/2)");

  // import
  auto * import = app.add_subcommand("import", "convert an EV-IMO or MOD directory to the native layout");
  std::string import_format, import_in, import_out;
  import->add_option("--format", import_format, "evimo or mod")->required()->check(CLI::IsMember({"evimo", "mod"}));
  import->add_option("--in", import_in, "dataset directory")->required();
  import->add_option("--out", import_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  try {
    if (*run) {
      cli::RunConfig config;
      if (auto j = load_json(run_config)) {
        cli::merge_run_config(*j, config);
      }
      if (!run_manifest.empty()) config.manifest_path = run_manifest;
      if (!run_out.empty()) config.output_dir = run_out;
      if (!run_threads.empty()) config.threads = cli::parse_threads(run_threads);
      if (overlays) config.emit_overlays = true;
      run_params.apply(config.params);
      if (config.manifest_path.empty() || config.output_dir.empty()) {
        std::cerr << "usage error: run needs --manifest and --out (or a config providing them)\n";
        return cli::kInputError;
      }
      return cli::cmd_run(config, std::cout, std::cerr);
    }
    if (*eval) {
      if (!eval_report.empty()) eval_opts.report_path = eval_report;
      return cli::cmd_eval(eval_opts, std::cout, std::cerr);
    }
    if (*synth) {
      return cli::cmd_synth(scene_path, synth_out, std::cout, std::cerr);
    }
    if (*bench) {
      if (!bench_manifest.empty()) bench_opts.manifest_path = bench_manifest;
      bench_opts.threads = cli::parse_threads(bench_threads);
      bench_params.apply(bench_opts.params);
      return cli::cmd_bench(bench_opts, std::cout, std::cerr);
    }
    if (*dump) {
      return cli::cmd_kernel_dump(dump_radius, dump_sigma, std::cout, std::cerr);
    }
    if (*import) {
      return cli::cmd_import(import_format, import_in, import_out, std::cout, std::cerr);
    }
  } catch (const oms::Error & e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kInputError;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kInternalError;
  }
  return cli::kInputError;
}
