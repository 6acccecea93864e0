#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erel/dataio.hpp"
#include "erel/errors.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  int dilate_radius = 6;
  int k_maxima = 2;
  std::string corr_mode = "binary";
  int contour_samples = 360;
};

void add_pipeline_flags(CLI::App& app, CommonOptions& opts) {
  app.add_option("--dilate-radius", opts.dilate_radius,
                 "Disk radius for region dilation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--k-maxima", opts.k_maxima,
                 "How many leading local maxima of the compactness curve to consider")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--corr-mode", opts.corr_mode,
                 "Rendering used by the correlation pass")
      ->check(CLI::IsMember({"binary", "gray"}))
      ->capture_default_str();
  app.add_option("--contour-samples", opts.contour_samples,
                 "Points sampled on ellipse contours")
      ->check(CLI::Range(8, 100000))
      ->capture_default_str();
}

erel::PipelineConfig to_config(const CommonOptions& opts) {
  erel::PipelineConfig cfg;
  cfg.dilate_radius = opts.dilate_radius;
  cfg.k_maxima = opts.k_maxima;
  cfg.corr_mode = erel::corr_mode_from_string(opts.corr_mode);
  cfg.contour_samples = opts.contour_samples;
  return cfg;
}

void print_dataset_stats(const std::vector<erel::FrameSample>& samples) {
  const erel::DatasetStats stats = erel::dataset_stats(samples);
  std::cerr << "loaded " << stats.frames << " frames, " << stats.total_erels
            << " regions (avg " << stats.avg_erels << ", min " << stats.min_erels
            << ", max " << stats.max_erels << " per frame)\n";
}

int run_select(const std::string& manifest, const CommonOptions& opts,
               const std::string& out) {
  const erel::PipelineConfig cfg = to_config(opts);
  const std::vector<erel::FrameSample> samples = erel::load_dataset(manifest);
  print_dataset_stats(samples);
  std::vector<erel::FrameResult> results;
  results.reserve(samples.size());
  for (const erel::FrameSample& sample : samples) {
    results.push_back({sample.id, sample.category, erel::select(sample, cfg)});
  }
  erel::write_results_json(out, cfg, results);
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int run_evaluate(const std::string& manifest, const std::string& results_path,
                 double spacing, const std::string& std_mode,
                 const std::string& out, const std::string& json_out) {
  const erel::ResultsFile results = erel::read_results_json(results_path);
  std::map<std::string, const erel::FrameResult*> by_id;
  for (const erel::FrameResult& f : results.frames) by_id[f.frame_id] = &f;

  const std::vector<erel::FrameSample> samples = erel::load_dataset(manifest);
  std::vector<erel::FrameEvaluation> evals;
  std::size_t no_truth = 0;
  std::size_t no_result = 0;
  for (const erel::FrameSample& sample : samples) {
    if (!sample.ground_truth) {
      ++no_truth;
      continue;
    }
    const auto it = by_id.find(sample.id);
    if (it == by_id.end()) {
      ++no_result;
      continue;
    }
    evals.push_back(erel::evaluate_frame(sample, it->second->result,
                                         results.config, spacing));
  }
  if (no_truth > 0) {
    std::cerr << "skipped " << no_truth << " frames without ground truth\n";
  }
  if (no_result > 0) {
    std::cerr << "skipped " << no_result << " frames without selection results\n";
  }
  const erel::AggregateReport report =
      erel::aggregate(evals, erel::std_mode_from_string(std_mode));
  erel::write_report_csv(out, report);
  std::cerr << "wrote " << out << "\n";
  if (!json_out.empty()) {
    erel::write_report_json(json_out, report, evals, spacing, &results);
    std::cerr << "wrote " << json_out << "\n";
  }
  return 0;
}

int run_synth(std::uint64_t seed, int frames, const std::string& artifact,
              const std::string& out_dir, int width, int height) {
  const fs::path manifest = erel::write_synthetic_dataset(
      out_dir, seed, frames, erel::artifact_from_string(artifact), width, height);
  std::cerr << "wrote " << manifest.string() << "\n";
  return 0;
}

int run_gold(const std::string& manifest, const CommonOptions& opts,
             double spacing, const std::string& out) {
  const erel::PipelineConfig cfg = to_config(opts);
  const std::vector<erel::FrameSample> samples = erel::load_dataset(manifest);
  std::vector<erel::GoldRow> rows;
  std::size_t skipped = 0;
  for (const erel::FrameSample& sample : samples) {
    if (!sample.ground_truth) {
      ++skipped;
      continue;
    }
    const erel::GoldStandard gold = erel::gold_standard(sample, cfg);
    rows.push_back({sample.id, gold.index, gold.hd * spacing});
  }
  if (skipped > 0) {
    std::cerr << "skipped " << skipped << " frames without ground truth\n";
  }
  if (rows.empty()) {
    throw erel::input_error("gold: no frame has ground truth");
  }
  erel::write_gold_csv(out, rows);
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int run_plotdata(const std::string& results_path, const std::string& out_dir) {
  const erel::ResultsFile results = erel::read_results_json(results_path);
  erel::write_plotdata(out_dir, results);
  std::cerr << "wrote " << results.frames.size() << " curve pairs to " << out_dir
            << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-pass selection of the lumen region from extremal region series"};
  app.require_subcommand(1);

  // select
  auto* select = app.add_subcommand("select", "Run selection over a dataset");
  std::string sel_manifest, sel_out = "results.json";
  CommonOptions sel_opts;
  select->add_option("--manifest", sel_manifest, "Dataset manifest JSON")
      ->required();
  select->add_option("--out", sel_out, "Results JSON path")
      ->capture_default_str();
  add_pipeline_flags(*select, sel_opts);

  // evaluate
  auto* evaluate =
      app.add_subcommand("evaluate", "Score selection results against ground truth");
  std::string eval_manifest, eval_results, eval_out = "report.csv", eval_json;
  double eval_spacing = 1.0;
  std::string eval_std = "population";
  evaluate->add_option("--manifest", eval_manifest, "Dataset manifest JSON")
      ->required();
  evaluate->add_option("--results", eval_results, "Results JSON from 'select'")
      ->required();
  evaluate->add_option("--spacing", eval_spacing, "Physical units per pixel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_option("--std", eval_std, "Standard deviation convention")
      ->check(CLI::IsMember({"population", "sample"}))
      ->capture_default_str();
  evaluate->add_option("--out", eval_out, "Report CSV path")
      ->capture_default_str();
  evaluate->add_option("--json-out", eval_json,
                       "Optional full report JSON (per-frame scores and curves)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::uint64_t synth_seed = 0;
  int synth_frames = 10;
  std::string synth_artifact = "none", synth_out;
  int synth_width = 192, synth_height = 192;
  synth->add_option("--seed", synth_seed, "Master seed")->required();
  synth->add_option("--frames", synth_frames, "Number of frames")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--artifact", synth_artifact, "Artifact type")
      ->check(CLI::IsMember({"none", "bifurcation_notch", "shadow_sector"}))
      ->capture_default_str();
  synth->add_option("--out", synth_out, "Output dataset directory")->required();
  synth->add_option("--width", synth_width, "Canvas width")
      ->check(CLI::Range(96, 4096))
      ->capture_default_str();
  synth->add_option("--height", synth_height, "Canvas height")
      ->check(CLI::Range(96, 4096))
      ->capture_default_str();

  // gold
  auto* gold = app.add_subcommand(
      "gold", "Best achievable region per frame under the Hausdorff metric");
  std::string gold_manifest, gold_out = "gold.csv";
  CommonOptions gold_opts;
  double gold_spacing = 1.0;
  gold->add_option("--manifest", gold_manifest, "Dataset manifest JSON")
      ->required();
  gold->add_option("--spacing", gold_spacing, "Physical units per pixel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gold->add_option("--out", gold_out, "Gold standard CSV path")
      ->capture_default_str();
  add_pipeline_flags(*gold, gold_opts);

  // plotdata
  auto* plotdata =
      app.add_subcommand("plotdata", "Export per-frame score curves as CSV");
  std::string plot_results, plot_out;
  plotdata->add_option("--results", plot_results, "Results JSON from 'select'")
      ->required();
  plotdata->add_option("--out", plot_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (select->parsed()) return run_select(sel_manifest, sel_opts, sel_out);
    if (evaluate->parsed()) {
      return run_evaluate(eval_manifest, eval_results, eval_spacing, eval_std,
                          eval_out, eval_json);
    }
    if (synth->parsed()) {
      return run_synth(synth_seed, synth_frames, synth_artifact, synth_out,
                       synth_width, synth_height);
    }
    if (gold->parsed()) {
      return run_gold(gold_manifest, gold_opts, gold_spacing, gold_out);
    }
    if (plotdata->parsed()) return run_plotdata(plot_results, plot_out);
  } catch (const erel::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const erel::degenerate_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
