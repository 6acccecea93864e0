#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "erel/metrics.hpp"
#include "erel/selection.hpp"
#include "erel/synth.hpp"

namespace erel {

/// One frame's files, paths resolved against the manifest directory.
struct ManifestEntry {
  std::string frame_id;
  std::filesystem::path image;
  std::vector<std::filesystem::path> erels;
  std::optional<std::filesystem::path> ground_truth;
  Category category = Category::general;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
};

/// Parses a manifest JSON file and checks that every referenced file exists.
DatasetManifest load_manifest(const std::filesystem::path& manifest_path);

/// Loads one frame: image, region coordinate files, optional ground truth.
/// Region coordinates are validated against the frame bounds.
FrameSample load_frame(const ManifestEntry& entry);

/// Loads every frame of a manifest, in manifest order.
std::vector<FrameSample> load_dataset(const std::filesystem::path& manifest_path);

struct DatasetStats {
  std::size_t frames = 0;
  std::size_t total_erels = 0;
  double avg_erels = 0.0;
  std::size_t min_erels = 0;
  std::size_t max_erels = 0;
};

DatasetStats dataset_stats(const std::vector<FrameSample>& samples);

/// Region coordinate file: one "row col" pair per line.
RegionCoords read_region_coords(const std::filesystem::path& path);
void write_region_coords(const std::filesystem::path& path,
                         const RegionCoords& coords);

/// Ground truth contour file: one "x,y" pair per line, floating point.
std::vector<ContourPoint> read_contour_csv(const std::filesystem::path& path);
void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<ContourPoint>& contour);

/// Selection output for one frame.
struct FrameResult {
  std::string frame_id;
  Category category = Category::general;
  SelectionResult result;
};

struct ResultsFile {
  PipelineConfig config;
  std::vector<FrameResult> frames;
};

/// Writes selection results with the pipeline configuration and full score
/// traces. Serialization is canonical: rewriting the same results produces
/// byte-identical files.
void write_results_json(const std::filesystem::path& path,
                        const PipelineConfig& config,
                        const std::vector<FrameResult>& frames);

ResultsFile read_results_json(const std::filesystem::path& path);

/// Report rows as CSV: category x selector with mean/std of both metrics.
void write_report_csv(const std::filesystem::path& path,
                      const AggregateReport& report);

/// Full report as JSON: aggregate rows, per-frame scores, and per-frame score
/// curves for plotting when selection results are supplied.
void write_report_json(const std::filesystem::path& path,
                       const AggregateReport& report,
                       const std::vector<FrameEvaluation>& evals,
                       double spacing, const ResultsFile* curves = nullptr);

struct ReportFile {
  AggregateReport report;
  std::vector<FrameEvaluation> evals;
  double spacing = 1.0;
};

ReportFile read_report_json(const std::filesystem::path& path);

struct GoldRow {
  std::string frame_id;
  int gold_index = -1;
  double gold_hd = 0.0;
};

void write_gold_csv(const std::filesystem::path& path,
                    const std::vector<GoldRow>& rows);

/// Writes one correlation and one compactness curve CSV per frame into `dir`.
void write_plotdata(const std::filesystem::path& dir, const ResultsFile& results);

/// Generates `frames` synthetic frames into `dir` (images/, erels/, gt/ and
/// manifest.json) and returns the manifest path. Frame recipes derive from
/// the seed; equal seeds give identical datasets.
std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir,
                                              std::uint64_t seed, int frames,
                                              ArtifactType artifact,
                                              int width = 192, int height = 192);

} // namespace erel
