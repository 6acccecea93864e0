#include "erel/dataio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "erel/errors.hpp"
#include "erel/image_io.hpp"

namespace erel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void fail(const fs::path& path, const std::string& why) {
  throw input_error(path.string() + ": " + why);
}

std::ifstream open_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  return in;
}

std::ofstream create_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open file for writing");
  return out;
}

json parse_json_file(const fs::path& path) {
  std::ifstream in = open_text(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(path, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void dump_json_file(const fs::path& path, const json& j) {
  std::ofstream out = create_text(path);
  out << j.dump(2) << "\n";
  if (!out) fail(path, "write failed");
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string compact9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

fs::path resolve(const fs::path& root, const std::string& rel) {
  fs::path p(rel);
  return p.is_absolute() ? p : root / p;
}

json ellipse_to_json(const Ellipse& e) {
  return json{{"angle", e.angle},
              {"center_x", e.center_x},
              {"center_y", e.center_y},
              {"semi_major", e.semi_major},
              {"semi_minor", e.semi_minor}};
}

Ellipse ellipse_from_json(const json& j) {
  Ellipse e;
  e.angle = j.at("angle").get<double>();
  e.center_x = j.at("center_x").get<double>();
  e.center_y = j.at("center_y").get<double>();
  e.semi_major = j.at("semi_major").get<double>();
  e.semi_minor = j.at("semi_minor").get<double>();
  return e;
}

json stats_to_json(const MetricStats& s) {
  return json{{"hd_mean", s.hd_mean},
              {"hd_std", s.hd_std},
              {"jm_mean", s.jm_mean},
              {"jm_std", s.jm_std}};
}

MetricStats stats_from_json(const json& j) {
  MetricStats s;
  s.hd_mean = j.at("hd_mean").get<double>();
  s.hd_std = j.at("hd_std").get<double>();
  s.jm_mean = j.at("jm_mean").get<double>();
  s.jm_std = j.at("jm_std").get<double>();
  return s;
}

json category_stats_to_json(const CategoryStats& s) {
  return json{{"gold", stats_to_json(s.gold)},
              {"n", s.n},
              {"proposed", stats_to_json(s.proposed)}};
}

CategoryStats category_stats_from_json(const json& j) {
  CategoryStats s;
  s.n = j.at("n").get<std::size_t>();
  s.gold = stats_from_json(j.at("gold"));
  s.proposed = stats_from_json(j.at("proposed"));
  return s;
}

} // namespace

DatasetManifest load_manifest(const fs::path& manifest_path) {
  const json j = parse_json_file(manifest_path);
  DatasetManifest manifest;
  manifest.root = manifest_path.parent_path();
  try {
    const json& frames = j.at("frames");
    if (!frames.is_array() || frames.empty()) {
      fail(manifest_path, "'frames' must be a non-empty array");
    }
    std::set<std::string> seen;
    for (const json& f : frames) {
      ManifestEntry entry;
      entry.frame_id = f.at("frame_id").get<std::string>();
      if (entry.frame_id.empty()) fail(manifest_path, "empty frame_id");
      if (!seen.insert(entry.frame_id).second) {
        fail(manifest_path, "duplicate frame_id '" + entry.frame_id + "'");
      }
      entry.image = resolve(manifest.root, f.at("image").get<std::string>());
      const json& erels = f.at("erels");
      if (!erels.is_array() || erels.empty()) {
        fail(manifest_path,
             "frame '" + entry.frame_id + "' lists no region files");
      }
      for (const json& e : erels) {
        entry.erels.push_back(resolve(manifest.root, e.get<std::string>()));
      }
      if (f.contains("ground_truth") && !f.at("ground_truth").is_null()) {
        entry.ground_truth =
            resolve(manifest.root, f.at("ground_truth").get<std::string>());
      }
      if (f.contains("category")) {
        entry.category = category_from_string(f.at("category").get<std::string>());
      }
      manifest.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    fail(manifest_path, std::string("bad manifest structure: ") + e.what());
  }
  for (const ManifestEntry& entry : manifest.entries) {
    if (!fs::exists(entry.image)) fail(entry.image, "image file missing");
    for (const fs::path& p : entry.erels) {
      if (!fs::exists(p)) fail(p, "region file missing");
    }
    if (entry.ground_truth && !fs::exists(*entry.ground_truth)) {
      fail(*entry.ground_truth, "ground truth file missing");
    }
  }
  return manifest;
}

FrameSample load_frame(const ManifestEntry& entry) {
  FrameSample sample;
  sample.id = entry.frame_id;
  sample.category = entry.category;
  sample.frame = read_frame_image(entry.image);
  for (const fs::path& p : entry.erels) {
    RegionCoords coords = read_region_coords(p);
    for (const PixelCoord& c : coords) {
      if (!sample.frame.in_bounds(c.row, c.col)) {
        fail(p, "pixel (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                    ") outside the " + std::to_string(sample.frame.width()) + "x" +
                    std::to_string(sample.frame.height()) + " frame");
      }
    }
    sample.erels.push_back(std::move(coords));
  }
  if (entry.ground_truth) {
    sample.ground_truth = read_contour_csv(*entry.ground_truth);
  }
  return sample;
}

std::vector<FrameSample> load_dataset(const fs::path& manifest_path) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  std::vector<FrameSample> samples;
  samples.reserve(manifest.entries.size());
  for (const ManifestEntry& entry : manifest.entries) {
    samples.push_back(load_frame(entry));
  }
  return samples;
}

DatasetStats dataset_stats(const std::vector<FrameSample>& samples) {
  DatasetStats stats;
  stats.frames = samples.size();
  for (const FrameSample& s : samples) {
    const std::size_t n = s.erels.size();
    stats.total_erels += n;
    stats.min_erels = stats.min_erels == 0 ? n : std::min(stats.min_erels, n);
    stats.max_erels = std::max(stats.max_erels, n);
  }
  if (stats.frames > 0) {
    stats.avg_erels = static_cast<double>(stats.total_erels) /
                      static_cast<double>(stats.frames);
  }
  return stats;
}

RegionCoords read_region_coords(const fs::path& path) {
  std::ifstream in = open_text(path);
  RegionCoords coords;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ss(line);
    PixelCoord p;
    std::string extra;
    if (!(ss >> p.row >> p.col) || (ss >> extra)) {
      fail(path, "line " + std::to_string(lineno) +
                     ": expected 'row col', got '" + line + "'");
    }
    coords.push_back(p);
  }
  if (coords.empty()) fail(path, "region file holds no pixels");
  return coords;
}

void write_region_coords(const fs::path& path, const RegionCoords& coords) {
  std::ofstream out = create_text(path);
  for (const PixelCoord& p : coords) {
    out << p.row << " " << p.col << "\n";
  }
  if (!out) fail(path, "write failed");
}

std::vector<ContourPoint> read_contour_csv(const fs::path& path) {
  std::ifstream in = open_text(path);
  std::vector<ContourPoint> contour;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      fail(path, "line " + std::to_string(lineno) + ": expected 'x,y'");
    }
    try {
      std::size_t used = 0;
      ContourPoint p;
      p.x = std::stod(line.substr(0, comma), &used);
      p.y = std::stod(line.substr(comma + 1));
      contour.push_back(p);
    } catch (const std::exception&) {
      fail(path, "line " + std::to_string(lineno) + ": bad coordinate in '" +
                     line + "'");
    }
  }
  if (contour.empty()) fail(path, "contour file holds no points");
  return contour;
}

void write_contour_csv(const fs::path& path,
                       const std::vector<ContourPoint>& contour) {
  std::ofstream out = create_text(path);
  for (const ContourPoint& p : contour) {
    out << compact9(p.x) << "," << compact9(p.y) << "\n";
  }
  if (!out) fail(path, "write failed");
}

void write_results_json(const fs::path& path, const PipelineConfig& config,
                        const std::vector<FrameResult>& frames) {
  json j;
  j["config"] = json{{"contour_samples", config.contour_samples},
                     {"corr_mode", to_string(config.corr_mode)},
                     {"dilate_radius", config.dilate_radius},
                     {"k_maxima", config.k_maxima}};
  json arr = json::array();
  for (const FrameResult& f : frames) {
    json corr = json::array();
    for (const CorrelationScore& s : f.result.correlation_trace) {
      corr.push_back(json{{"erel_index", s.erel_index}, {"r", s.r}});
    }
    json comp = json::array();
    for (const CompactnessScore& s : f.result.compactness_trace) {
      comp.push_back(json{{"erel_index", s.erel_index},
                          {"m1", s.m1},
                          {"m2", s.m2},
                          {"total", s.total}});
    }
    arr.push_back(json{{"category", to_string(f.category)},
                       {"chosen_ellipse", ellipse_to_json(f.result.chosen_ellipse)},
                       {"chosen_index", f.result.chosen_index},
                       {"compactness", comp},
                       {"correlation", corr},
                       {"fallback_used", f.result.fallback_used},
                       {"frame_id", f.frame_id},
                       {"pass1_survivors", f.result.pass1_survivors}});
  }
  j["frames"] = std::move(arr);
  dump_json_file(path, j);
}

ResultsFile read_results_json(const fs::path& path) {
  const json j = parse_json_file(path);
  ResultsFile out;
  try {
    const json& cfg = j.at("config");
    out.config.contour_samples = cfg.at("contour_samples").get<int>();
    out.config.corr_mode =
        corr_mode_from_string(cfg.at("corr_mode").get<std::string>());
    out.config.dilate_radius = cfg.at("dilate_radius").get<int>();
    out.config.k_maxima = cfg.at("k_maxima").get<int>();
    for (const json& f : j.at("frames")) {
      FrameResult fr;
      fr.frame_id = f.at("frame_id").get<std::string>();
      fr.category = category_from_string(f.at("category").get<std::string>());
      fr.result.chosen_index = f.at("chosen_index").get<int>();
      fr.result.chosen_ellipse = ellipse_from_json(f.at("chosen_ellipse"));
      fr.result.fallback_used = f.at("fallback_used").get<bool>();
      fr.result.pass1_survivors =
          f.at("pass1_survivors").get<std::vector<int>>();
      for (const json& s : f.at("correlation")) {
        fr.result.correlation_trace.push_back(
            {s.at("erel_index").get<int>(), s.at("r").get<double>()});
      }
      for (const json& s : f.at("compactness")) {
        fr.result.compactness_trace.push_back({s.at("erel_index").get<int>(),
                                               s.at("m1").get<double>(),
                                               s.at("m2").get<double>(),
                                               s.at("total").get<double>()});
      }
      out.frames.push_back(std::move(fr));
    }
  } catch (const json::exception& e) {
    fail(path, std::string("bad results structure: ") + e.what());
  }
  return out;
}

namespace {

void write_report_rows(std::ostream& out, const std::string& label,
                       const CategoryStats& s) {
  out << label << ",gold," << fixed6(s.gold.hd_mean) << ","
      << fixed6(s.gold.hd_std) << "," << fixed6(s.gold.jm_mean) << ","
      << fixed6(s.gold.jm_std) << "," << s.n << "\n";
  out << label << ",proposed," << fixed6(s.proposed.hd_mean) << ","
      << fixed6(s.proposed.hd_std) << "," << fixed6(s.proposed.jm_mean) << ","
      << fixed6(s.proposed.jm_std) << "," << s.n << "\n";
}

} // namespace

void write_report_csv(const fs::path& path, const AggregateReport& report) {
  std::ofstream out = create_text(path);
  out << "category,selector,hd_mean,hd_std,jm_mean,jm_std,n\n";
  write_report_rows(out, "general", report.overall);
  for (const auto& [cat, stats] : report.per_category) {
    write_report_rows(out, to_string(cat), stats);
  }
  if (!out) fail(path, "write failed");
}

void write_report_json(const fs::path& path, const AggregateReport& report,
                       const std::vector<FrameEvaluation>& evals, double spacing,
                       const ResultsFile* curves) {
  json j;
  j["overall"] = category_stats_to_json(report.overall);
  json per = json::object();
  for (const auto& [cat, stats] : report.per_category) {
    per[to_string(cat)] = category_stats_to_json(stats);
  }
  j["per_category"] = std::move(per);
  json counts = json::object();
  for (const auto& [cat, n] : report.label_counts) {
    counts[to_string(cat)] = n;
  }
  j["label_counts"] = std::move(counts);
  j["std_mode"] = to_string(report.std_mode);
  j["spacing"] = spacing;
  json frames = json::array();
  for (const FrameEvaluation& e : evals) {
    frames.push_back(json{{"category", to_string(e.category)},
                          {"chosen_index", e.chosen_index},
                          {"frame_id", e.frame_id},
                          {"gold_hd", e.gold_hd},
                          {"gold_index", e.gold_index},
                          {"gold_jm", e.gold_jm},
                          {"hd", e.hd},
                          {"jm", e.jm}});
  }
  j["frames"] = std::move(frames);
  if (curves) {
    json plot = json::object();
    for (const FrameResult& f : curves->frames) {
      json corr_idx = json::array();
      json corr_r = json::array();
      for (const CorrelationScore& s : f.result.correlation_trace) {
        corr_idx.push_back(s.erel_index);
        corr_r.push_back(s.r);
      }
      json comp_idx = json::array();
      json comp_total = json::array();
      for (const CompactnessScore& s : f.result.compactness_trace) {
        comp_idx.push_back(s.erel_index);
        comp_total.push_back(s.total);
      }
      plot[f.frame_id] = json{{"compactness_erel_index", comp_idx},
                              {"compactness_total", comp_total},
                              {"correlation_erel_index", corr_idx},
                              {"correlation_r", corr_r}};
    }
    j["plot_data"] = std::move(plot);
  }
  dump_json_file(path, j);
}

ReportFile read_report_json(const fs::path& path) {
  const json j = parse_json_file(path);
  ReportFile out;
  try {
    out.spacing = j.at("spacing").get<double>();
    out.report.std_mode = std_mode_from_string(j.at("std_mode").get<std::string>());
    out.report.overall = category_stats_from_json(j.at("overall"));
    for (const auto& [name, stats] : j.at("per_category").items()) {
      out.report.per_category[category_from_string(name)] =
          category_stats_from_json(stats);
    }
    for (const auto& [name, n] : j.at("label_counts").items()) {
      out.report.label_counts[category_from_string(name)] = n.get<std::size_t>();
    }
    for (const json& f : j.at("frames")) {
      FrameEvaluation e;
      e.frame_id = f.at("frame_id").get<std::string>();
      e.category = category_from_string(f.at("category").get<std::string>());
      e.chosen_index = f.at("chosen_index").get<int>();
      e.gold_index = f.at("gold_index").get<int>();
      e.hd = f.at("hd").get<double>();
      e.jm = f.at("jm").get<double>();
      e.gold_hd = f.at("gold_hd").get<double>();
      e.gold_jm = f.at("gold_jm").get<double>();
      out.evals.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    fail(path, std::string("bad report structure: ") + e.what());
  }
  return out;
}

void write_gold_csv(const fs::path& path, const std::vector<GoldRow>& rows) {
  std::ofstream out = create_text(path);
  out << "frame_id,gold_index,gold_hd\n";
  for (const GoldRow& r : rows) {
    out << r.frame_id << "," << r.gold_index << "," << fixed6(r.gold_hd) << "\n";
  }
  if (!out) fail(path, "write failed");
}

void write_plotdata(const fs::path& dir, const ResultsFile& results) {
  fs::create_directories(dir);
  for (const FrameResult& f : results.frames) {
    {
      std::ofstream out = create_text(dir / (f.frame_id + "_correlation.csv"));
      out << "erel_index,r\n";
      for (const CorrelationScore& s : f.result.correlation_trace) {
        out << s.erel_index << "," << compact9(s.r) << "\n";
      }
    }
    {
      std::ofstream out = create_text(dir / (f.frame_id + "_compactness.csv"));
      out << "erel_index,m1,m2,total\n";
      for (const CompactnessScore& s : f.result.compactness_trace) {
        out << s.erel_index << "," << compact9(s.m1) << "," << compact9(s.m2)
            << "," << compact9(s.total) << "\n";
      }
    }
  }
}

std::filesystem::path write_synthetic_dataset(const fs::path& dir,
                                              std::uint64_t seed, int frames,
                                              ArtifactType artifact, int width,
                                              int height) {
  if (frames < 1) {
    throw input_error("write_synthetic_dataset: need at least one frame");
  }
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "erels");
  fs::create_directories(dir / "gt");

  json frame_list = json::array();
  for (int i = 0; i < frames; ++i) {
    // Frame recipes use decorrelated per-frame seeds derived from the master.
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(i) + 1);
    s ^= s >> 30;
    s *= 0xBF58476D1CE4E5B9ull;
    s ^= s >> 27;
    const SynthSpec spec = random_synth_spec(s, artifact, width, height);
    const SynthFrame frame = generate_synthetic(spec);

    char id[32];
    std::snprintf(id, sizeof id, "synth_%03d", i);
    const std::string frame_id(id);

    const std::string image_rel = "images/" + frame_id + ".pgm";
    write_pgm(dir / image_rel, frame.sample.frame);

    const fs::path erel_dir = dir / "erels" / frame_id;
    fs::create_directories(erel_dir);
    json erel_list = json::array();
    for (std::size_t e = 0; e < frame.sample.erels.size(); ++e) {
      char name[32];
      std::snprintf(name, sizeof name, "erel_%03zu.txt", e);
      write_region_coords(erel_dir / name, frame.sample.erels[e]);
      erel_list.push_back("erels/" + frame_id + "/" + name);
    }

    const std::string gt_rel = "gt/" + frame_id + ".csv";
    write_contour_csv(dir / gt_rel, *frame.sample.ground_truth);

    frame_list.push_back(json{{"category", to_string(frame.sample.category)},
                              {"erels", std::move(erel_list)},
                              {"frame_id", frame_id},
                              {"ground_truth", gt_rel},
                              {"image", image_rel}});
  }

  const fs::path manifest_path = dir / "manifest.json";
  dump_json_file(manifest_path, json{{"frames", std::move(frame_list)}});
  return manifest_path;
}

} // namespace erel
