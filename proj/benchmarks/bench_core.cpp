#include <benchmark/benchmark.h>

#include "erel/ellipse.hpp"
#include "erel/morphology.hpp"
#include "erel/scoring.hpp"
#include "erel/selection.hpp"
#include "erel/synth.hpp"

namespace {

erel::SynthFrame make_frame(std::uint64_t seed) {
  return erel::generate_synthetic(
      erel::random_synth_spec(seed, erel::ArtifactType::none));
}

void BM_Dilate(benchmark::State& state) {
  const erel::SynthFrame frame = make_frame(1);
  const erel::BinaryMask mask =
      rasterize(frame.sample.erels[static_cast<std::size_t>(frame.lumen_index)],
                frame.sample.frame.width(), frame.sample.frame.height());
  const erel::StructuringElement se = erel::disk(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(erel::dilate(mask, se));
  }
}
BENCHMARK(BM_Dilate)->Arg(1)->Arg(6)->Arg(12);

void BM_Corr2(benchmark::State& state) {
  const erel::SynthFrame frame = make_frame(2);
  const erel::BinaryMask a =
      rasterize(frame.sample.erels.front(), frame.sample.frame.width(),
                frame.sample.frame.height());
  const erel::BinaryMask b =
      rasterize(frame.sample.erels.back(), frame.sample.frame.width(),
                frame.sample.frame.height());
  const std::vector<double> ia = erel::to_image(a);
  const std::vector<double> ib = erel::to_image(b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erel::corr2(ia, ib));
  }
}
BENCHMARK(BM_Corr2);

void BM_FitEllipse(benchmark::State& state) {
  erel::Ellipse e;
  e.center_x = 96;
  e.center_y = 96;
  e.semi_major = 52;
  e.semi_minor = 40;
  e.angle = 0.7;
  const std::vector<erel::ContourPoint> pts =
      erel::ellipse_contour(e, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(erel::fit_ellipse(pts));
  }
}
BENCHMARK(BM_FitEllipse)->Arg(64)->Arg(360);

void BM_SelectFrame(benchmark::State& state) {
  const erel::SynthFrame frame = make_frame(3);
  const erel::PipelineConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(erel::select(frame.sample, cfg));
  }
}
BENCHMARK(BM_SelectFrame);

} // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
