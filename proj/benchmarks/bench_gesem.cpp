#include <benchmark/benchmark.h>

#include <random>

#include "gesem/embed.hpp"
#include "gesem/lexicon.hpp"

namespace {

const char* kUAnnotation =
    "hand: right\n"
    "handshape: O\n"
    "wrist.path: line>line>line\n"
    "wrist.dir: MR>MB>ML\n"
    "wrist.extent: large\n"
    "sync.config: RHA\n"
    "sync.rel-mov: none\n"
    "sync.s-loc: CB-F\n"
    "sync.e-loc: CB-N\n";

gesem::IconicModel u_model() {
  return gesem::vectorize(gesem::parse_annotations(kUAnnotation)[0]);
}

gesem::Path3 u_target() {
  // The U-house main axis, already frame-local.
  return gesem::Path3{{{1.25, -1.5, 0}, {-1.25, -1.5, 0}, {-1.25, 1.5, 0},
                       {1.25, 1.5, 0}},
                      {gesem::JointKind::Line, gesem::JointKind::Line}};
}

void BM_RotateKernel(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  gesem::Vec3 v{0.3, -1.2, 2.1};
  for (auto _ : state) {
    v = gesem::rotate(v, gesem::RotationAxis::Z, angle(rng));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_RotateKernel);

void BM_ParseAnnotation(benchmark::State& state) {
  for (auto _ : state) {
    auto records = gesem::parse_annotations(kUAnnotation);
    benchmark::DoNotOptimize(records);
  }
}
BENCHMARK(BM_ParseAnnotation);

void BM_Vectorize(benchmark::State& state) {
  auto records = gesem::parse_annotations(kUAnnotation);
  for (auto _ : state) {
    auto m = gesem::vectorize(records[0]);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Vectorize);

void BM_Embed(benchmark::State& state) {
  gesem::IconicModel m = u_model();
  gesem::Path3 target = u_target();
  for (auto _ : state) {
    auto r = gesem::embed(m, target);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Embed);

void BM_BruteForceEmbed(benchmark::State& state) {
  gesem::IconicModel m = u_model();
  gesem::Path3 target = u_target();
  for (auto _ : state) {
    auto r = gesem::brute_force_embed(m, target);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_BruteForceEmbed);

void BM_CvmScore(benchmark::State& state) {
  gesem::CvmTemplate tmpl;
  tmpl.name = "u-CVM";
  for (gesem::OrientingLevel l :
       {gesem::OrientingLevel::Rt, gesem::OrientingLevel::NegFt,
        gesem::OrientingLevel::NegRt})
    tmpl.traj.push_back(gesem::TrajAtom::from_level(l));
  tmpl.connectors.assign(2, gesem::Connector::Perp);
  gesem::IconicModel m = u_model();
  for (auto _ : state) {
    double s = gesem::cvm_score(tmpl, m);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CvmScore);

}  // namespace

BENCHMARK_MAIN();
