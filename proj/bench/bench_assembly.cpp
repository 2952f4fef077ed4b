// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Serial reference against OpenMP execution for the parallel kernels. Set OMP_NUM_THREADS
// to choose the thread count of the parallel runs.

#include <vector>

#include <benchmark/benchmark.h>

#include "fembem/bem.hpp"
#include "fembem/fem.hpp"
#include "fembem/problem.hpp"

using namespace fembem;

namespace
{

Execution Mode(const benchmark::State &state)
{
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void SetLabel(benchmark::State &state)
{
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_BoundaryOperators(benchmark::State &state)
{
  const Surface s = ExtractSurface(BuildCubeMesh(static_cast<int>(state.range(0))), 0);
  const std::vector<BoundaryRequest> requests = {
      {BoundaryOperatorKind::SingleLayer, SpaceKind::SurfaceP1, SpaceKind::SurfaceP1},
      {BoundaryOperatorKind::DoubleLayer, SpaceKind::SurfaceP1, SpaceKind::SurfaceP1},
      {BoundaryOperatorKind::Hypersingular, SpaceKind::SurfaceP1, SpaceKind::SurfaceP1}};
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(AssembleBoundaryOperators(s, s, 4.0, requests, {}, Mode(state)));
  }
  state.counters["nodes"] = static_cast<double>(s.NumNodes());
  SetLabel(state);
}

void BM_Fem(benchmark::State &state)
{
  const Mesh mesh = BuildCubeMesh(static_cast<int>(state.range(0)));
  MaterialModel materials;
  DomainMaterial m;
  m.refractivity = BenchmarkRefractivityField();
  materials.Set(0, m);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(AssembleFem(mesh, materials, 4.0, 0, Mode(state)));
  }
  state.counters["tets"] = static_cast<double>(mesh.NumTetrahedra());
  SetLabel(state);
}

void BM_Potentials(benchmark::State &state)
{
  const Surface s = ExtractSurface(BuildCubeMesh(static_cast<int>(state.range(0))), 0);
  const CVector phi = CVector::Ones(s.NumNodes());
  std::vector<Vec3> points;
  for (int i = 0; i < 400; i++)
  {
    points.emplace_back(2.0 + 0.01 * i, 0.5, 0.5);
  }
  PotentialOptions opts;
  opts.exec = Mode(state);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(
        EvaluatePotentials(s, 4.0, phi, phi, SpaceKind::SurfaceP1, points, opts));
  }
  SetLabel(state);
}

}  // namespace

BENCHMARK(BM_BoundaryOperators)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fem)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Potentials)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
