// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include <doctest.h>

#include "fembem/runner.hpp"

using namespace fembem;

TEST_CASE("configuration defaults and round trip")
{
  const RunConfig c;
  CHECK_NOTHROW(c.Validate());
  CHECK(c.solver.tol == 1e-5);
  CHECK(c.solver.drop_tol == 1e-4);
  CHECK_FALSE(c.solver.restart);
  CHECK(c.osrc.pade_order == 2);

  const RunConfig back = RunConfig::Parse(c.Dump());
  CHECK(back.Dump() == c.Dump());

  const RunConfig p = RunConfig::Parse(R"({"schema": "fembem-run/1",
    "geometry": {"kind": "sphere", "subdivisions": 3},
    "wave": {"k": 2.5, "direction": [0, 0, 1]},
    "grid": [{"formulation": "symmetric"}, {"variant": "alt_reg", "permuted": true}],
    "sweep": {"start": 1, "stop": 2, "step": 0.5}})");
  CHECK(p.geometry.kind == "sphere");
  CHECK(p.wave.k == 2.5);
  REQUIRE(p.grid.size() == 2);
  CHECK(p.grid[1].permuted);
  CHECK(p.grid[1].formulation == "stabilised");
  CHECK(SweepWavenumbers(p.sweep) == std::vector<double>{1.0, 1.5, 2.0});
}

TEST_CASE("configuration errors")
{
  auto bad = [](const std::string &body)
  { return RunConfig::Parse(R"({"schema": "fembem-run/1", )" + body + "}"); };
  CHECK_THROWS_AS(RunConfig::Parse("{"), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::Parse(R"({"schema": "other/2"})"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("extra": 1)"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("wave": {"k": "four"})"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("wave": {"direction": [1, 0]})"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("geometry": {"kind": "torus"})"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("solver": {"restart": true})"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("grid": [{"formulation": "stabilised", "nu": 0.3}])"),
                  InvalidArgument);
  // Mass preconditioning needs square P1-P1 mass matrices.
  CHECK_THROWS_AS(bad(R"("grid": [{"theta_space": "P0", "preconditioner": "mass"}])"),
                  InvalidArgument);
  CHECK_NOTHROW(bad(R"("grid": [{"theta_space": "P0", "preconditioner": "none"}])"));
  CHECK_THROWS_AS(bad(R"("grid": [{"preconditioner": "jacobi"}])"), InvalidArgument);
  CHECK_THROWS_AS(bad(R"("geometry": {"kind": "two_cubes"}, "grid": [{}])"), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::Load("/nonexistent/run.json"), IoError);
}

TEST_CASE("unknown counts match assembled systems")
{
  const Mesh mesh = BuildCubeMesh(3);
  const MaterialModel materials;
  const IncidentWave wave{Vec3(1.0, 0.0, 0.0), 2.0};
  const RunConfig c;
  for (const char *form : {"standard", "symmetric", "stabilised"})
  {
    for (const char *space : {"P0", "P1"})
    {
      GridEntry e;
      e.formulation = form;
      e.theta_space = space;
      const FormulationSystem s =
          BuildFormulation(EntryKind(e), Scene{mesh, materials, wave}, BuildOptions(c, e));
      CHECK(CountUnknowns(mesh, e) == s.Size());
    }
  }
  GridEntry big;
  CHECK(CountUnknowns(BuildCubeMesh(13), big) == 2744 + 2 * 1016);
  CHECK_NOTHROW(CheckProblemSize(BuildCubeMesh(13), big, false));
  CHECK_THROWS_AS(CheckProblemSize(BuildCubeMesh(20), big, false), InvalidArgument);
  CHECK_NOTHROW(CheckProblemSize(BuildCubeMesh(20), big, true));
}

TEST_CASE("wavenumber sweeps and presets")
{
  const auto ks = ResonanceSweep();
  CHECK(ks.front() == 4.0);
  CHECK(ks.back() <= 12.0);
  const auto res = CubeResonanceWavenumbers(12.5);
  for (std::size_t i = 1; i < ks.size(); i++)
  {
    const double step = ks[i] - ks[i - 1];
    bool near = false;
    for (double r : res)
    {
      near = near || std::abs(ks[i] - r) <= 0.1 + 1e-9 || std::abs(ks[i - 1] - r) <= 0.1 + 1e-9;
    }
    CHECK(step <= 0.25 + 1e-9);
    if (near)
    {
      CHECK(step <= 0.05 + 1e-9);
    }
  }
  CHECK(OffResonanceWavenumber(11.7519) ==
        doctest::Approx(0.5 * pi * (std::sqrt(12.0) + std::sqrt(14.0))));

  for (const char *name : {"nu_study", "space_study", "osrc_prec", "ilu_study",
                           "permutation_study"})
  {
    CAPTURE(name);
    const ComparePreset p = MakeComparePreset(name);
    CHECK_FALSE(p.grid.empty());
    CHECK_FALSE(p.k.empty());
    RunConfig c;
    c.grid = p.grid;
    CHECK_NOTHROW(c.Validate());
  }
  CHECK(MakeComparePreset("permutation_study").grid.size() == 6);
  CHECK_THROWS_AS(MakeComparePreset("mesh_study"), InvalidArgument);
}

TEST_CASE("self test")
{
  for (const auto &c : RunSelfTest())
  {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("sweep command writes one row per entry and wavenumber")
{
  RunConfig c;
  c.geometry.subdivisions = 2;
  c.grid = {GridEntry{}, GridEntry{}};
  c.grid[1].formulation = "symmetric";
  c.sweep.k = {1.0, 1.5};
  const auto out = std::filesystem::temp_directory_path() / "fembem_unit_sweep";
  const CommandSummary s = CmdSweep(c, out, false);
  CHECK(s.failures == 0);
  const auto rows = ReadReportCsv(out / "sweep.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].k == 1.0);
  CHECK(rows[1].formulation == "symmetric");
  CHECK(rows[3].k == 1.5);
  CHECK(rows[0].iterations > 0);

  // Deterministic iteration counts.
  const CommandSummary again = CmdSweep(c, out, false);
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    CHECK(again.rows[i].iterations == rows[i].iterations);
  }
  CHECK(std::filesystem::exists(out / "resonances.csv"));
  std::filesystem::remove_all(out);

  c.grid.clear();
  CHECK_THROWS_AS(CmdSweep(c, out, false), InvalidArgument);
}
