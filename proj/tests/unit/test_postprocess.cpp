// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "fembem/linsolve.hpp"
#include "fembem/postprocess.hpp"

using namespace fembem;

namespace
{

std::filesystem::path TempPath(const std::string &name)
{
  return std::filesystem::temp_directory_path() / ("fembem_unit_" + name);
}

std::string ReadAll(const std::filesystem::path &p)
{
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("relative error")
{
  CVector a(3);
  a << 1.0, Complex(0.0, 2.0), -3.0;
  CHECK(RelativeError(a, a) == 0.0);
  CHECK(RelativeError(2.0 * a, a) == doctest::Approx(1.0));
  CVector e1 = CVector::Zero(2), e2 = CVector::Zero(2);
  e1[0] = 1.0;
  e2[1] = 1.0;
  CHECK(RelativeError(e1, e2) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(RelativeError(e1, CVector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(RelativeError(e1, a), InvalidArgument);
}

TEST_CASE("report CSV")
{
  std::vector<ReportRow> rows(3);
  rows[0] = {4.0, "stabilised", "osrc/base", "ilu_inner+osrc_surface", 37, 1234.5678901234567, 0.25};
  rows[1] = {11.7548, "symmetric", "-", "none", 412, std::nullopt, 3.0e-3};
  rows[2] = {0.1 + 0.2, "multidomain", "osrc/base, \"quoted\"", "osrc", -1, 1e300, 0.0};

  const std::string text = FormatReportCsv(rows);
  CHECK(text.rfind(std::string(kReportHeader) + "\n", 0) == 0);
  CHECK(ParseReportCsv(text) == rows);

  const auto path = TempPath("report.csv");
  WriteReportCsv(rows, path);
  CHECK(ReadReportCsv(path) == rows);
  CHECK(ReadAll(path) == text);

  WriteReportCsv({}, path);
  CHECK(ReadAll(path) == std::string(kReportHeader) + "\n");
  CHECK(ReadReportCsv(path).empty());
  std::filesystem::remove(path);

  CHECK_THROWS_AS(ParseReportCsv("k,formulation\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseReportCsv(std::string(kReportHeader) + "\n1,a,b,c\n"), InvalidArgument);
  CHECK_THROWS_AS(ReadReportCsv(TempPath("missing/none.csv")), IoError);
  CHECK_THROWS_AS(WriteReportCsv(rows, TempPath("missing/dir/x.csv")), IoError);
}

TEST_CASE("plane sampling and VTK output")
{
  const Mesh mesh = BuildCubeMesh(4);
  const MaterialModel materials;
  IncidentWave wave{Vec3(1.0, 0.0, 0.0), 2.0};
  wave.amplitude = 0.0;
  const FormulationSystem sys = BuildStandard(Scene{mesh, materials, wave}, {});
  PlaneSpec plane;
  plane.resolution = 9;
  const FieldSlice slice = SamplePlane(mesh, sys, CVector::Zero(sys.Size()), wave, plane);
  REQUIRE(slice.points.size() == 81);
  CHECK(slice.values.norm() == 0.0);

  int interior = 0, exterior = 0, near = 0;
  for (std::size_t i = 0; i < slice.points.size(); i++)
  {
    const Vec3 &p = slice.points[i];
    const bool inside = p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0;
    switch (slice.mask[i])
    {
    case SampleMask::Interior:
      interior++;
      CHECK(inside);
      break;
    case SampleMask::Exterior:
      exterior++;
      CHECK_FALSE(inside);
      break;
    case SampleMask::NearSurface:
      near++;
      break;
    }
  }
  CHECK(interior > 0);
  CHECK(exterior > 0);
  CHECK(near > 0);
  CHECK(slice.UnmaskedPoints().size() == static_cast<std::size_t>(interior + exterior));

  const auto path = TempPath("slice.vtk");
  WriteSliceVtk(slice, path);
  const std::string vtk = ReadAll(path);
  CHECK(vtk.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(vtk.find("POINTS 81 double") != std::string::npos);
  CHECK(vtk.find("POINT_DATA 81") != std::string::npos);
  CHECK(vtk.find("field_real") != std::string::npos);

  // Identical inputs give identical files.
  const auto again = TempPath("slice2.vtk");
  WriteSliceVtk(SamplePlane(mesh, sys, CVector::Zero(sys.Size()), wave, plane), again);
  CHECK(ReadAll(again) == vtk);
  std::filesystem::remove(path);
  std::filesystem::remove(again);

  const Surface s = ExtractSurface(mesh, 0);
  const auto surf = TempPath("surface.vtk");
  WriteSurfaceVtk(s, CVector::Ones(s.NumNodes()), "p", surf);
  CHECK(ReadAll(surf).find(detail::Concat("POINTS ", s.NumNodes(), " double")) !=
        std::string::npos);
  std::filesystem::remove(surf);
  CHECK_THROWS_AS(WriteSurfaceVtk(s, CVector::Ones(3), "p", surf), InvalidArgument);
}

TEST_CASE("transparent cube sampling reproduces the incident wave")
{
  const Mesh mesh = BuildCubeMesh(4);
  const MaterialModel materials;
  const IncidentWave wave{Vec3(1.0, 2.0, 0.0).normalized(), 2.0};
  const FormulationSystem sys = BuildStabilised(Scene{mesh, materials, wave}, {});
  const CVector x = DirectSolve(sys.lhs, sys.rhs);
  PlaneSpec plane;
  plane.resolution = 11;
  const FieldSlice slice = SamplePlane(mesh, sys, x, wave, plane);
  CVector inc(static_cast<Index>(slice.points.size()));
  for (std::size_t i = 0; i < slice.points.size(); i++)
  {
    inc[static_cast<Index>(i)] = wave.Value(slice.points[i]);
  }
  CHECK(RelativeError(slice.Unmasked(slice.values), slice.Unmasked(inc)) < 0.03);
}
