// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_POSTPROCESS_HPP
#define FEMBEM_POSTPROCESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fembem/formulations.hpp"

namespace fembem
{

// Square grid origin + s u + t v with s, t in [0, 1], resolution points per side.
struct PlaneSpec
{
  Vec3 origin = Vec3(-0.5, -0.5, 0.5);
  Vec3 u = Vec3(2.0, 0.0, 0.0);
  Vec3 v = Vec3(0.0, 2.0, 0.0);
  int resolution = 41;

  std::vector<Vec3> Points() const;
};

enum class SampleMask : std::uint8_t
{
  Interior,
  Exterior,
  NearSurface
};

struct FieldSlice
{
  PlaneSpec plane;
  std::vector<Vec3> points;
  CVector values;
  std::vector<SampleMask> mask;

  // Entries of values (or of another field on the same points) that are not masked.
  CVector Unmasked(const CVector &field) const;
  std::vector<Vec3> UnmaskedPoints() const;
};

// Total field at arbitrary points: P1 interpolation of the interior pressure inside a
// domain, the exterior representation outside. Points closer than band to a surface are
// masked with value 0; a non-positive band selects the largest tetrahedron diameter.
FieldSlice SampleField(const Mesh &mesh, const FormulationSystem &system,
                       const CVector &solution, const IncidentWave &wave,
                       const std::vector<Vec3> &points, double band = 0.0);
FieldSlice SamplePlane(const Mesh &mesh, const FormulationSystem &system,
                       const CVector &solution, const IncidentWave &wave,
                       const PlaneSpec &plane, double band = 0.0);

// ||values - reference|| / ||reference||.
double RelativeError(const CVector &values, const CVector &reference);

// One row of a sweep or comparison table.
struct ReportRow
{
  double k = 0.0;
  std::string formulation;
  std::string variant;
  std::string preconditioner;
  int iterations = 0;
  std::optional<double> condition_number;
  double wall_time_s = 0.0;

  bool operator==(const ReportRow &) const = default;
};

inline constexpr const char *kReportHeader =
    "k,formulation,variant,preconditioner,iterations,condition_number,wall_time_s";

std::string FormatReportCsv(const std::vector<ReportRow> &rows);
void WriteReportCsv(const std::vector<ReportRow> &rows, const std::filesystem::path &path);
std::vector<ReportRow> ParseReportCsv(const std::string &text);
std::vector<ReportRow> ReadReportCsv(const std::filesystem::path &path);

// Single column table of resonance wavenumbers.
void WriteResonanceCsv(const std::vector<double> &k, const std::filesystem::path &path);

// VTK legacy ASCII: the slice as a quad grid, complex values split into real and imaginary
// point data plus the mask.
void WriteSliceVtk(const FieldSlice &slice, const std::filesystem::path &path);

// VTK legacy ASCII: a surface with one complex P1 field.
void WriteSurfaceVtk(const Surface &surface, const CVector &values, const std::string &name,
                     const std::filesystem::path &path);

}  // namespace fembem

#endif  // FEMBEM_POSTPROCESS_HPP
