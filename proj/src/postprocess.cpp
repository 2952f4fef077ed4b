// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/postprocess.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace fembem
{

std::vector<Vec3> PlaneSpec::Points() const
{
  FEMBEM_VERIFY(resolution >= 2, "plane resolution must be at least 2, got ", resolution);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int j = 0; j < resolution; j++)
  {
    for (int i = 0; i < resolution; i++)
    {
      const double s = static_cast<double>(i) / (resolution - 1);
      const double t = static_cast<double>(j) / (resolution - 1);
      pts.push_back(origin + s * u + t * v);
    }
  }
  return pts;
}

CVector FieldSlice::Unmasked(const CVector &field) const
{
  FEMBEM_VERIFY(field.size() == static_cast<Index>(mask.size()), "field has ", field.size(),
                " values for ", mask.size(), " sample points");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < mask.size(); i++)
  {
    if (mask[i] != SampleMask::NearSurface)
    {
      out.push_back(field[static_cast<Index>(i)]);
    }
  }
  return Eigen::Map<CVector>(out.data(), static_cast<Index>(out.size()));
}

std::vector<Vec3> FieldSlice::UnmaskedPoints() const
{
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < mask.size(); i++)
  {
    if (mask[i] != SampleMask::NearSurface)
    {
      out.push_back(points[i]);
    }
  }
  return out;
}

namespace
{

// Barycentric coordinates of x in the tetrahedron.
Eigen::Vector4d TetBarycentric(const std::array<Vec3, 4> &v, const Vec3 &x)
{
  Eigen::Matrix3d m;
  m << v[1] - v[0], v[2] - v[0], v[3] - v[0];
  const Vec3 l = m.partialPivLu().solve(x - v[0]);
  return Eigen::Vector4d(1.0 - l.sum(), l[0], l[1], l[2]);
}

}  // namespace

FieldSlice SampleField(const Mesh &mesh, const FormulationSystem &system,
                       const CVector &solution, const IncidentWave &wave,
                       const std::vector<Vec3> &points, double band)
{
  FEMBEM_VERIFY(solution.size() == system.Size(), "solution has ", solution.size(),
                " entries, the system ", system.Size());
  if (band <= 0.0)
  {
    band = mesh.MaxTetDiameter();
  }
  FieldSlice slice;
  slice.points = points;
  const Index n = static_cast<Index>(points.size());
  slice.values = CVector::Zero(n);
  slice.mask.assign(points.size(), SampleMask::Exterior);
  std::vector<int> owner(points.size(), -1);

  std::string failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 0; i < n; i++)
  {
    try
    {
      for (std::size_t m = 0; m < system.domains.size(); m++)
      {
        const Surface &s = system.domains[m].surface;
        if (DistanceToSurface(s, points[i]) < band)
        {
          slice.mask[i] = SampleMask::NearSurface;
          break;
        }
        if (PointInsideSurface(s, points[i]))
        {
          slice.mask[i] = SampleMask::Interior;
          owner[i] = static_cast<int>(m);
          break;
        }
      }
    }
    catch (const std::exception &e)
    {
#pragma omp critical(fembem_sample_failure)
      failure = e.what();
    }
  }
  if (!failure.empty())
  {
    throw NumericalError(failure);
  }

  // Interior: P1 interpolation in the containing tetrahedron.
  for (std::size_t m = 0; m < system.domains.size(); m++)
  {
    const DomainData &d = system.domains[m];
    const CVector p = system.Segment(solution, UnknownKind::Pressure, d.domain);
    std::vector<char> found(points.size(), 0);
    for (const auto &tet : d.volume.tets)
    {
      std::array<Vec3, 4> v;
      Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
      for (int a = 0; a < 4; a++)
      {
        v[a] = mesh.vertices[d.volume.vertices[tet[a]]];
        lo = lo.cwiseMin(v[a]);
        hi = hi.cwiseMax(v[a]);
      }
      for (Index i = 0; i < n; i++)
      {
        if (owner[i] != static_cast<int>(m) || found[i])
        {
          continue;
        }
        const Vec3 &x = points[i];
        if ((x.array() < lo.array() - 1e-12).any() || (x.array() > hi.array() + 1e-12).any())
        {
          continue;
        }
        const Eigen::Vector4d l = TetBarycentric(v, x);
        if (l.minCoeff() >= -1e-10)
        {
          Complex val = 0.0;
          for (int a = 0; a < 4; a++)
          {
            val += l[a] * p[tet[a]];
          }
          slice.values[i] = val;
          found[i] = 1;
        }
      }
    }
    for (Index i = 0; i < n; i++)
    {
      if (owner[i] == static_cast<int>(m) && !found[i])
      {
        throw NumericalError(detail::Concat("point (", points[i].transpose(),
                                            ") is inside domain ", d.domain,
                                            " but in none of its tetrahedra"));
      }
    }
  }

  std::vector<Vec3> outside;
  std::vector<Index> where;
  for (Index i = 0; i < n; i++)
  {
    if (slice.mask[i] == SampleMask::Exterior)
    {
      outside.push_back(points[i]);
      where.push_back(i);
    }
  }
  if (!outside.empty())
  {
    const CVector f = ReconstructExterior(system, solution, wave, outside);
    for (std::size_t j = 0; j < where.size(); j++)
    {
      slice.values[where[j]] = f[static_cast<Index>(j)];
    }
  }
  return slice;
}

FieldSlice SamplePlane(const Mesh &mesh, const FormulationSystem &system,
                       const CVector &solution, const IncidentWave &wave,
                       const PlaneSpec &plane, double band)
{
  FieldSlice slice = SampleField(mesh, system, solution, wave, plane.Points(), band);
  slice.plane = plane;
  return slice;
}

double RelativeError(const CVector &values, const CVector &reference)
{
  FEMBEM_VERIFY(values.size() == reference.size(), "relative error of vectors of lengths ",
                values.size(), " and ", reference.size());
  const double r = reference.norm();
  FEMBEM_VERIFY(r > 0.0, "relative error against a zero reference");
  return (values - reference).norm() / r;
}

namespace
{

std::string FormatDouble(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string &line)
{
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); i++)
  {
    const char c = line[i];
    if (quoted)
    {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
      {
        cur += '"';
        i++;
      }
      else if (c == '"')
      {
        quoted = false;
      }
      else
      {
        cur += c;
      }
    }
    else if (c == '"')
    {
      quoted = true;
    }
    else if (c == ',')
    {
      fields.push_back(cur);
      cur.clear();
    }
    else
    {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string QuoteCsv(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string q = "\"";
  for (char c : s)
  {
    q += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return q + "\"";
}

std::ofstream OpenForWrite(const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IoError(detail::Concat("cannot write ", path.string()));
  }
  return out;
}

void CheckWritten(const std::ofstream &out, const std::filesystem::path &path)
{
  if (!out)
  {
    throw IoError(detail::Concat("write to ", path.string(), " failed"));
  }
}

}  // namespace

std::string FormatReportCsv(const std::vector<ReportRow> &rows)
{
  std::ostringstream os;
  os << kReportHeader << "\n";
  for (const auto &r : rows)
  {
    os << FormatDouble(r.k) << "," << QuoteCsv(r.formulation) << "," << QuoteCsv(r.variant)
       << "," << QuoteCsv(r.preconditioner) << "," << r.iterations << ","
       << (r.condition_number ? FormatDouble(*r.condition_number) : std::string()) << ","
       << FormatDouble(r.wall_time_s) << "\n";
  }
  return os.str();
}

void WriteReportCsv(const std::vector<ReportRow> &rows, const std::filesystem::path &path)
{
  std::ofstream out = OpenForWrite(path);
  out << FormatReportCsv(rows);
  CheckWritten(out, path);
}

std::vector<ReportRow> ParseReportCsv(const std::string &text)
{
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kReportHeader)
  {
    throw InvalidArgument("report CSV does not start with the expected header");
  }
  std::vector<ReportRow> rows;
  int lineno = 1;
  while (std::getline(is, line))
  {
    lineno++;
    if (line.empty())
    {
      continue;
    }
    const auto f = SplitCsvLine(line);
    FEMBEM_VERIFY(f.size() == 7, "report CSV line ", lineno, " has ", f.size(),
                  " fields, expected 7");
    try
    {
      ReportRow r;
      r.k = std::stod(f[0]);
      r.formulation = f[1];
      r.variant = f[2];
      r.preconditioner = f[3];
      r.iterations = std::stoi(f[4]);
      if (!f[5].empty())
      {
        r.condition_number = std::stod(f[5]);
      }
      r.wall_time_s = std::stod(f[6]);
      rows.push_back(std::move(r));
    }
    catch (const std::logic_error &)
    {
      throw InvalidArgument(detail::Concat("report CSV line ", lineno, " has a bad number"));
    }
  }
  return rows;
}

std::vector<ReportRow> ReadReportCsv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError(detail::Concat("cannot read ", path.string()));
  }
  std::ostringstream os;
  os << in.rdbuf();
  return ParseReportCsv(os.str());
}

void WriteResonanceCsv(const std::vector<double> &k, const std::filesystem::path &path)
{
  std::ofstream out = OpenForWrite(path);
  out << "resonance_k\n";
  for (double x : k)
  {
    out << FormatDouble(x) << "\n";
  }
  CheckWritten(out, path);
}

void WriteSliceVtk(const FieldSlice &slice, const std::filesystem::path &path)
{
  const int r = slice.plane.resolution;
  FEMBEM_VERIFY(static_cast<std::size_t>(r) * r == slice.points.size(),
                "slice does not hold a resolution x resolution grid");
  std::ofstream out = OpenForWrite(path);
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nfield slice\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << slice.points.size() << " double\n";
  for (const Vec3 &x : slice.points)
  {
    out << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  const int nc = (r - 1) * (r - 1);
  out << "CELLS " << nc << " " << 5 * nc << "\n";
  for (int j = 0; j + 1 < r; j++)
  {
    for (int i = 0; i + 1 < r; i++)
    {
      const int a = j * r + i;
      out << "4 " << a << " " << a + 1 << " " << a + r + 1 << " " << a + r << "\n";
    }
  }
  out << "CELL_TYPES " << nc << "\n";
  for (int c = 0; c < nc; c++)
  {
    out << "9\n";
  }
  out << "POINT_DATA " << slice.points.size() << "\n";
  out << "SCALARS field_real double 1\nLOOKUP_TABLE default\n";
  for (Index i = 0; i < slice.values.size(); i++)
  {
    out << slice.values[i].real() << "\n";
  }
  out << "SCALARS field_imag double 1\nLOOKUP_TABLE default\n";
  for (Index i = 0; i < slice.values.size(); i++)
  {
    out << slice.values[i].imag() << "\n";
  }
  out << "SCALARS mask int 1\nLOOKUP_TABLE default\n";
  for (SampleMask m : slice.mask)
  {
    out << static_cast<int>(m) << "\n";
  }
  CheckWritten(out, path);
}

void WriteSurfaceVtk(const Surface &surface, const CVector &values, const std::string &name,
                     const std::filesystem::path &path)
{
  FEMBEM_VERIFY(values.size() == surface.NumNodes(), "surface field has ", values.size(),
                " values for ", surface.NumNodes(), " nodes");
  std::ofstream out = OpenForWrite(path);
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nsurface field\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << surface.NumNodes() << " double\n";
  for (const Vec3 &x : surface.nodes)
  {
    out << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  out << "CELLS " << surface.NumTriangles() << " " << 4 * surface.NumTriangles() << "\n";
  for (const auto &t : surface.triangles)
  {
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  out << "CELL_TYPES " << surface.NumTriangles() << "\n";
  for (Index t = 0; t < surface.NumTriangles(); t++)
  {
    out << "5\n";
  }
  out << "POINT_DATA " << surface.NumNodes() << "\n";
  out << "SCALARS " << name << "_real double 1\nLOOKUP_TABLE default\n";
  for (Index i = 0; i < values.size(); i++)
  {
    out << values[i].real() << "\n";
  }
  out << "SCALARS " << name << "_imag double 1\nLOOKUP_TABLE default\n";
  for (Index i = 0; i < values.size(); i++)
  {
    out << values[i].imag() << "\n";
  }
  CheckWritten(out, path);
}

}  // namespace fembem
