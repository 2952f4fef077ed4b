// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/bem.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fembem/quadrature.hpp"

namespace fembem
{

Complex Green(const Vec3 &x, const Vec3 &y, double k)
{
  const double r = (x - y).norm();
  FEMBEM_VERIFY(r > 0.0, "Green's function evaluated at coincident points");
  return std::polar(1.0 / (4.0 * pi * r), k * r);
}

std::string ToString(BoundaryOperatorKind kind)
{
  switch (kind)
  {
    case BoundaryOperatorKind::SingleLayer:
      return "V";
    case BoundaryOperatorKind::DoubleLayer:
      return "K";
    case BoundaryOperatorKind::AdjointDoubleLayer:
      return "T";
    case BoundaryOperatorKind::Hypersingular:
      return "D";
  }
  return "?";
}

void QuadratureConfig::Validate() const
{
  FEMBEM_VERIFY(singular_order >= 1 && regular_order >= 1 && far_order >= 1,
                "quadrature orders must be >= 1");
  FEMBEM_VERIFY(far_distance >= 0.0, "far_distance must be non-negative");
}

namespace
{

using Mat3c = Eigen::Matrix3cd;

// Geometry and precomputed regular quadrature of one triangle.
struct TriangleData
{
  std::array<Vec3, 3> p;
  std::array<int, 3> node;
  std::array<int, 3> vertex;
  Vec3 n, centroid;
  double area, diameter;
  std::array<Vec3, 3> curl;
};

struct PointSet
{
  std::vector<Vec3> x;
  std::vector<Eigen::Vector3d> phi;
  std::vector<double> w;
};

struct SurfaceData
{
  std::vector<TriangleData> tri;
  std::vector<PointSet> regular, far;
};

PointSet MapRule(const TriangleData &t, const TriangleRule &rule)
{
  PointSet ps;
  for (std::size_t q = 0; q < rule.x.size(); q++)
  {
    const Eigen::Vector3d l = ReferenceBarycentric(rule.x[q]);
    ps.x.push_back(l[0] * t.p[0] + l[1] * t.p[1] + l[2] * t.p[2]);
    ps.phi.push_back(l);
    ps.w.push_back(rule.w[q] * 2.0 * t.area);
  }
  return ps;
}

SurfaceData Prepare(const Surface &s, const QuadratureConfig &quad)
{
  SurfaceData d;
  const TriangleRule reg = TriangleGauss(quad.regular_order);
  const TriangleRule far = TriangleGauss(quad.far_order);
  d.tri.resize(s.NumTriangles());
  for (Index t = 0; t < s.NumTriangles(); t++)
  {
    TriangleData &td = d.tri[t];
    for (int a = 0; a < 3; a++)
    {
      td.node[a] = s.triangles[t][a];
      td.vertex[a] = s.volume_vertex[td.node[a]];
      td.p[a] = s.nodes[td.node[a]];
    }
    td.n = s.normals[t];
    td.area = s.areas[t];
    td.centroid = (td.p[0] + td.p[1] + td.p[2]) / 3.0;
    td.diameter = std::max({(td.p[1] - td.p[0]).norm(), (td.p[2] - td.p[1]).norm(),
                            (td.p[0] - td.p[2]).norm()});
    // Surface gradient of the hat function of corner a: n x (opposite edge) / (2 area).
    for (int a = 0; a < 3; a++)
    {
      const Vec3 e = td.p[(a + 2) % 3] - td.p[(a + 1) % 3];
      const Vec3 grad = td.n.cross(e) / (2.0 * td.area);
      td.curl[a] = td.n.cross(grad);
    }
    d.regular.push_back(MapRule(td, reg));
    d.far.push_back(MapRule(td, far));
  }
  return d;
}

struct LocalKernels
{
  Mat3c V = Mat3c::Zero(), K = Mat3c::Zero(), T = Mat3c::Zero();
  Complex G00 = 0.0;
};

struct Needs
{
  bool V = false, K = false, T = false, G00 = false;
};

// Accumulates the kernel contributions of one point pair.
inline void Accumulate(LocalKernels &loc, const Needs &needs, double k, const Vec3 &x,
                       const Vec3 &y, const Vec3 &nx, const Vec3 &ny,
                       const Eigen::Vector3d &px, const Eigen::Vector3d &py, double w)
{
  const Vec3 d = x - y;
  const double r = d.norm();
  const double inv_r = 1.0 / r;
  const double s = std::sin(k * r), c = std::cos(k * r);
  const Complex g = Complex(c, s) * (w * inv_r / (4.0 * pi));
  if (needs.G00)
  {
    loc.G00 += g;
  }
  if (needs.V)
  {
    loc.V.noalias() += g * (px * py.transpose()).cast<Complex>();
  }
  if (needs.K || needs.T)
  {
    const Complex gp = g * Complex(-inv_r, k) * inv_r;  // G'(r) / r
    if (needs.K)
    {
      loc.K.noalias() += (-gp * d.dot(ny)) * (px * py.transpose()).cast<Complex>();
    }
    if (needs.T)
    {
      loc.T.noalias() += (gp * d.dot(nx)) * (px * py.transpose()).cast<Complex>();
    }
  }
}

struct PairAssembler
{
  const SurfaceData &test, &trial;
  double k;
  Needs needs;
  QuadratureConfig quad;
  PairRule coincident, edge, vertex;

  PairAssembler(const SurfaceData &test_, const SurfaceData &trial_, double k_, Needs needs_,
                const QuadratureConfig &quad_)
    : test(test_), trial(trial_), k(k_), needs(needs_), quad(quad_),
      coincident(SauterSchwabRule(PairRelation::Coincident, quad_.singular_order)),
      edge(SymmetrizedRule(SauterSchwabRule(PairRelation::Edge, quad_.singular_order))),
      vertex(SauterSchwabRule(PairRelation::Vertex, quad_.singular_order))
  {
  }

  LocalKernels Compute(int t, int s) const
  {
    const TriangleData &tx = test.tri[t], &ty = trial.tri[s];
    // Local corners shared by the two triangles.
    std::array<int, 3> px = {0, 1, 2}, py = {0, 1, 2};
    int shared = 0;
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        if (tx.vertex[a] == ty.vertex[b])
        {
          px[shared] = a;
          py[shared] = b;
          shared++;
        }
      }
    }
    // Canonical order of the shared vertices keeps the pair (s, t) the mirror of (t, s).
    for (int a = 1; a < shared; a++)
    {
      for (int b = a; b > 0 && tx.vertex[px[b]] < tx.vertex[px[b - 1]]; b--)
      {
        std::swap(px[b], px[b - 1]);
        std::swap(py[b], py[b - 1]);
      }
    }
    LocalKernels loc;
    if (shared == 0)
    {
      const double dist = (tx.centroid - ty.centroid).norm();
      const bool is_far = dist > quad.far_distance * std::max(tx.diameter, ty.diameter);
      const PointSet &qx = is_far ? test.far[t] : test.regular[t];
      const PointSet &qy = is_far ? trial.far[s] : trial.regular[s];
      for (std::size_t i = 0; i < qx.x.size(); i++)
      {
        for (std::size_t j = 0; j < qy.x.size(); j++)
        {
          Accumulate(loc, needs, k, qx.x[i], qy.x[j], tx.n, ty.n, qx.phi[i], qy.phi[j],
                     qx.w[i] * qy.w[j]);
        }
      }
      return loc;
    }
    // Unshared corners follow the shared ones.
    auto complete = [shared](std::array<int, 3> &p)
    {
      int next = shared;
      for (int a = 0; a < 3; a++)
      {
        if (std::find(p.begin(), p.begin() + shared, a) == p.begin() + shared)
        {
          p[next++] = a;
        }
      }
    };
    complete(px);
    complete(py);
    const PairRule &rule =
        shared == 3 ? coincident : (shared == 2 ? edge : vertex);
    const std::array<Vec3, 3> cx = {tx.p[px[0]], tx.p[px[1]], tx.p[px[2]]};
    const std::array<Vec3, 3> cy = {ty.p[py[0]], ty.p[py[1]], ty.p[py[2]]};
    const double jac = 4.0 * tx.area * ty.area;
    LocalKernels perm;
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const Eigen::Vector3d lx = ReferenceBarycentric(rule.x[q]);
      const Eigen::Vector3d ly = ReferenceBarycentric(rule.y[q]);
      const Vec3 x = lx[0] * cx[0] + lx[1] * cx[1] + lx[2] * cx[2];
      const Vec3 y = ly[0] * cy[0] + ly[1] * cy[1] + ly[2] * cy[2];
      Accumulate(perm, needs, k, x, y, tx.n, ty.n, lx, ly, rule.w[q] * jac);
    }
    loc.G00 = perm.G00;
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        loc.V(px[a], py[b]) = perm.V(a, b);
        loc.K(px[a], py[b]) = perm.K(a, b);
        loc.T(px[a], py[b]) = perm.T(a, b);
      }
    }
    return loc;
  }
};

Mat3c LocalMatrix(BoundaryOperatorKind kind, const LocalKernels &loc, const TriangleData &tx,
                  const TriangleData &ty, double k)
{
  switch (kind)
  {
    case BoundaryOperatorKind::SingleLayer:
      return loc.V;
    case BoundaryOperatorKind::DoubleLayer:
      return loc.K;
    case BoundaryOperatorKind::AdjointDoubleLayer:
      return loc.T;
    case BoundaryOperatorKind::Hypersingular:
    {
      Mat3c d;
      const double nn = tx.n.dot(ty.n);
      for (int a = 0; a < 3; a++)
      {
        for (int b = 0; b < 3; b++)
        {
          d(a, b) = tx.curl[a].dot(ty.curl[b]) * loc.G00 - k * k * nn * loc.V(a, b);
        }
      }
      return d;
    }
  }
  return Mat3c::Zero();
}

void Scatter(CMatrix &m, const BoundaryRequest &req, const Mat3c &local, int t, int s,
             const TriangleData &tx, const TriangleData &ty)
{
  const bool p0_test = req.test == SpaceKind::SurfaceP0;
  const bool p0_trial = req.trial == SpaceKind::SurfaceP0;
  for (int a = 0; a < 3; a++)
  {
    const Index row = p0_test ? t : tx.node[a];
    for (int b = 0; b < 3; b++)
    {
      const Index col = p0_trial ? s : ty.node[b];
      m(row, col) += local(a, b);
    }
  }
}

Index Dim(const Surface &s, SpaceKind kind)
{
  return kind == SpaceKind::SurfaceP0 ? s.NumTriangles() : s.NumNodes();
}

}  // namespace

std::vector<std::vector<int>> ColourTriangles(const Surface &surface)
{
  std::vector<std::vector<int>> node_colours(surface.NumNodes());
  std::vector<std::vector<int>> colours;
  for (Index t = 0; t < surface.NumTriangles(); t++)
  {
    const auto &tri = surface.triangles[t];
    int c = 0;
    while (true)
    {
      bool used = false;
      for (int v : tri)
      {
        const auto &nc = node_colours[v];
        used = used || std::find(nc.begin(), nc.end(), c) != nc.end();
      }
      if (!used)
      {
        break;
      }
      c++;
    }
    if (c == static_cast<int>(colours.size()))
    {
      colours.emplace_back();
    }
    colours[c].push_back(static_cast<int>(t));
    for (int v : tri)
    {
      node_colours[v].push_back(c);
    }
  }
  return colours;
}

std::vector<CMatrix> AssembleBoundaryOperators(const Surface &test, const Surface &trial,
                                               double k,
                                               const std::vector<BoundaryRequest> &requests,
                                               const QuadratureConfig &quad, Execution exec)
{
  quad.Validate();
  FEMBEM_VERIFY(k >= 0.0, "wavenumber must be non-negative, got ", k);
  Needs needs;
  std::vector<CMatrix> out;
  for (const auto &req : requests)
  {
    FEMBEM_VERIFY(req.test != SpaceKind::VolumeP1 && req.trial != SpaceKind::VolumeP1,
                  "boundary operators act on surface spaces only");
    switch (req.kind)
    {
      case BoundaryOperatorKind::SingleLayer:
        needs.V = true;
        break;
      case BoundaryOperatorKind::DoubleLayer:
        needs.K = true;
        break;
      case BoundaryOperatorKind::AdjointDoubleLayer:
        needs.T = true;
        break;
      case BoundaryOperatorKind::Hypersingular:
        FEMBEM_VERIFY(req.test == SpaceKind::SurfaceP1 && req.trial == SpaceKind::SurfaceP1,
                      "unsupported space pairing: hypersingular operator needs P1 test and "
                      "trial spaces, got ", ToString(req.test), " x ", ToString(req.trial));
        needs.V = true;
        needs.G00 = true;
        break;
    }
    out.push_back(CMatrix::Zero(Dim(test, req.test), Dim(trial, req.trial)));
  }
  const SurfaceData dx = Prepare(test, quad);
  const SurfaceData dy = (&test == &trial) ? SurfaceData{} : Prepare(trial, quad);
  const SurfaceData &ry = (&test == &trial) ? dx : dy;
  const PairAssembler pa(dx, ry, k, needs, quad);
  const int ntrial = static_cast<int>(trial.NumTriangles());

  auto process_test = [&](int t)
  {
    for (int s = 0; s < ntrial; s++)
    {
      const LocalKernels loc = pa.Compute(t, s);
      for (std::size_t r = 0; r < requests.size(); r++)
      {
        Scatter(out[r], requests[r], LocalMatrix(requests[r].kind, loc, dx.tri[t], ry.tri[s], k),
                t, s, dx.tri[t], ry.tri[s]);
      }
    }
  };

  if (exec == Execution::Serial)
  {
    for (int t = 0; t < static_cast<int>(test.NumTriangles()); t++)
    {
      process_test(t);
    }
  }
  else
  {
    for (const auto &colour : ColourTriangles(test))
    {
      const int n = static_cast<int>(colour.size());
#pragma omp parallel for schedule(dynamic, 4)
      for (int i = 0; i < n; i++)
      {
        process_test(colour[i]);
      }
    }
  }
  return out;
}

DenseOperatorBlock AssembleBoundaryOperator(BoundaryOperatorKind kind, const Surface &test,
                                            SpaceKind test_space, const Surface &trial,
                                            SpaceKind trial_space, double k,
                                            const QuadratureConfig &quad, Execution exec)
{
  DenseOperatorBlock block;
  block.matrix =
      AssembleBoundaryOperators(test, trial, k, {{kind, test_space, trial_space}}, quad, exec)
          .front();
  block.test = {test_space, test.domain};
  block.trial = {trial_space, trial.domain};
  block.label = ToString(kind);
  return block;
}

RSparse AssembleSurfaceMass(const Surface &surface, SpaceKind test, SpaceKind trial)
{
  FEMBEM_VERIFY(test != SpaceKind::VolumeP1 && trial != SpaceKind::VolumeP1,
                "surface mass needs surface spaces");
  std::vector<Eigen::Triplet<double>> trip;
  for (Index t = 0; t < surface.NumTriangles(); t++)
  {
    const auto &tri = surface.triangles[t];
    const double area = surface.areas[t];
    if (test == SpaceKind::SurfaceP0 && trial == SpaceKind::SurfaceP0)
    {
      trip.emplace_back(t, t, area);
    }
    else if (test == SpaceKind::SurfaceP0)
    {
      for (int b = 0; b < 3; b++)
      {
        trip.emplace_back(t, tri[b], area / 3.0);
      }
    }
    else if (trial == SpaceKind::SurfaceP0)
    {
      for (int a = 0; a < 3; a++)
      {
        trip.emplace_back(tri[a], t, area / 3.0);
      }
    }
    else
    {
      for (int a = 0; a < 3; a++)
      {
        for (int b = 0; b < 3; b++)
        {
          trip.emplace_back(tri[a], tri[b], area * (a == b ? 2.0 : 1.0) / 12.0);
        }
      }
    }
  }
  RSparse m(Dim(surface, test), Dim(surface, trial));
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

double PointTriangleDistance(const Vec3 &p, const Vec3 &a, const Vec3 &b, const Vec3 &c)
{
  // Closest point by Voronoi region classification.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0)
  {
    return ap.norm();
  }
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3)
  {
    return bp.norm();
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
  {
    return (p - (a + ab * (d1 / (d1 - d3)))).norm();
  }
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6)
  {
    return cp.norm();
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
  {
    return (p - (a + ac * (d2 / (d2 - d6)))).norm();
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
  {
    return (p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6))))).norm();
  }
  const double denom = 1.0 / (va + vb + vc);
  return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

double DistanceToSurface(const Surface &surface, const Vec3 &x)
{
  double d = std::numeric_limits<double>::infinity();
  for (Index t = 0; t < surface.NumTriangles(); t++)
  {
    const auto c = surface.Corners(t);
    d = std::min(d, PointTriangleDistance(x, c[0], c[1], c[2]));
  }
  return d;
}

namespace
{

// Integrates f(y, basis values) over a triangle, subdividing near the evaluation point.
// corners are barycentric coordinates (w.r.t. the parent triangle) of the sub-triangle.
template <typename F>
void IntegrateTriangle(const std::array<Vec3, 3> &p, double area,
                       const std::array<Eigen::Vector3d, 3> &corners, double scale,
                       const Vec3 &x, const TriangleRule &rule, const PotentialOptions &opts,
                       int depth, const F &f)
{
  std::array<Vec3, 3> q;
  for (int a = 0; a < 3; a++)
  {
    q[a] = corners[a][0] * p[0] + corners[a][1] * p[1] + corners[a][2] * p[2];
  }
  if (opts.adaptive && depth < opts.max_depth)
  {
    const double diam =
        std::max({(q[1] - q[0]).norm(), (q[2] - q[1]).norm(), (q[0] - q[2]).norm()});
    if (PointTriangleDistance(x, q[0], q[1], q[2]) < 1.5 * diam)
    {
      const Eigen::Vector3d m01 = 0.5 * (corners[0] + corners[1]);
      const Eigen::Vector3d m12 = 0.5 * (corners[1] + corners[2]);
      const Eigen::Vector3d m20 = 0.5 * (corners[2] + corners[0]);
      const double s = 0.25 * scale;
      IntegrateTriangle(p, area, {corners[0], m01, m20}, s, x, rule, opts, depth + 1, f);
      IntegrateTriangle(p, area, {m01, corners[1], m12}, s, x, rule, opts, depth + 1, f);
      IntegrateTriangle(p, area, {m20, m12, corners[2]}, s, x, rule, opts, depth + 1, f);
      IntegrateTriangle(p, area, {m01, m12, m20}, s, x, rule, opts, depth + 1, f);
      return;
    }
  }
  for (std::size_t i = 0; i < rule.x.size(); i++)
  {
    const Eigen::Vector3d l = ReferenceBarycentric(rule.x[i]);
    const Eigen::Vector3d bary = l[0] * corners[0] + l[1] * corners[1] + l[2] * corners[2];
    const Vec3 y = bary[0] * p[0] + bary[1] * p[1] + bary[2] * p[2];
    f(y, bary, rule.w[i] * 2.0 * area * scale);
  }
}

template <typename F>
CVector EvaluateOverSurface(const Surface &surface, const std::vector<Vec3> &points,
                            const PotentialOptions &opts, const F &integrand)
{
  const TriangleRule rule = TriangleGauss(opts.order);
  const Index np = static_cast<Index>(points.size());
  if (opts.guard)
  {
    for (Index i = 0; i < np; i++)
    {
      const double d = DistanceToSurface(surface, points[i]);
      FEMBEM_VERIFY(d >= surface.max_diameter, "evaluation point (", points[i].transpose(),
                    ") is too close to the surface: distance ", d, " < element diameter ",
                    surface.max_diameter);
    }
  }
  CVector out = CVector::Zero(np);
  const std::array<Eigen::Vector3d, 3> unit = {Eigen::Vector3d(1, 0, 0),
                                               Eigen::Vector3d(0, 1, 0),
                                               Eigen::Vector3d(0, 0, 1)};
  auto eval = [&](Index i)
  {
    Complex sum = 0.0;
    for (Index t = 0; t < surface.NumTriangles(); t++)
    {
      const auto p = surface.Corners(t);
      IntegrateTriangle(p, surface.areas[t], unit, 1.0, points[i], rule, opts, 0,
                        [&](const Vec3 &y, const Eigen::Vector3d &bary, double w)
                        { sum += w * integrand(points[i], y, t, bary); });
    }
    out[i] = sum;
  };
  if (opts.exec == Execution::Serial)
  {
    for (Index i = 0; i < np; i++)
    {
      eval(i);
    }
  }
  else
  {
#pragma omp parallel for schedule(dynamic, 8)
    for (Index i = 0; i < np; i++)
    {
      eval(i);
    }
  }
  return out;
}

}  // namespace

CVector EvaluatePotentials(const Surface &surface, double k, const CVector &phi,
                           const CVector &psi, SpaceKind psi_space,
                           const std::vector<Vec3> &points, const PotentialOptions &opts)
{
  const bool has_phi = phi.size() > 0, has_psi = psi.size() > 0;
  FEMBEM_VERIFY(!has_phi || phi.size() == surface.NumNodes(), "double layer density has ",
                phi.size(), " entries, expected ", surface.NumNodes());
  FEMBEM_VERIFY(psi_space != SpaceKind::VolumeP1, "single layer density must be a surface "
                "function");
  FEMBEM_VERIFY(!has_psi || psi.size() == Dim(surface, psi_space), "single layer density has ",
                psi.size(), " entries, expected ", Dim(surface, psi_space));
  return EvaluateOverSurface(
      surface, points, opts,
      [&](const Vec3 &x, const Vec3 &y, Index t, const Eigen::Vector3d &bary)
      {
        const auto &tri = surface.triangles[t];
        const Vec3 d = x - y;
        const double r = d.norm();
        const Complex g = std::polar(1.0 / (4.0 * pi * r), k * r);
        Complex v = 0.0;
        if (has_phi)
        {
          const Complex f = bary[0] * phi[tri[0]] + bary[1] * phi[tri[1]] + bary[2] * phi[tri[2]];
          // Normal derivative with respect to y.
          const Complex dg = g * Complex(-1.0 / r, k) / r * (-d.dot(surface.normals[t]));
          v += dg * f;
        }
        if (has_psi)
        {
          const Complex f = psi_space == SpaceKind::SurfaceP0
                                ? psi[t]
                                : bary[0] * psi[tri[0]] + bary[1] * psi[tri[1]] +
                                      bary[2] * psi[tri[2]];
          v -= g * f;
        }
        return v;
      });
}

CVector EvaluateSingleLayerOfFunction(
    const Surface &surface, double k,
    const std::function<Complex(const Vec3 &, const Vec3 &)> &f,
    const std::vector<Vec3> &points, const PotentialOptions &opts)
{
  return EvaluateOverSurface(surface, points, opts,
                             [&](const Vec3 &x, const Vec3 &y, Index t, const Eigen::Vector3d &)
                             { return Green(x, y, k) * f(y, surface.normals[t]); });
}

}  // namespace fembem
