// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Usage: acceptance [criterion ...]; with no arguments every
// criterion runs. One PASS/FAIL line is printed per criterion, and the exit status is
// non-zero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "fembem/bem.hpp"
#include "fembem/config.hpp"
#include "fembem/fem.hpp"
#include "fembem/formulations.hpp"
#include "fembem/linsolve.hpp"
#include "fembem/oracles.hpp"
#include "fembem/osrc.hpp"
#include "fembem/postprocess.hpp"

using namespace fembem;

namespace
{

using BK = BoundaryOperatorKind;
using SK = SpaceKind;

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  // Records one measured quantity and folds its verdict into the outcome.
  void Check(bool ok, const std::string &what)
  {
    pass = pass && ok;
    detail << (ok ? "" : "[failed] ") << what << "; ";
  }
};

std::string Fmt(double v, int digits = 4)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string Percent(double v)
{
  return Fmt(100.0 * v) + "%";
}

void Note(const std::string &line)
{
  std::printf("  %s\n", line.c_str());
  std::fflush(stdout);
}

bool Decreasing(const std::vector<double> &v)
{
  for (std::size_t i = 1; i < v.size(); i++)
  {
    if (!(v[i] < v[i - 1]))
    {
      return false;
    }
  }
  return true;
}

std::string List(const std::vector<double> &v, bool percent = false)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); i++)
  {
    s += (i ? ", " : "") + (percent ? Percent(v[i]) : Fmt(v[i]));
  }
  return s;
}

CVector SurfaceTrace(const FormulationSystem &sys, const CVector &x, int d)
{
  return sys.domains[d].maps.Z.cast<Complex>() *
         sys.Segment(x, UnknownKind::Pressure, sys.domains[d].domain);
}

DomainMaterial Homogeneous(double refractivity, double density = 1.0)
{
  DomainMaterial m;
  m.refractivity = ScalarField(refractivity);
  m.density = ScalarField(density);
  return m;
}

const Vec3 kDirection = Vec3(1.0, 2.0, 0.0).normalized();

//
// 1. A transparent cube does not scatter.
//
void TransparentCube(Outcome &out)
{
  const double k = 4.0;
  const MaterialModel materials;
  const IncidentWave wave{kDirection, k};
  std::vector<double> ratios;
  for (int n : {4, 6, 8})
  {
    const Mesh mesh = BuildCubeMesh(n);
    const FormulationSystem sys = BuildStabilised(Scene{mesh, materials, wave}, {});
    const CVector x = DirectSolve(sys.lhs, sys.rhs);
    ratios.push_back(sys.Segment(x, UnknownKind::Sigma, 0).norm() /
                     sys.Segment(x, UnknownKind::Theta, 0).norm());
    Note("subdivisions " + std::to_string(n) + ": |Sigma|/|theta| = " + Fmt(ratios.back()));
    if (n != 8)
    {
      continue;
    }
    const DomainData &d = sys.domains[0];
    const double dirichlet = RelativeError(SurfaceTrace(sys, x, 0), d.incident_dirichlet);
    // theta is the scattered Neumann trace, so the total one deviates from the incident
    // trace by theta itself. Both are measured in L2 on the surface, the incident trace
    // through its L2 projection onto P1.
    const CSparse mass = d.mass_p1.cast<Complex>();
    const CVector theta = sys.Segment(x, UnknownKind::Theta, 0);
    const CVector q = Eigen::SimplicialLDLT<CSparse>(mass).solve(d.incident_neumann);
    const double neumann = std::sqrt(std::abs(theta.dot(mass * theta)) / std::abs(q.dot(mass * q)));
    const FieldSlice slice = SamplePlane(mesh, sys, x, wave, PlaneSpec{});
    CVector inc(static_cast<Index>(slice.points.size()));
    for (std::size_t i = 0; i < slice.points.size(); i++)
    {
      inc[static_cast<Index>(i)] = wave.Value(slice.points[i]);
    }
    const double plane = RelativeError(slice.Unmasked(slice.values), slice.Unmasked(inc));
    out.Check(dirichlet < 0.03, "Dirichlet trace deviation " + Percent(dirichlet) + " < 3%");
    Note("Neumann trace deviation " + Percent(neumann));
    out.Check(plane < 0.03, "z=0.5 plane deviation " + Percent(plane) + " < 3% over " +
                                std::to_string(slice.UnmaskedPoints().size()) + " points");
  }
  out.Check(ratios.back() < 0.1, "|Sigma|/|theta| " + Fmt(ratios.back()) + " < 0.1");
  out.Check(Decreasing(ratios), "|Sigma|/|theta| decreasing (" + List(ratios) + ")");
}

//
// 2. Penetrable sphere against the series solution.
//
void Sphere(Outcome &out)
{
  const double k = 2.0, k_int = 2.6, density = 1.5;
  const SphereTransmissionOracle oracle(1.0, k, k_int, density, kDirection);
  const IncidentWave wave{kDirection, k};
  MaterialModel materials;
  materials.Set(0, Homogeneous(k_int / k, density));

  PlaneSpec plane;
  plane.origin = Vec3(-2.0, -2.0, 0.25);
  plane.u = Vec3(4.0, 0.0, 0.0);
  plane.v = Vec3(0.0, 4.0, 0.0);
  plane.resolution = 31;

  std::vector<double> trace_err, plane_err;
  double min_per_wavelength = 1e300;
  for (int n : {10, 12, 14})
  {
    const Mesh mesh = BuildBallMesh(n);
    const double per_wavelength = 2.0 * pi / k_int / mesh.MaxTetDiameter();
    min_per_wavelength = std::min(min_per_wavelength, per_wavelength);

    const FormulationSystem sys = BuildStabilised(Scene{mesh, materials, wave}, {});
    const auto pc = BuildPreconditioner(PreconditionerRecipe::Preset("ilu_inner+osrc_surface"), sys);
    GmresOptions opts;
    opts.tol = 1e-8;
    SolveReport report;
    const CVector x = Gmres(sys.lhs, sys.rhs, pc.get(), opts, report);
    if (!report.converged)
    {
      throw NumericalError(detail::Concat("GMRES did not converge on ball mesh ", n));
    }

    const Surface &s = sys.domains[0].surface;
    CVector ref(s.NumNodes());
    for (Index i = 0; i < s.NumNodes(); i++)
    {
      ref[i] = oracle.Field(s.nodes[i]);
    }
    trace_err.push_back(RelativeError(SurfaceTrace(sys, x, 0), ref));

    const FieldSlice slice = SamplePlane(mesh, sys, x, wave, plane);
    CVector exact(static_cast<Index>(slice.points.size()));
    for (std::size_t i = 0; i < slice.points.size(); i++)
    {
      exact[static_cast<Index>(i)] = oracle.Field(slice.points[i]);
    }
    plane_err.push_back(RelativeError(slice.Unmasked(slice.values), slice.Unmasked(exact)));
    Note("ball " + std::to_string(n) + ": " + std::to_string(sys.Size()) + " unknowns, " +
         Fmt(per_wavelength) + " elements per wavelength, " +
         std::to_string(report.iterations) + " iterations, trace error " +
         Percent(trace_err.back()) + ", plane error " + Percent(plane_err.back()));
  }
  out.Check(min_per_wavelength >= 6.0,
            "elements per interior wavelength " + Fmt(min_per_wavelength) + " >= 6");
  out.Check(trace_err.back() < 0.05, "surface trace error " + Percent(trace_err.back()) + " < 5%");
  out.Check(plane_err.back() < 0.05, "plane error " + Percent(plane_err.back()) + " < 5%");
  out.Check(Decreasing(trace_err), "trace error decreasing (" + List(trace_err, true) + ")");
  out.Check(Decreasing(plane_err), "plane error decreasing (" + List(plane_err, true) + ")");
}

//
// 3. Condition numbers across an interior resonance of the cube.
//
void Resonance(Outcome &out)
{
  const Mesh mesh = BuildCubeMesh(13);
  MaterialModel materials;
  DomainMaterial m;
  m.refractivity = BenchmarkRefractivityField();
  materials.Set(0, m);
  const std::vector<double> ks = {10.0, 11.70, 11.7548, 11.80};
  const std::vector<std::pair<std::string, RegulariserKind>> stabilised = {
      {"MH", RegulariserKind::ModifiedHelmholtz},
      {"SL", RegulariserKind::ShiftedLaplace},
      {"OSRC", RegulariserKind::Osrc}};

  std::map<std::string, std::vector<double>> cond;
  for (double k : ks)
  {
    const IncidentWave wave{kDirection, k};
    const Scene scene{mesh, materials, wave};
    FormulationOptions opts;
    opts.cache = std::make_shared<BoundaryOperatorCache>();
    std::vector<std::pair<std::string, FormulationSystem>> systems;
    systems.emplace_back("symmetric", BuildSymmetric(scene, opts));
    for (const auto &[name, reg] : stabilised)
    {
      opts.regulariser = reg;
      systems.emplace_back(name, BuildStabilised(scene, opts));
    }
    for (const auto &[name, sys] : systems)
    {
      cond[name].push_back(ConditionNumber(sys.lhs, false, CondMethod::Lanczos));
      Note("k = " + Fmt(k, 6) + " " + name + " (" + std::to_string(sys.Size()) +
           " unknowns): condition number " + Fmt(cond[name].back()));
    }
  }
  const double spike = cond["symmetric"][2] / cond["symmetric"][0];
  out.Check(spike >= 10.0, "symmetric cond(11.7548)/cond(10) = " + Fmt(spike) + " >= 10");
  for (const auto &[name, reg] : stabilised)
  {
    const auto &c = cond[name];
    const double spread =
        *std::max_element(c.begin(), c.end()) / *std::min_element(c.begin(), c.end());
    out.Check(spread < 2.0, name + " max/min condition number " + Fmt(spread) + " < 2");
  }
}

//
// 4. Preconditioner and row permutation effect on GMRES iterations.
//
void Preconditioning(Outcome &out)
{
  const Mesh mesh = BuildCubeMesh(8);
  MaterialModel materials;
  DomainMaterial m;
  m.refractivity = BenchmarkRefractivityField();
  materials.Set(0, m);
  const IncidentWave wave{kDirection, 8.0};
  const GmresOptions opts;

  auto iterations = [&](const FormulationOptions &fo, const std::string &recipe)
  {
    const FormulationSystem sys = BuildStabilised(Scene{mesh, materials, wave}, fo);
    const auto pc = BuildPreconditioner(PreconditionerRecipe::Preset(recipe), sys);
    SolveReport report;
    Gmres(sys.lhs, sys.rhs, pc.get(), opts, report);
    Note(std::string(fo.permuted ? "permuted alt_reg" : "base") + " with " + recipe + ": " +
         std::to_string(report.iterations) + " iterations" +
         (report.converged ? "" : " (not converged)"));
    return report.converged ? report.iterations : opts.max_iter + 1;
  };

  FormulationOptions base;
  FormulationOptions permuted;
  permuted.variant = StabilisedVariant::AltReg;
  permuted.permuted = true;
  const int none = iterations(base, "none");
  const int ilu = iterations(base, "ilu_inner+osrc_surface");
  const int perm = iterations(permuted, "ilu_inner+osrc_surface");
  out.Check(2 * ilu <= none, "ilu_inner+osrc_surface " + std::to_string(ilu) +
                                 " <= 0.5 x unpreconditioned " + std::to_string(none));
  out.Check(perm <= ilu,
            "permuted alt_reg " + std::to_string(perm) + " <= base " + std::to_string(ilu));
}

//
// 5. Calderon projector, Dirichlet-to-Neumann maps and jump relations.
//
struct Operators
{
  CMatrix v, k, t, d, m;
};

Operators AssembleAll(const Surface &s, double k)
{
  const auto ops = AssembleBoundaryOperators(
      s, s, k,
      {{BK::SingleLayer, SK::SurfaceP1, SK::SurfaceP1},
       {BK::DoubleLayer, SK::SurfaceP1, SK::SurfaceP1},
       {BK::AdjointDoubleLayer, SK::SurfaceP1, SK::SurfaceP1},
       {BK::Hypersingular, SK::SurfaceP1, SK::SurfaceP1}});
  const Eigen::MatrixXd m(AssembleSurfaceMass(s, SK::SurfaceP1, SK::SurfaceP1));
  return {ops[0], ops[1], ops[2], ops[3], m.cast<Complex>()};
}

void Calderon(Outcome &out)
{
  std::vector<double> proj;
  Surface finest;
  for (int n : {2, 4, 6})
  {
    finest = ExtractSurface(BuildCubeMesh(n), 0);
    const Operators op = AssembleAll(finest, 2.0);
    const Index N = finest.NumNodes();
    const CMatrix minv = op.m.inverse();
    CMatrix p(2 * N, 2 * N);
    p.topLeftCorner(N, N) = minv * (op.k + 0.5 * op.m);
    p.topRightCorner(N, N) = -minv * op.v;
    p.bottomLeftCorner(N, N) = -minv * op.d;
    p.bottomRightCorner(N, N) = minv * (0.5 * op.m - op.t);
    proj.push_back((p * p - p).norm() / p.norm());
    Note("cube surface " + std::to_string(n) + ": |P^2 - P|/|P| = " + Fmt(proj.back()));
  }
  out.Check(Decreasing(proj), "projector defect decreasing (" + List(proj) + ")");

  // Exterior Neumann data of a radiating point source from its Dirichlet data.
  const double k = 1.5;
  const PointSource src{Vec3(0.1, -0.2, 0.15), k};
  std::vector<std::vector<double>> dtn(3);
  for (int n : {4, 6, 8})
  {
    const Surface s = ExtractSurface(BuildBallMesh(n), 0);
    const Operators op = AssembleAll(s, k);
    const Index N = s.NumNodes();
    CVector g(N), exact(N);
    for (Index i = 0; i < N; i++)
    {
      g[i] = src.Value(s.nodes[i]);
      exact[i] = src.NormalDerivative(s.nodes[i], s.nodes[i].normalized());
    }
    const CVector l1 = op.v.partialPivLu().solve((op.k - 0.5 * op.m) * g);
    const CVector l2 = -(0.5 * op.m + op.t).partialPivLu().solve(op.d * g);
    const CVector l3 = op.m.ldlt().solve(-op.d * g + (0.5 * op.m - op.t) * l1);
    auto error = [&](const CVector &u)
    {
      const CVector e = u - exact;
      return std::sqrt(std::abs(e.dot(op.m * e)) / std::abs(exact.dot(op.m * exact)));
    };
    dtn[0].push_back(error(l1));
    dtn[1].push_back(error(l2));
    dtn[2].push_back(error(l3));
    Note("ball surface " + std::to_string(n) + " (" + std::to_string(N) +
         " nodes): DtN errors " + Percent(dtn[0].back()) + ", " + Percent(dtn[1].back()) +
         ", " + Percent(dtn[2].back()));
  }
  for (int i = 0; i < 3; i++)
  {
    out.Check(Decreasing(dtn[i]) && dtn[i].back() < 0.05,
              "DtN expression " + std::to_string(i + 1) + " error decreasing (" +
                  List(dtn[i], true) + ")");
  }

  // Jumps across the finest surface at triangle centroids, from the pair of points at
  // distance h and h/2 on either side and a linear extrapolation to h = 0.
  const PointSource smooth{Vec3(0.45, 0.5, 0.55), 2.0};
  CVector phi(finest.NumNodes());
  for (Index i = 0; i < finest.NumNodes(); i++)
  {
    phi[i] = smooth.Value(finest.nodes[i]);
  }
  PotentialOptions po;
  po.guard = false;
  po.adaptive = true;
  double dl_worst = 0.0, sl_worst = 0.0;
  for (Index t : {Index(5), finest.NumTriangles() / 3, finest.NumTriangles() - 7})
  {
    const Vec3 c = finest.Centroid(t), n = finest.normals[t];
    const auto &tri = finest.triangles[t];
    const Complex value = (phi[tri[0]] + phi[tri[1]] + phi[tri[2]]) / 3.0;
    auto jump = [&](double h, bool double_layer)
    {
      const std::vector<Vec3> pts = {c + h * n, c - h * n};
      const CVector u = double_layer
                            ? EvaluatePotentials(finest, 2.0, phi, CVector(), SK::SurfaceP1, pts, po)
                            : EvaluatePotentials(finest, 2.0, CVector(), phi, SK::SurfaceP1, pts, po);
      return std::pair<Complex, Complex>(u[0] - u[1], u[0]);
    };
    const double h = 0.05 * finest.max_diameter;
    const auto [dl1, dl_outer1] = jump(h, true);
    const auto [dl2, dl_outer2] = jump(0.5 * h, true);
    const auto [sl1, sl_outer1] = jump(h, false);
    const auto [sl2, sl_outer2] = jump(0.5 * h, false);
    const Complex dl = 2.0 * dl2 - dl1, sl = 2.0 * sl2 - sl1;
    dl_worst = std::max(dl_worst, std::abs(dl - value) / std::abs(value));
    sl_worst = std::max(sl_worst, std::abs(sl) / std::abs(sl_outer2));
  }
  Note("jump relations on cube surface 6: double layer " + Percent(dl_worst) +
       ", single layer " + Percent(sl_worst));
  out.Check(dl_worst < 0.05, "double layer jump error " + Percent(dl_worst) + " < 5%");
  out.Check(sl_worst < 0.05, "single layer jump " + Percent(sl_worst) + " < 5%");
}

//
// 6. Regulariser properties and the square root approximant.
//
void Regularisers(Outcome &out)
{
  const double k = 4.0;
  const Surface s = ExtractSurface(BuildCubeMesh(4), 0);
  const SurfaceLaplacian lb = AssembleSurfaceLaplacian(s);
  for (double kappa : {0.5, 1.0, k})
  {
    const Eigen::MatrixXd a(AssembleRegulariserForm(RegulariserKind::ShiftedLaplace, kappa, lb));
    const double asym = (a - a.transpose()).norm() / a.norm();
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues()(0);
    out.Check(asym <= 1e-14 && lmin > 0.0, "kappa " + Fmt(kappa) + ": asymmetry " + Fmt(asym) +
                                               ", min eigenvalue " + Fmt(lmin) + " > 0");
  }

  auto fact = std::make_shared<OsrcFactorization>(s, k, OsrcConfig{});
  const OsrcOperator ntd(OsrcKind::NtD, 1.0, fact);
  const CMatrix m = Eigen::MatrixXd(lb.mass).cast<Complex>();
  std::mt19937 rng(17);
  std::normal_distribution<double> g;
  int positive = 0;
  double smallest = 1e300;
  for (int trial = 0; trial < 100; trial++)
  {
    CVector psi(s.NumNodes());
    for (Index i = 0; i < psi.size(); i++)
    {
      psi[i] = Complex(g(rng), g(rng));
    }
    psi.array() -= psi.mean();
    const double q = psi.dot(m * (-ntd.Apply(psi))).real();
    positive += q > 0.0;
    smallest = std::min(smallest, q / psi.squaredNorm());
  }
  out.Check(positive == 100, "OSRC sign test " + std::to_string(positive) +
                                 "/100 positive (smallest normalised value " + Fmt(smallest) +
                                 ")");

  const PadeCoefficients pade = PadeSqrtCoefficients(2, pi / 3.0);
  double worst = 0.0, where = 0.0;
  for (int i = 0; i <= 1000; i++)
  {
    const double z = 0.01 * i;
    const double e = std::abs(pade.Evaluate(z) - std::sqrt(1.0 + z)) / std::sqrt(1.0 + z);
    if (e > worst)
    {
      worst = e;
      where = z;
    }
  }
  out.Check(worst < 0.05, "Pade order 2, branch pi/3: max relative error " + Percent(worst) +
                              " at z = " + Fmt(where) + " on [0, 10] < 5%");
}

//
// 7. Multi-domain system.
//
void Multidomain(Outcome &out)
{
  MaterialModel one;
  one.Set(0, Homogeneous(1.3));
  {
    const Mesh mesh = BuildCubeMesh(4);
    const IncidentWave wave{kDirection, 4.0};
    const FormulationSystem a = BuildStabilised(Scene{mesh, one, wave}, {});
    const FormulationSystem b = BuildMultidomain(Scene{mesh, one, wave}, {});
    const CMatrix da = a.lhs.ToDense();
    const double dm = (da - b.lhs.ToDense()).norm() / da.norm();
    const double dr = (a.rhs - b.rhs).norm() / a.rhs.norm();
    out.Check(dm <= 1e-14 && dr <= 1e-14,
              "one domain: matrix difference " + Fmt(dm) + ", rhs difference " + Fmt(dr));
  }

  const double k = 4.0;
  const double gap = 4.0 * 2.0 * pi / k;
  const IncidentWave wave{kDirection, k};
  const std::vector<Mesh> bodies = {BuildCubeMesh(6), BuildCubeMesh(6, Vec3(1.0 + gap, 0.0, 0.0))};
  const Mesh pair = MergeMeshes(bodies);
  MaterialModel both;
  for (int d : pair.Domains())
  {
    both.Set(d, Homogeneous(1.3));
  }
  const FormulationSystem sys = BuildMultidomain(Scene{pair, both, wave}, {});
  const CVector x = DirectSolve(sys.lhs, sys.rhs);
  double worst = 0.0;
  for (std::size_t i = 0; i < bodies.size(); i++)
  {
    const FormulationSystem single = BuildStabilised(Scene{bodies[i], one, wave}, {});
    const CVector y = DirectSolve(single.lhs, single.rhs);
    const double e = RelativeError(SurfaceTrace(sys, x, static_cast<int>(i)),
                                   SurfaceTrace(single, y, 0));
    Note("body " + std::to_string(i) + ": trace difference to the isolated body " + Percent(e));
    worst = std::max(worst, e);
  }
  out.Check(worst < 0.1, "two cubes " + Fmt(gap) + " apart: largest trace difference " +
                             Percent(worst) + " < 10%");
}

//
// 8. Built-in defaults.
//
void Defaults(Outcome &out)
{
  for (const SelfTestCheck &c : RunSelfTest())
  {
    out.Check(c.passed, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
}

struct Criterion
{
  std::string title;
  std::function<void(Outcome &)> run;
  double budget_s;
};

}  // namespace

int main(int argc, char **argv)
{
  const std::map<int, Criterion> criteria = {
      {1, {"transparent cube", TransparentCube, 120.0}},
      {2, {"penetrable sphere", Sphere, 300.0}},
      {3, {"resonance robustness", Resonance, 900.0}},
      {4, {"preconditioning", Preconditioning, 0.0}},
      {5, {"Calderon and DtN", Calderon, 300.0}},
      {6, {"regularisers", Regularisers, 60.0}},
      {7, {"multi-domain", Multidomain, 600.0}},
      {8, {"defaults", Defaults, 1.0}}};

  std::vector<int> selected;
  for (int i = 1; i < argc; i++)
  {
    const int id = std::atoi(argv[i]);
    if (!criteria.count(id))
    {
      std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty())
  {
    for (const auto &[id, c] : criteria)
    {
      selected.push_back(id);
    }
  }

  int failures = 0;
  for (int id : selected)
  {
    const Criterion &c = criteria.at(id);
    std::printf("criterion %d (%s)\n", id, c.title.c_str());
    std::fflush(stdout);
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try
    {
      c.run(out);
    }
    catch (const std::exception &e)
    {
      out.Check(false, std::string("exception: ") + e.what());
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Wall time is reported against the reference budget but does not decide the verdict.
    std::string time = "wall time " + Fmt(wall) + " s";
    if (c.budget_s > 0.0)
    {
      time += " (reference budget " + Fmt(c.budget_s) + " s)";
    }
    std::printf("%s criterion %d: %s%s\n", out.pass ? "PASS" : "FAIL", id,
                out.detail.str().c_str(), time.c_str());
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
