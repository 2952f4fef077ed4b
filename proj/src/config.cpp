// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fembem
{

using Json = nlohmann::json;

namespace
{

// Object reader that rejects unknown keys and wrong types with the key path in the message.
class Reader
{
public:
  Reader(const Json &j, std::string path) : j_(j), path_(std::move(path))
  {
    FEMBEM_VERIFY(j_.is_object(), "config: ", path_, " must be an object");
  }

  template <typename T>
  void Get(const std::string &key, T &value)
  {
    seen_.insert(key);
    if (!j_.contains(key))
    {
      return;
    }
    try
    {
      value = j_.at(key).get<T>();
    }
    catch (const Json::exception &)
    {
      throw InvalidArgument(detail::Concat("config: ", path_, ".", key, " has the wrong type"));
    }
  }

  void GetVec3(const std::string &key, Vec3 &value)
  {
    std::vector<double> v;
    Get(key, v);
    if (j_.contains(key))
    {
      FEMBEM_VERIFY(v.size() == 3, "config: ", path_, ".", key, " needs 3 components");
      value = Vec3(v[0], v[1], v[2]);
    }
  }

  std::optional<Reader> Child(const std::string &key)
  {
    seen_.insert(key);
    if (!j_.contains(key))
    {
      return std::nullopt;
    }
    return Reader(j_.at(key), path_ + "." + key);
  }

  const Json &Raw(const std::string &key)
  {
    seen_.insert(key);
    return j_.at(key);
  }

  bool Has(const std::string &key) const { return j_.contains(key); }

  void Finish() const
  {
    for (const auto &[key, value] : j_.items())
    {
      FEMBEM_VERIFY(seen_.count(key), "config: unknown key ", path_, ".", key);
    }
  }

private:
  const Json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

GridEntry ReadEntry(const Json &j, const std::string &path)
{
  GridEntry e;
  Reader r(j, path);
  r.Get("formulation", e.formulation);
  r.Get("variant", e.variant);
  r.Get("regulariser", e.regulariser);
  r.Get("eta", e.eta);
  r.Get("nu", e.nu);
  r.Get("kappa", e.kappa);
  r.Get("theta_space", e.theta_space);
  r.Get("permuted", e.permuted);
  r.Get("preconditioner", e.preconditioner);
  r.Finish();
  return e;
}

Json EntryJson(const GridEntry &e)
{
  return Json{{"formulation", e.formulation}, {"variant", e.variant},
              {"regulariser", e.regulariser}, {"eta", e.eta},
              {"nu", e.nu},                   {"kappa", e.kappa},
              {"theta_space", e.theta_space}, {"permuted", e.permuted},
              {"preconditioner", e.preconditioner}};
}

SpaceKind ParseThetaSpace(const std::string &name)
{
  if (name == "P1")
  {
    return SpaceKind::SurfaceP1;
  }
  if (name == "P0")
  {
    return SpaceKind::SurfaceP0;
  }
  throw InvalidArgument("unknown theta space \"" + name + "\" (expected P0 or P1)");
}

}  // namespace

std::string GridEntry::VariantLabel() const
{
  std::string label = formulation == "stabilised" || formulation == "multidomain"
                          ? regulariser + "/" + variant
                          : std::string("-");
  if (permuted)
  {
    label += "/permuted";
  }
  if (nu != 0.0)
  {
    label += "/nu=" + detail::Concat(nu);
  }
  if (theta_space != "P1")
  {
    label += "/" + theta_space;
  }
  return label;
}

RunConfig RunConfig::Parse(const std::string &json_text)
{
  Json j;
  try
  {
    j = Json::parse(json_text);
  }
  catch (const Json::parse_error &e)
  {
    throw InvalidArgument(detail::Concat("config: invalid JSON: ", e.what()));
  }
  RunConfig c;
  Reader r(j, "config");
  r.Get("schema", c.schema);
  FEMBEM_VERIFY(c.schema == kConfigSchema, "config: schema \"", c.schema, "\" is not \"",
                kConfigSchema, "\"");
  if (auto g = r.Child("geometry"))
  {
    g->Get("kind", c.geometry.kind);
    g->Get("subdivisions", c.geometry.subdivisions);
    g->Get("edge_length", c.geometry.edge_length);
    g->Get("radius", c.geometry.radius);
    g->Get("gap", c.geometry.gap);
    g->Get("msh_path", c.geometry.msh_path);
    g->Finish();
  }
  if (auto m = r.Child("material"))
  {
    m->Get("refractivity", c.material.refractivity);
    m->Get("refractivity_value", c.material.refractivity_value);
    m->Get("density", c.material.density);
    m->Get("exterior_density", c.material.exterior_density);
    m->Finish();
  }
  if (auto w = r.Child("wave"))
  {
    w->Get("k", c.wave.k);
    w->GetVec3("direction", c.wave.direction);
    w->Finish();
  }
  if (r.Has("grid"))
  {
    const Json &g = r.Raw("grid");
    FEMBEM_VERIFY(g.is_array(), "config: grid must be an array");
    c.grid.clear();
    for (std::size_t i = 0; i < g.size(); i++)
    {
      c.grid.push_back(ReadEntry(g[i], detail::Concat("config.grid[", i, "]")));
    }
  }
  if (auto s = r.Child("solver"))
  {
    s->Get("method", c.solver.method);
    s->Get("tol", c.solver.tol);
    s->Get("max_iter", c.solver.max_iter);
    s->Get("restart", c.solver.restart);
    s->Get("drop_tol", c.solver.drop_tol);
    s->Get("preconditioner", c.solver.preconditioner);
    s->Finish();
  }
  if (auto o = r.Child("osrc"))
  {
    o->Get("pade_order", c.osrc.pade_order);
    o->Get("branch_angle", c.osrc.branch_angle);
    o->Get("damping", c.osrc.damping);
    o->Get("characteristic_length", c.osrc.characteristic_length);
    o->Finish();
  }
  if (auto q = r.Child("quadrature"))
  {
    q->Get("singular_order", c.quadrature.singular_order);
    q->Get("regular_order", c.quadrature.regular_order);
    q->Get("far_order", c.quadrature.far_order);
    q->Get("far_distance", c.quadrature.far_distance);
    q->Finish();
  }
  if (auto s = r.Child("sweep"))
  {
    s->Get("k", c.sweep.k);
    s->Get("start", c.sweep.start);
    s->Get("stop", c.sweep.stop);
    s->Get("step", c.sweep.step);
    s->Get("preset", c.sweep.preset);
    s->Finish();
  }
  if (auto o = r.Child("output"))
  {
    o->Get("slice", c.output.slice);
    o->Get("resolution", c.output.resolution);
    o->Get("plane_z", c.output.plane_z);
    o->Get("vtk", c.output.vtk);
    o->Get("surface_vtk", c.output.surface_vtk);
    o->Finish();
  }
  r.Get("condition_numbers", c.condition_numbers);
  r.Get("condition_method", c.condition_method);
  r.Finish();
  c.Validate();
  return c;
}

RunConfig RunConfig::Load(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError(detail::Concat("cannot read config file ", path.string()));
  }
  std::ostringstream os;
  os << in.rdbuf();
  return Parse(os.str());
}

std::string RunConfig::Dump() const
{
  Json grid_json = Json::array();
  for (const auto &e : grid)
  {
    grid_json.push_back(EntryJson(e));
  }
  Json j = {
      {"schema", schema},
      {"geometry",
       {{"kind", geometry.kind},
        {"subdivisions", geometry.subdivisions},
        {"edge_length", geometry.edge_length},
        {"radius", geometry.radius},
        {"gap", geometry.gap},
        {"msh_path", geometry.msh_path}}},
      {"material",
       {{"refractivity", material.refractivity},
        {"refractivity_value", material.refractivity_value},
        {"density", material.density},
        {"exterior_density", material.exterior_density}}},
      {"wave",
       {{"k", wave.k}, {"direction", {wave.direction[0], wave.direction[1], wave.direction[2]}}}},
      {"grid", grid_json},
      {"solver",
       {{"method", solver.method},
        {"tol", solver.tol},
        {"max_iter", solver.max_iter},
        {"restart", solver.restart},
        {"drop_tol", solver.drop_tol},
        {"preconditioner", solver.preconditioner}}},
      {"osrc",
       {{"pade_order", osrc.pade_order},
        {"branch_angle", osrc.branch_angle},
        {"damping", osrc.damping},
        {"characteristic_length", osrc.characteristic_length}}},
      {"quadrature",
       {{"singular_order", quadrature.singular_order},
        {"regular_order", quadrature.regular_order},
        {"far_order", quadrature.far_order},
        {"far_distance", quadrature.far_distance}}},
      {"sweep",
       {{"k", sweep.k},
        {"start", sweep.start},
        {"stop", sweep.stop},
        {"step", sweep.step},
        {"preset", sweep.preset}}},
      {"output",
       {{"slice", output.slice},
        {"resolution", output.resolution},
        {"plane_z", output.plane_z},
        {"vtk", output.vtk},
        {"surface_vtk", output.surface_vtk}}},
      {"condition_numbers", condition_numbers},
      {"condition_method", condition_method}};
  return j.dump(2);
}

void RunConfig::Validate() const
{
  FEMBEM_VERIFY(schema == kConfigSchema, "config: schema \"", schema, "\" is not \"",
                kConfigSchema, "\"");
  const auto &g = geometry;
  FEMBEM_VERIFY(g.kind == "cube" || g.kind == "sphere" || g.kind == "two_cubes" ||
                    g.kind == "msh",
                "config: geometry.kind must be cube, sphere, two_cubes or msh, got \"", g.kind,
                "\"");
  FEMBEM_VERIFY(g.subdivisions >= 1, "config: geometry.subdivisions must be >= 1");
  FEMBEM_VERIFY(g.edge_length > 0.0 && g.radius > 0.0, "config: geometry sizes must be > 0");
  FEMBEM_VERIFY(g.kind != "two_cubes" || g.gap > 0.0, "config: geometry.gap must be > 0");
  FEMBEM_VERIFY(g.kind != "msh" || !g.msh_path.empty(), "config: geometry.msh_path is empty");
  FEMBEM_VERIFY(material.refractivity == "benchmark" || material.refractivity == "constant",
                "config: material.refractivity must be benchmark or constant");
  FEMBEM_VERIFY(material.refractivity_value > 0.0 && material.density > 0.0 &&
                    material.exterior_density > 0.0,
                "config: material values must be > 0");
  IncidentWave{wave.direction, wave.k}.Validate();
  FEMBEM_VERIFY(solver.method == "gmres" || solver.method == "direct",
                "config: solver.method must be gmres or direct");
  FEMBEM_VERIFY(solver.tol > 0.0 && solver.max_iter >= 1, "config: solver.tol must be > 0 ",
                "and solver.max_iter >= 1");
  FEMBEM_VERIFY(!solver.restart, "config: restarted GMRES is not supported");
  FEMBEM_VERIFY(solver.drop_tol >= 0.0, "config: solver.drop_tol must be >= 0");
  osrc.Validate();
  quadrature.Validate();
  ParseCondMethod(condition_method);
  FEMBEM_VERIFY(output.resolution >= 2, "config: output.resolution must be >= 2");
  FEMBEM_VERIFY(sweep.preset.empty() || sweep.preset == "resonance",
                "config: sweep.preset must be empty or resonance");
  FEMBEM_VERIFY(sweep.step >= 0.0, "config: sweep.step must be >= 0");
  FEMBEM_VERIFY(!grid.empty(), "config: grid is empty");
  for (const auto &e : grid)
  {
    ValidateEntry(*this, e);
  }
}

Mesh BuildGeometry(const GeometryConfig &g)
{
  if (g.kind == "cube")
  {
    return BuildCubeMesh(g.subdivisions, Vec3::Zero(), g.edge_length);
  }
  if (g.kind == "sphere")
  {
    return BuildBallMesh(g.subdivisions, Vec3::Zero(), g.radius);
  }
  if (g.kind == "two_cubes")
  {
    return MergeMeshes(
        {BuildCubeMesh(g.subdivisions, Vec3::Zero(), g.edge_length),
         BuildCubeMesh(g.subdivisions, Vec3(g.edge_length + g.gap, 0.0, 0.0), g.edge_length)});
  }
  if (g.kind == "msh")
  {
    return ImportMsh(g.msh_path);
  }
  throw InvalidArgument("unknown geometry kind \"" + g.kind + "\"");
}

MaterialModel BuildMaterials(const RunConfig &config, const Mesh &mesh)
{
  MaterialModel model;
  const auto &m = config.material;
  for (int id : mesh.Domains())
  {
    DomainMaterial mat;
    mat.density = ScalarField(m.density);
    if (m.refractivity == "constant")
    {
      mat.refractivity = ScalarField(m.refractivity_value);
    }
    else
    {
      // The benchmark profile on the unit cube, mapped onto the domain's bounding box.
      Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
      for (std::size_t t = 0; t < mesh.tetrahedra.size(); t++)
      {
        if (mesh.tet_domain[t] != id)
        {
          continue;
        }
        for (int v : mesh.tetrahedra[t])
        {
          lo = lo.cwiseMin(mesh.vertices[v]);
          hi = hi.cwiseMax(mesh.vertices[v]);
        }
      }
      const Vec3 scale = (hi - lo).cwiseInverse();
      mat.refractivity = ScalarField(
          [lo, scale](const Vec3 &x)
          { return BenchmarkRefractivity(Vec3((x - lo).cwiseProduct(scale))); },
          [lo, scale](const Vec3 &x)
          {
            return Vec3(
                BenchmarkRefractivityGradient(Vec3((x - lo).cwiseProduct(scale))).cwiseProduct(
                    scale));
          });
    }
    model.Set(id, std::move(mat));
  }
  return model;
}

IncidentWave BuildWave(const RunConfig &config, double k)
{
  IncidentWave w;
  w.direction = config.wave.direction;
  w.k = k;
  w.Validate();
  return w;
}

FormulationKind EntryKind(const GridEntry &entry)
{
  return ParseFormulation(entry.formulation);
}

FormulationOptions BuildOptions(const RunConfig &config, const GridEntry &entry)
{
  FormulationOptions o;
  o.theta_space = ParseThetaSpace(entry.theta_space);
  o.regulariser = ParseRegulariser(entry.regulariser);
  o.kappa = entry.kappa;
  o.eta = entry.eta;
  o.nu = entry.nu;
  o.variant = ParseVariant(entry.variant);
  o.permuted = entry.permuted;
  o.exterior_density = config.material.exterior_density;
  o.osrc = config.osrc;
  o.quadrature = config.quadrature;
  return o;
}

PreconditionerRecipe BuildRecipe(const RunConfig &config, const GridEntry &entry)
{
  PreconditionerRecipe r = PreconditionerRecipe::Preset(
      entry.preconditioner.empty() ? config.solver.preconditioner : entry.preconditioner);
  r.drop_tol = config.solver.drop_tol;
  return r;
}

void ValidateEntry(const RunConfig &config, const GridEntry &entry)
{
  const FormulationKind kind = EntryKind(entry);
  const FormulationOptions o = BuildOptions(config, entry);
  o.Validate(kind);
  const PreconditionerRecipe r = BuildRecipe(config, entry);
  if (config.solver.method == "gmres" && o.theta_space == SpaceKind::SurfaceP0 &&
      r.surface != PrecondChoice::None)
  {
    throw InvalidArgument("preconditioner " + r.name +
                          " needs P1-P1 boundary spaces: with P0-P1 the mass matrix is "
                          "rectangular");
  }
  FEMBEM_VERIFY(kind == FormulationKind::Multidomain || config.geometry.kind != "two_cubes",
                "geometry two_cubes needs the multidomain formulation");
}

Index CountUnknowns(const Mesh &mesh, const GridEntry &entry)
{
  const FormulationKind kind = EntryKind(entry);
  const bool p0 = ParseThetaSpace(entry.theta_space) == SpaceKind::SurfaceP0;
  Index total = 0;
  for (int id : mesh.Domains())
  {
    std::set<int> vol, surf;
    Index tris = 0;
    for (std::size_t t = 0; t < mesh.tetrahedra.size(); t++)
    {
      if (mesh.tet_domain[t] == id)
      {
        vol.insert(mesh.tetrahedra[t].begin(), mesh.tetrahedra[t].end());
      }
    }
    for (std::size_t t = 0; t < mesh.surface_triangles.size(); t++)
    {
      if (mesh.triangle_domain[t] == id)
      {
        surf.insert(mesh.surface_triangles[t].begin(), mesh.surface_triangles[t].end());
        tris++;
      }
    }
    const Index ns = static_cast<Index>(surf.size());
    total += static_cast<Index>(vol.size()) + (p0 ? tris : ns);
    if (kind == FormulationKind::Stabilised || kind == FormulationKind::Multidomain)
    {
      total += ns;
    }
  }
  return total;
}

std::vector<double> ResonanceSweep()
{
  const std::vector<double> res = CubeResonanceWavenumbers(12.5);
  auto near = [&](double k)
  {
    return std::any_of(res.begin(), res.end(),
                       [&](double r) { return std::abs(k - r) <= 0.1 + 1e-12; });
  };
  std::vector<double> ks;
  double k = 4.0;
  while (k <= 12.0 + 1e-9)
  {
    ks.push_back(std::round(k * 1e6) / 1e6);
    k += near(k) || near(k + 0.25) ? 0.05 : 0.25;
  }
  return ks;
}

std::vector<double> SweepWavenumbers(const SweepConfig &sweep)
{
  if (sweep.preset == "resonance")
  {
    return ResonanceSweep();
  }
  if (!sweep.k.empty())
  {
    return sweep.k;
  }
  std::vector<double> ks;
  if (sweep.step > 0.0 && sweep.stop >= sweep.start && sweep.start > 0.0)
  {
    const int n = static_cast<int>(std::floor((sweep.stop - sweep.start) / sweep.step + 1e-9));
    for (int i = 0; i <= n; i++)
    {
      ks.push_back(sweep.start + i * sweep.step);
    }
  }
  return ks;
}

ComparePreset MakeComparePreset(const std::string &name)
{
  ComparePreset p;
  const std::string prec = "ilu_inner+osrc_surface";
  auto stab = [&](const std::string &variant, bool permuted, const std::string &pc)
  {
    GridEntry e;
    e.variant = variant;
    e.permuted = permuted;
    e.preconditioner = pc;
    return e;
  };
  if (name == "nu_study")
  {
    p.k = {6.0};
    GridEntry a = stab("base", false, prec), b = a;
    b.nu = b.eta;
    p.grid = {a, b};
  }
  else if (name == "space_study")
  {
    p.k = {8.0};
    GridEntry a = stab("base", false, "none"), b = a;
    b.theta_space = "P0";
    p.grid = {a, b};
  }
  else if (name == "osrc_prec")
  {
    p.k = {8.0};
    p.grid = {stab("base", false, "none"), stab("base", false, "mass"),
              stab("base", false, "osrc")};
  }
  else if (name == "ilu_study")
  {
    p.k = {8.0};
    p.grid = {stab("base", false, "osrc"), stab("base", false, "ilu_all"),
              stab("base", false, prec)};
  }
  else if (name == "permutation_study")
  {
    p.k = {8.0};
    for (const char *v : {"base", "alt_nu", "alt_reg"})
    {
      for (bool perm : {false, true})
      {
        p.grid.push_back(stab(v, perm, prec));
      }
    }
  }
  else
  {
    throw InvalidArgument("unknown comparison preset \"" + name +
                          "\" (expected nu_study, space_study, osrc_prec, ilu_study or "
                          "permutation_study)");
  }
  return p;
}

std::vector<SelfTestCheck> RunSelfTest()
{
  std::vector<SelfTestCheck> checks;
  auto check = [&](const std::string &name, bool ok, const std::string &detail)
  { checks.push_back({name, ok, detail}); };

  const RunConfig c;
  const GmresOptions g;
  const PreconditionerRecipe r;
  check("GMRES tolerance 1e-5", c.solver.tol == 1e-5 && g.tol == 1e-5,
        detail::Concat("config ", c.solver.tol, ", solver ", g.tol));
  check("GMRES without restart", !c.solver.restart, c.solver.restart ? "restart" : "none");
  check("ILU drop tolerance 1e-4", c.solver.drop_tol == 1e-4 && r.drop_tol == 1e-4,
        detail::Concat("config ", c.solver.drop_tol, ", recipe ", r.drop_tol));
  check("Pade order 2", c.osrc.pade_order == 2, detail::Concat(c.osrc.pade_order));
  check("branch angle pi/3", c.osrc.branch_angle == pi / 3.0,
        detail::Concat(c.osrc.branch_angle));
  bool damping = c.osrc.damping <= 0.0;
  for (double kl : {1.0, 4.0, 12.0, 30.5})
  {
    damping = damping &&
              std::abs(DefaultDamping(kl, 1.0) - 0.4 * std::pow(kl, -2.0 / 3.0)) <= 1e-15;
  }
  check("damping 0.4 (k L)^(-2/3)", damping, "default selects the formula");

  const Mesh cube = BuildCubeMesh(13);
  const Surface s = ExtractSurface(cube, 0);
  const bool counts =
      cube.NumVertices() == 2744 && s.NumNodes() == 1016 && s.NumTriangles() == 2028;
  check("cube 13 counts 2744/1016/2028", counts,
        detail::Concat(cube.NumVertices(), "/", s.NumNodes(), "/", s.NumTriangles()));
  return checks;
}

}  // namespace fembem
