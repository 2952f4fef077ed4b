// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/formulations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "fembem/quadrature.hpp"

namespace fembem
{

std::string ToString(FormulationKind kind)
{
  switch (kind)
  {
    case FormulationKind::Standard:
      return "standard";
    case FormulationKind::Symmetric:
      return "symmetric";
    case FormulationKind::Stabilised:
      return "stabilised";
    case FormulationKind::Multidomain:
      return "multidomain";
  }
  return "?";
}

std::string ToString(StabilisedVariant variant)
{
  switch (variant)
  {
    case StabilisedVariant::Base:
      return "base";
    case StabilisedVariant::AltNu:
      return "alt_nu";
    case StabilisedVariant::AltReg:
      return "alt_reg";
  }
  return "?";
}

FormulationKind ParseFormulation(const std::string &name)
{
  for (auto kind : {FormulationKind::Standard, FormulationKind::Symmetric,
                    FormulationKind::Stabilised, FormulationKind::Multidomain})
  {
    if (ToString(kind) == name)
    {
      return kind;
    }
  }
  throw InvalidArgument("unknown formulation \"" + name +
                        "\" (expected standard, symmetric, stabilised or multidomain)");
}

StabilisedVariant ParseVariant(const std::string &name)
{
  for (auto v : {StabilisedVariant::Base, StabilisedVariant::AltNu, StabilisedVariant::AltReg})
  {
    if (ToString(v) == name)
    {
      return v;
    }
  }
  throw InvalidArgument("unknown variant \"" + name + "\" (expected base, alt_nu or alt_reg)");
}

RegulariserKind ParseRegulariser(const std::string &name)
{
  for (auto r : {RegulariserKind::ModifiedHelmholtz, RegulariserKind::ShiftedLaplace,
                 RegulariserKind::Osrc})
  {
    if (ToString(r) == name)
    {
      return r;
    }
  }
  throw InvalidArgument("unknown regulariser \"" + name + "\" (expected mh, sl or osrc)");
}

OperatorPtr BoundaryOperatorCache::Find(const Key &key) const
{
  std::lock_guard lock(mutex_);
  const auto it = blocks_.find(key);
  return it == blocks_.end() ? nullptr : it->second;
}

void BoundaryOperatorCache::Insert(const Key &key, OperatorPtr block)
{
  std::lock_guard lock(mutex_);
  blocks_[key] = std::move(block);
}

std::size_t BoundaryOperatorCache::Size() const
{
  std::lock_guard lock(mutex_);
  return blocks_.size();
}

void FormulationOptions::Validate(FormulationKind kind) const
{
  FEMBEM_VERIFY(theta_space == SpaceKind::SurfaceP0 || theta_space == SpaceKind::SurfaceP1,
                "theta space must be surface P0 or P1");
  FEMBEM_VERIFY(exterior_density > 0.0, "exterior density must be positive, got ",
                exterior_density);
  osrc.Validate();
  quadrature.Validate();
  if (kind == FormulationKind::Stabilised || kind == FormulationKind::Multidomain)
  {
    FEMBEM_VERIFY(eta != 0.0,
                  "stabilisation parameter eta must be non-zero; eta = 0 is the symmetric "
                  "formulation");
    FEMBEM_VERIFY(nu == 0.0 || nu == eta, "nu must be 0 or equal to eta, got nu = ", nu,
                  ", eta = ", eta);
    FEMBEM_VERIFY(variant != StabilisedVariant::AltReg || regulariser == RegulariserKind::Osrc,
                  "the alt_reg variant needs an explicit regulariser; ", ToString(regulariser),
                  " is only defined through its inverse");
    FEMBEM_VERIFY(!permuted || theta_space == SpaceKind::SurfaceP1,
                  "row permutation needs P1 theta (square diagonal blocks)");
  }
  if (kind == FormulationKind::Multidomain)
  {
    FEMBEM_VERIFY(nu == 0.0 && variant == StabilisedVariant::Base && !permuted,
                  "the multi-domain system supports the base variant with nu = 0 only");
  }
}

int FormulationSystem::Block(UnknownKind kind, int domain) const
{
  for (std::size_t i = 0; i < unknowns.size(); i++)
  {
    if (unknowns[i].kind == kind && unknowns[i].domain == domain)
    {
      return static_cast<int>(i);
    }
  }
  return -1;
}

CVector FormulationSystem::Segment(const CVector &x, UnknownKind kind, int domain) const
{
  const int b = Block(kind, domain);
  FEMBEM_VERIFY(b >= 0, "the system has no such unknown on domain ", domain);
  return x.segment(lhs.Offset(b), lhs.Sizes()[b]);
}

namespace
{

Index SurfaceDim(const Surface &s, SpaceKind kind)
{
  return kind == SpaceKind::SurfaceP0 ? s.NumTriangles() : s.NumNodes();
}

// Load vector <f, phi_i> of a surface function against P1 test functions.
CVector P1LoadVector(const Surface &s, const std::function<Complex(const Vec3 &, const Vec3 &)> &f)
{
  const TriangleRule rule = TriangleGauss(4);
  CVector b = CVector::Zero(s.NumNodes());
  for (Index t = 0; t < s.NumTriangles(); t++)
  {
    const auto p = s.Corners(t);
    for (std::size_t q = 0; q < rule.x.size(); q++)
    {
      const Eigen::Vector3d l = ReferenceBarycentric(rule.x[q]);
      const Vec3 x = l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
      const Complex v = f(x, s.normals[t]) * (rule.w[q] * 2.0 * s.areas[t]);
      for (int a = 0; a < 3; a++)
      {
        b[s.triangles[t][a]] += l[a] * v;
      }
    }
  }
  return b;
}

DomainData PrepareDomain(const Scene &scene, const FormulationOptions &opt, int domain)
{
  DomainData d;
  d.domain = domain;
  d.surface = ExtractSurface(scene.mesh, domain);
  d.maps = BuildRestrictions(scene.mesh, domain);
  d.volume = ExtractVolume(scene.mesh, domain);
  d.fem = AssembleFem(scene.mesh, scene.materials, scene.wave.k, domain, opt.exec).matrix;
  d.laplacian = AssembleSurfaceLaplacian(d.surface);
  d.mass_p1 = d.laplacian.mass;
  d.mass_theta_p1 = AssembleSurfaceMass(d.surface, opt.theta_space, SpaceKind::SurfaceP1);
  const DomainMaterial &mat = scene.materials.Get(domain);
  d.density_ratio.resize(d.surface.NumNodes());
  d.incident_dirichlet.resize(d.surface.NumNodes());
  for (Index i = 0; i < d.surface.NumNodes(); i++)
  {
    const Vec3 &x = d.surface.nodes[i];
    scene.materials.CheckPositive(domain, x);
    d.density_ratio[i] = mat.density.Value(x) / opt.exterior_density;
    d.incident_dirichlet[i] = scene.wave.Value(x);
  }
  d.incident_neumann = P1LoadVector(d.surface, [&](const Vec3 &x, const Vec3 &n)
                                    { return scene.wave.NormalDerivative(x, n); });
  return d;
}

using Key = std::tuple<int, int, int>;

// Boundary operator blocks between pairs of surfaces, assembled on demand in one sweep per
// surface pair.
class BoundaryBlocks
{
public:
  BoundaryBlocks(const std::vector<DomainData> &domains, double k, const FormulationOptions &opt)
    : domains_(domains), k_(k), opt_(opt)
  {
  }

  void Require(std::size_t m, std::size_t n, BoundaryOperatorKind kind, SpaceKind test,
               SpaceKind trial)
  {
    pending_[{m, n}].push_back({kind, test, trial});
  }

  void Assemble()
  {
    for (auto &[pair, requests] : pending_)
    {
      std::vector<BoundaryRequest> todo;
      for (const auto &r : requests)
      {
        const Key key = KeyOf(r);
        const bool dup = std::any_of(todo.begin(), todo.end(),
                                     [&](const BoundaryRequest &o) { return KeyOf(o) == key; });
        if (store_[pair].count(key) || dup)
        {
          continue;
        }
        if (opt_.cache)
        {
          if (OperatorPtr hit = opt_.cache->Find(CacheKey(pair, r)))
          {
            store_[pair][key] = std::move(hit);
            continue;
          }
        }
        todo.push_back(r);
      }
      if (todo.empty())
      {
        continue;
      }
      auto mats = AssembleBoundaryOperators(domains_[pair.first].surface,
                                            domains_[pair.second].surface, k_, todo,
                                            opt_.quadrature, opt_.exec);
      for (std::size_t i = 0; i < todo.size(); i++)
      {
        OperatorPtr block = MakeDense(std::move(mats[i]));
        if (opt_.cache)
        {
          opt_.cache->Insert(CacheKey(pair, todo[i]), block);
        }
        store_[pair][KeyOf(todo[i])] = std::move(block);
      }
    }
    pending_.clear();
  }

  OperatorPtr Get(std::size_t m, std::size_t n, BoundaryOperatorKind kind, SpaceKind test,
                  SpaceKind trial) const
  {
    const auto &blocks = store_.at({m, n});
    return blocks.at(KeyOf({kind, test, trial}));
  }

private:
  static Key KeyOf(const BoundaryRequest &r)
  {
    return {static_cast<int>(r.kind), static_cast<int>(r.test), static_cast<int>(r.trial)};
  }

  BoundaryOperatorCache::Key CacheKey(const std::pair<std::size_t, std::size_t> &pair,
                                      const BoundaryRequest &r) const
  {
    return {k_, domains_[pair.first].domain, domains_[pair.second].domain,
            static_cast<int>(r.kind), static_cast<int>(r.test), static_cast<int>(r.trial)};
  }

  const std::vector<DomainData> &domains_;
  double k_;
  const FormulationOptions &opt_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<BoundaryRequest>> pending_;
  std::map<std::pair<std::size_t, std::size_t>, std::map<Key, OperatorPtr>> store_;
};

using Op = BoundaryOperatorKind;
constexpr SpaceKind P1 = SpaceKind::SurfaceP1;

// Trace map Z and its density-weighted transpose Z^T diag(r).
struct Traces
{
  OperatorPtr z, ztr;
};

Traces MakeTraces(const DomainData &d)
{
  Traces t;
  t.z = MakeSparse(d.maps.Z);
  RSparse zt = d.maps.Z.transpose();
  zt = zt * d.density_ratio.asDiagonal();
  t.ztr = MakeSparse(zt);
  return t;
}

std::vector<DomainData> PrepareDomains(const Scene &scene, const FormulationOptions &opt,
                                       bool single)
{
  const auto ids = scene.mesh.Domains();
  FEMBEM_VERIFY(!ids.empty(), "mesh has no domains");
  FEMBEM_VERIFY(!single || ids.size() == 1, "this formulation needs a single domain, got ",
                ids.size());
  std::vector<DomainData> domains;
  for (int id : ids)
  {
    domains.push_back(PrepareDomain(scene, opt, id));
  }
  return domains;
}

void CheckWave(const Scene &scene)
{
  scene.wave.Validate();
}

std::shared_ptr<const OsrcFactorization> OsrcFor(const DomainData &d, double k,
                                                 const FormulationOptions &opt)
{
  return std::make_shared<OsrcFactorization>(d.surface, k, opt.osrc);
}

// Stabilised system for any number of domains with per-domain [p, theta, Sigma] blocks.
FormulationSystem BuildStabilisedSystem(const Scene &scene, const FormulationOptions &opt,
                                        FormulationKind kind)
{
  opt.Validate(kind);
  CheckWave(scene);
  const double k = scene.wave.k;
  FormulationSystem sys;
  sys.kind = kind;
  sys.options = opt;
  sys.k = k;
  sys.domains = PrepareDomains(scene, opt, kind != FormulationKind::Multidomain);
  if (sys.domains.size() > 1)
  {
    CheckDisjointDomains(scene.mesh);
  }
  const std::size_t nd = sys.domains.size();
  const SpaceKind th = opt.theta_space;
  const Complex inu = iu * opt.nu, ieta = iu * opt.eta;
  const bool use_nu = opt.nu != 0.0 && opt.variant == StabilisedVariant::Base;

  BoundaryBlocks bem(sys.domains, k, opt);
  for (std::size_t m = 0; m < nd; m++)
  {
    for (std::size_t n = 0; n < nd; n++)
    {
      bem.Require(m, n, Op::SingleLayer, th, th);
      bem.Require(m, n, Op::DoubleLayer, th, P1);
      bem.Require(m, n, Op::AdjointDoubleLayer, P1, th);
      bem.Require(m, n, Op::Hypersingular, P1, P1);
    }
    if (use_nu)
    {
      bem.Require(m, m, Op::DoubleLayer, P1, P1);
      bem.Require(m, m, Op::SingleLayer, P1, th);
    }
  }
  bem.Assemble();

  std::vector<SpaceTag> layout;
  std::vector<Index> sizes;
  for (const auto &d : sys.domains)
  {
    sys.unknowns.push_back({UnknownKind::Pressure, d.domain, {SpaceKind::VolumeP1, d.domain}});
    sys.unknowns.push_back({UnknownKind::Theta, d.domain, {th, d.domain}});
    sys.unknowns.push_back({UnknownKind::Sigma, d.domain, {P1, d.domain}});
    sizes.push_back(d.volume.NumDofs());
    sizes.push_back(SurfaceDim(d.surface, th));
    sizes.push_back(d.surface.NumNodes());
  }
  for (const auto &u : sys.unknowns)
  {
    layout.push_back(u.space);
  }
  BlockOperator a(layout, sizes);
  CVector rhs = CVector::Zero(a.Rows());

  for (std::size_t m = 0; m < nd; m++)
  {
    DomainData &dm = sys.domains[m];
    const Traces tm = MakeTraces(dm);
    const std::size_t rp = 3 * m, rt = rp + 1, rs = rp + 2;
    const OperatorPtr mass_p1 = MakeSparse(dm.mass_p1);
    const OperatorPtr mass_tp = MakeSparse(dm.mass_theta_p1);
    const RSparse mass_pt_r = dm.mass_theta_p1.transpose();
    const OperatorPtr mass_pt = MakeSparse(mass_pt_r);
    const OperatorPtr v = bem.Get(m, m, Op::SingleLayer, th, th);
    const OperatorPtr kk = bem.Get(m, m, Op::DoubleLayer, th, P1);
    const OperatorPtr t = bem.Get(m, m, Op::AdjointDoubleLayer, P1, th);
    const OperatorPtr d = bem.Get(m, m, Op::Hypersingular, P1, P1);
    const CVector &g = dm.incident_dirichlet;

    // Regulariser: S for the base forms, the explicit R for alt_reg.
    OperatorPtr s, reg;
    if (opt.regulariser == RegulariserKind::Osrc)
    {
      dm.osrc = OsrcFor(dm, k, opt);
      s = MakeProduct({mass_p1, MakeOsrc(OsrcOperator(OsrcKind::DtN, -1.0, dm.osrc))});
      reg = MakeOsrc(OsrcOperator(OsrcKind::NtD, -1.0, dm.osrc));
    }
    else
    {
      const double kappa = opt.kappa > 0.0 ? opt.kappa : k;
      s = MakeSparse(AssembleRegulariserForm(opt.regulariser, kappa, dm.laplacian));
    }

    // Row of the pressure unknown.
    std::vector<std::pair<Complex, OperatorPtr>> bd{{1.0, d}};
    std::vector<std::pair<Complex, OperatorPtr>> bt{{1.0, t}, {-0.5, mass_pt}};
    CVector row1 = d->Apply(g);
    if (use_nu)
    {
      const OperatorPtr k11 = bem.Get(m, m, Op::DoubleLayer, P1, P1);
      const OperatorPtr v11 = bem.Get(m, m, Op::SingleLayer, P1, th);
      bd.push_back({0.5 * inu, mass_p1});
      bd.push_back({-inu, k11});
      bt.push_back({inu, v11});
      row1 += inu * (0.5 * mass_p1->Apply(g) - k11->Apply(g));
    }
    a.Set(rp, rp, MakeSum({{1.0, MakeSparse(dm.fem)},
                           {1.0, MakeProduct({tm.ztr, MakeSum(bd), tm.z})}}));
    a.Set(rp, rt, MakeProduct({tm.ztr, MakeSum(bt)}));
    if (opt.variant == StabilisedVariant::AltNu && opt.nu != 0.0)
    {
      a.Set(rp, rs, Scale(opt.nu * opt.eta, MakeProduct({tm.ztr, mass_p1})));
    }
    else if (opt.variant == StabilisedVariant::AltReg && opt.nu != 0.0)
    {
      a.Set(rp, rs, Scale(opt.nu * opt.eta, MakeProduct({tm.ztr, mass_p1, reg})));
    }
    rhs.segment(a.Offset(rp), sizes[rp]) =
        tm.ztr->Apply(row1 + dm.incident_neumann);

    // Row of theta.
    const OperatorPtr half_mk = MakeSum({{0.5, mass_tp}, {-1.0, kk}});
    a.Set(rt, rp, MakeProduct({half_mk, tm.z}));
    a.Set(rt, rt, v);
    a.Set(rt, rs, opt.variant == StabilisedVariant::AltReg
                      ? Scale(ieta, MakeProduct({mass_tp, reg}))
                      : Scale(ieta, mass_tp));
    rhs.segment(a.Offset(rt), sizes[rt]) = half_mk->Apply(g);

    // Row of Sigma.
    a.Set(rs, rp, Scale(-1.0, MakeProduct({d, tm.z})));
    a.Set(rs, rt, MakeSum({{-0.5, mass_pt}, {-1.0, t}}));
    a.Set(rs, rs, opt.variant == StabilisedVariant::AltReg ? mass_p1 : s);
    rhs.segment(a.Offset(rs), sizes[rs]) = -d->Apply(g);

    // Interaction with the other surfaces.
    for (std::size_t n = 0; n < nd; n++)
    {
      if (n == m)
      {
        continue;
      }
      const DomainData &dn = sys.domains[n];
      const Traces tn = MakeTraces(dn);
      const std::size_t cp = 3 * n, ct = cp + 1;
      const OperatorPtr vmn = bem.Get(m, n, Op::SingleLayer, th, th);
      const OperatorPtr kmn = bem.Get(m, n, Op::DoubleLayer, th, P1);
      const OperatorPtr tmn = bem.Get(m, n, Op::AdjointDoubleLayer, P1, th);
      const OperatorPtr dmn = bem.Get(m, n, Op::Hypersingular, P1, P1);
      const CVector &gn = dn.incident_dirichlet;
      a.Set(rp, cp, MakeProduct({tm.ztr, dmn, tn.z}));
      a.Set(rp, ct, MakeProduct({tm.ztr, tmn}));
      a.Set(rt, cp, Scale(-1.0, MakeProduct({kmn, tn.z})));
      a.Set(rt, ct, vmn);
      a.Set(rs, cp, Scale(-1.0, MakeProduct({dmn, tn.z})));
      a.Set(rs, ct, Scale(-1.0, tmn));
      const CVector dg = dmn->Apply(gn);
      rhs.segment(a.Offset(rp), sizes[rp]) += tm.ztr->Apply(dg);
      rhs.segment(a.Offset(rt), sizes[rt]) -= kmn->Apply(gn);
      rhs.segment(a.Offset(rs), sizes[rs]) -= dg;
    }
  }

  const RowRole sigma_role =
      opt.variant == StabilisedVariant::AltReg ? RowRole::Mass : RowRole::Regulariser;
  for (std::size_t m = 0; m < nd; m++)
  {
    const int b = static_cast<int>(3 * m);
    sys.row_test.insert(sys.row_test.end(), {b, b + 1, b + 2});
    sys.row_roles.insert(sys.row_roles.end(),
                         {RowRole::Fem, RowRole::SingleLayer, sigma_role});
  }
  if (opt.permuted)
  {
    sys.row_test = {0, 2, 1};
    sys.row_roles = {RowRole::Fem, RowRole::HalfPlusAdjoint,
                     opt.variant == StabilisedVariant::AltReg ? RowRole::EtaMassRegulariser
                                                              : RowRole::EtaMass};
    a = a.PermuteRows({0, 2, 1}, {1.0, -1.0, 1.0});
    CVector r = rhs;
    r.segment(a.Offset(1), sizes[1]) = -rhs.segment(a.Offset(2), sizes[2]);
    r.segment(a.Offset(2), sizes[2]) = rhs.segment(a.Offset(1), sizes[1]);
    rhs = r;
  }
  sys.lhs = std::move(a);
  sys.rhs = std::move(rhs);
  return sys;
}

// Two-unknown systems: standard (Johnson-Nedelec) and symmetric coupling.
FormulationSystem BuildTwoField(const Scene &scene, const FormulationOptions &opt,
                                FormulationKind kind)
{
  opt.Validate(kind);
  CheckWave(scene);
  const double k = scene.wave.k;
  FormulationSystem sys;
  sys.kind = kind;
  sys.options = opt;
  sys.k = k;
  sys.domains = PrepareDomains(scene, opt, true);
  sys.theta_is_total = kind == FormulationKind::Standard;
  const SpaceKind th = opt.theta_space;
  DomainData &dm = sys.domains[0];

  BoundaryBlocks bem(sys.domains, k, opt);
  bem.Require(0, 0, Op::SingleLayer, th, th);
  bem.Require(0, 0, Op::DoubleLayer, th, P1);
  if (kind == FormulationKind::Symmetric)
  {
    bem.Require(0, 0, Op::AdjointDoubleLayer, P1, th);
    bem.Require(0, 0, Op::Hypersingular, P1, P1);
  }
  bem.Assemble();

  sys.unknowns.push_back({UnknownKind::Pressure, dm.domain, {SpaceKind::VolumeP1, dm.domain}});
  sys.unknowns.push_back({UnknownKind::Theta, dm.domain, {th, dm.domain}});
  const std::vector<Index> sizes{dm.volume.NumDofs(), SurfaceDim(dm.surface, th)};
  BlockOperator a({sys.unknowns[0].space, sys.unknowns[1].space}, sizes);
  CVector rhs = CVector::Zero(a.Rows());

  const Traces tm = MakeTraces(dm);
  const OperatorPtr mass_tp = MakeSparse(dm.mass_theta_p1);
  const RSparse mass_pt_r = dm.mass_theta_p1.transpose();
  const OperatorPtr mass_pt = MakeSparse(mass_pt_r);
  const OperatorPtr v = bem.Get(0, 0, Op::SingleLayer, th, th);
  const OperatorPtr kk = bem.Get(0, 0, Op::DoubleLayer, th, P1);
  const CVector &g = dm.incident_dirichlet;
  const OperatorPtr half_mk = MakeSum({{0.5, mass_tp}, {-1.0, kk}});

  if (kind == FormulationKind::Standard)
  {
    a.Set(0, 0, MakeSparse(dm.fem));
    a.Set(0, 1, Scale(-1.0, MakeProduct({tm.ztr, mass_pt})));
    rhs.segment(a.Offset(1), sizes[1]) = mass_tp->Apply(g);
  }
  else
  {
    const OperatorPtr t = bem.Get(0, 0, Op::AdjointDoubleLayer, P1, th);
    const OperatorPtr d = bem.Get(0, 0, Op::Hypersingular, P1, P1);
    a.Set(0, 0, MakeSum({{1.0, MakeSparse(dm.fem)}, {1.0, MakeProduct({tm.ztr, d, tm.z})}}));
    a.Set(0, 1, MakeProduct({tm.ztr, MakeSum({{1.0, t}, {-0.5, mass_pt}})}));
    rhs.segment(0, sizes[0]) = tm.ztr->Apply(d->Apply(g) + dm.incident_neumann);
    rhs.segment(a.Offset(1), sizes[1]) = half_mk->Apply(g);
  }
  a.Set(1, 0, MakeProduct({half_mk, tm.z}));
  a.Set(1, 1, v);
  sys.row_test = {0, 1};
  sys.row_roles = {RowRole::Fem, RowRole::SingleLayer};
  sys.lhs = std::move(a);
  sys.rhs = std::move(rhs);
  return sys;
}

}  // namespace

FormulationSystem BuildStandard(const Scene &scene, const FormulationOptions &options)
{
  return BuildTwoField(scene, options, FormulationKind::Standard);
}

FormulationSystem BuildSymmetric(const Scene &scene, const FormulationOptions &options)
{
  return BuildTwoField(scene, options, FormulationKind::Symmetric);
}

FormulationSystem BuildStabilised(const Scene &scene, const FormulationOptions &options)
{
  return BuildStabilisedSystem(scene, options, FormulationKind::Stabilised);
}

FormulationSystem BuildMultidomain(const Scene &scene, const FormulationOptions &options)
{
  return BuildStabilisedSystem(scene, options, FormulationKind::Multidomain);
}

FormulationSystem BuildFormulation(FormulationKind kind, const Scene &scene,
                                   const FormulationOptions &options)
{
  switch (kind)
  {
    case FormulationKind::Standard:
      return BuildStandard(scene, options);
    case FormulationKind::Symmetric:
      return BuildSymmetric(scene, options);
    case FormulationKind::Stabilised:
      return BuildStabilised(scene, options);
    case FormulationKind::Multidomain:
      return BuildMultidomain(scene, options);
  }
  throw InvalidArgument("unknown formulation");
}

CVector ReconstructExterior(const FormulationSystem &system, const CVector &solution,
                            const IncidentWave &wave, const std::vector<Vec3> &points,
                            const PotentialOptions &opts)
{
  FEMBEM_VERIFY(solution.size() == system.Size(), "solution has ", solution.size(),
                " entries, the system ", system.Size());
  for (const auto &d : system.domains)
  {
    for (const Vec3 &x : points)
    {
      FEMBEM_VERIFY(!PointInsideSurface(d.surface, x), "point (", x.transpose(),
                    ") lies inside domain ", d.domain);
    }
  }
  CVector field = CVector::Zero(static_cast<Index>(points.size()));
  for (const auto &d : system.domains)
  {
    const CVector p = system.Segment(solution, UnknownKind::Pressure, d.domain);
    const CVector phi = d.maps.Z.cast<Complex>() * p;
    const CVector theta = system.Segment(solution, UnknownKind::Theta, d.domain);
    field += EvaluatePotentials(d.surface, system.k, phi, theta, system.options.theta_space,
                                points, opts);
    if (!system.theta_is_total)
    {
      field -= EvaluateSingleLayerOfFunction(
          d.surface, system.k, [&](const Vec3 &y, const Vec3 &n)
          { return wave.NormalDerivative(y, n); }, points, opts);
    }
  }
  for (std::size_t i = 0; i < points.size(); i++)
  {
    field[i] += wave.Value(points[i]);
  }
  return field;
}

void CheckDisjointDomains(const Mesh &mesh)
{
  std::vector<Surface> surfaces;
  for (int d : mesh.Domains())
  {
    surfaces.push_back(ExtractSurface(mesh, d));
  }
  for (std::size_t i = 0; i < surfaces.size(); i++)
  {
    for (std::size_t j = i + 1; j < surfaces.size(); j++)
    {
      const Surface &a = surfaces[i], &b = surfaces[j];
      Eigen::AlignedBox3d ba, bb;
      for (const Vec3 &x : a.nodes)
      {
        ba.extend(x);
      }
      for (const Vec3 &x : b.nodes)
      {
        bb.extend(x);
      }
      if (!ba.intersects(bb))
      {
        continue;
      }
      const double tol = 1e-9 * std::max(ba.diagonal().norm(), bb.diagonal().norm());
      for (const Vec3 &x : a.nodes)
      {
        FEMBEM_VERIFY(DistanceToSurface(b, x) > tol, "domains ", a.domain, " and ", b.domain,
                      " touch");
      }
      FEMBEM_VERIFY(!PointInsideSurface(b, a.nodes.front()) &&
                        !PointInsideSurface(a, b.nodes.front()),
                    "domains ", a.domain, " and ", b.domain, " overlap");
    }
  }
}

}  // namespace fembem
