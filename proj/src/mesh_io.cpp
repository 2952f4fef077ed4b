// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <unordered_map>

#include "fembem/mesh.hpp"

namespace fembem
{

namespace
{

// Number of nodes for the Gmsh element types we either read or skip.
int GmshNodeCount(int type)
{
  switch (type)
  {
    case 1:
      return 2;
    case 2:
      return 3;
    case 3:
      return 4;
    case 4:
      return 4;
    case 5:
      return 8;
    case 6:
      return 6;
    case 7:
      return 5;
    case 8:
      return 3;
    case 9:
      return 6;
    case 10:
      return 9;
    case 11:
      return 10;
    case 12:
      return 27;
    case 13:
      return 18;
    case 14:
      return 14;
    case 15:
      return 1;
    case 16:
      return 8;
    case 17:
      return 20;
    case 18:
      return 15;
    case 19:
      return 13;
    default:
      return -1;
  }
}

bool IsVolumeType(int type)
{
  return type == 4 || type == 5 || type == 6 || type == 7 || (type >= 11 && type <= 14) ||
         (type >= 17 && type <= 19);
}

const char *GmshTypeName(int type)
{
  switch (type)
  {
    case 5:
      return "hexahedron";
    case 6:
      return "prism";
    case 7:
      return "pyramid";
    case 11:
      return "second-order tetrahedron";
    default:
      return "higher-order volume cell";
  }
}

}  // namespace

Mesh ImportMsh(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InvalidArgument(detail::Concat("cannot open mesh file ", path.string()));
  }
  std::string token;
  std::vector<std::pair<long, Vec3>> nodes;
  std::vector<std::array<long, 4>> raw_tets;
  std::vector<int> raw_tags;
  bool have_format = false;
  while (in >> token)
  {
    if (token == "$MeshFormat")
    {
      double version;
      int file_type, data_size;
      in >> version >> file_type >> data_size;
      FEMBEM_VERIFY(in && version >= 2.0 && version < 3.0, "unsupported MSH version in ",
                    path.string(), " (expected 2.2)");
      FEMBEM_VERIFY(file_type == 0, "binary MSH files are not supported");
      have_format = true;
      in >> token;
    }
    else if (token == "$Nodes")
    {
      long n;
      in >> n;
      FEMBEM_VERIFY(in && n >= 0, "malformed $Nodes section");
      nodes.reserve(n);
      for (long i = 0; i < n; i++)
      {
        long id;
        Vec3 x;
        in >> id >> x[0] >> x[1] >> x[2];
        FEMBEM_VERIFY(in, "malformed node ", i, " in ", path.string());
        nodes.emplace_back(id, x);
      }
      in >> token;
    }
    else if (token == "$Elements")
    {
      long n;
      in >> n;
      FEMBEM_VERIFY(in && n >= 0, "malformed $Elements section");
      for (long i = 0; i < n; i++)
      {
        long id;
        int type, ntags;
        in >> id >> type >> ntags;
        FEMBEM_VERIFY(in, "malformed element ", i, " in ", path.string());
        std::vector<int> tags(ntags);
        for (auto &t : tags)
        {
          in >> t;
        }
        const int nn = GmshNodeCount(type);
        FEMBEM_VERIFY(nn > 0, "unsupported cell type ", type, " (element ", id, ")");
        std::vector<long> ids(nn);
        for (auto &x : ids)
        {
          in >> x;
        }
        FEMBEM_VERIFY(in, "malformed element ", id, " in ", path.string());
        if (IsVolumeType(type) && type != 4)
        {
          throw InvalidArgument(detail::Concat("unsupported cell type: ", GmshTypeName(type),
                                               " (element ", id, ")"));
        }
        if (type == 4)
        {
          raw_tets.push_back({ids[0], ids[1], ids[2], ids[3]});
          raw_tags.push_back(ntags > 0 ? tags[0] : 0);
        }
      }
      in >> token;
    }
    else if (!token.empty() && token[0] == '$' && token.rfind("$End", 0) != 0)
    {
      // Unknown section: skip to its end marker.
      const std::string end = "$End" + token.substr(1);
      while (in >> token && token != end)
      {
      }
    }
  }
  FEMBEM_VERIFY(have_format, "missing $MeshFormat in ", path.string());
  FEMBEM_VERIFY(!raw_tets.empty(), "no tetrahedra in ", path.string());

  std::unordered_map<long, int> node_index;
  for (std::size_t i = 0; i < nodes.size(); i++)
  {
    node_index.emplace(nodes[i].first, static_cast<int>(i));
  }
  std::vector<int> used(nodes.size(), -1);
  for (const auto &t : raw_tets)
  {
    for (long id : t)
    {
      auto it = node_index.find(id);
      FEMBEM_VERIFY(it != node_index.end(), "element references unknown node ", id);
      used[it->second] = 0;
    }
  }
  std::vector<Vec3> vertices;
  for (std::size_t i = 0; i < nodes.size(); i++)
  {
    if (used[i] == 0)
    {
      used[i] = static_cast<int>(vertices.size());
      vertices.push_back(nodes[i].second);
    }
  }
  std::set<int> tag_set(raw_tags.begin(), raw_tags.end());
  std::map<int, int> domain_of;
  for (int t : tag_set)
  {
    domain_of.emplace(t, static_cast<int>(domain_of.size()));
  }
  std::vector<std::array<int, 4>> tets;
  std::vector<int> domains;
  tets.reserve(raw_tets.size());
  for (std::size_t t = 0; t < raw_tets.size(); t++)
  {
    std::array<int, 4> tet;
    for (int j = 0; j < 4; j++)
    {
      tet[j] = used[node_index.at(raw_tets[t][j])];
    }
    tets.push_back(tet);
    domains.push_back(domain_of.at(raw_tags[t]));
  }
  return Mesh::FromTetrahedra(std::move(vertices), std::move(tets), std::move(domains));
}

void ExportMsh(const Mesh &mesh, const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw InvalidArgument(detail::Concat("cannot write mesh file ", path.string()));
  }
  out << std::setprecision(17);
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  out << "$Nodes\n" << mesh.NumVertices() << "\n";
  for (Index i = 0; i < mesh.NumVertices(); i++)
  {
    const Vec3 &x = mesh.vertices[i];
    out << i + 1 << " " << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  out << "$EndNodes\n";
  out << "$Elements\n" << mesh.NumTetrahedra() << "\n";
  for (Index t = 0; t < mesh.NumTetrahedra(); t++)
  {
    const auto &tet = mesh.tetrahedra[t];
    const int tag = mesh.tet_domain[t] + 1;
    out << t + 1 << " 4 2 " << tag << " " << tag;
    for (int v : tet)
    {
      out << " " << v + 1;
    }
    out << "\n";
  }
  out << "$EndElements\n";
}

void WriteMeshVtk(const Mesh &mesh, const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw InvalidArgument(detail::Concat("cannot write ", path.string()));
  }
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nfembem mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.NumVertices() << " double\n";
  for (const auto &x : mesh.vertices)
  {
    out << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  out << "CELLS " << mesh.NumTetrahedra() << " " << 5 * mesh.NumTetrahedra() << "\n";
  for (const auto &t : mesh.tetrahedra)
  {
    out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  }
  out << "CELL_TYPES " << mesh.NumTetrahedra() << "\n";
  for (Index t = 0; t < mesh.NumTetrahedra(); t++)
  {
    out << "10\n";
  }
  out << "CELL_DATA " << mesh.NumTetrahedra() << "\nSCALARS domain int 1\nLOOKUP_TABLE default\n";
  for (int d : mesh.tet_domain)
  {
    out << d << "\n";
  }
}

}  // namespace fembem
