// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/space.hpp"

#include "fembem/mesh.hpp"

namespace fembem
{

std::string ToString(SpaceKind kind)
{
  switch (kind)
  {
    case SpaceKind::VolumeP1:
      return "volume-P1";
    case SpaceKind::SurfaceP0:
      return "surface-P0";
    case SpaceKind::SurfaceP1:
      return "surface-P1";
  }
  return "unknown";
}

std::string SpaceTag::ToString() const
{
  return fembem::ToString(kind) + "[" + std::to_string(domain) + "]";
}

Index SpaceDimension(const Mesh &mesh, const SpaceTag &space)
{
  switch (space.kind)
  {
    case SpaceKind::VolumeP1:
      return ExtractVolume(mesh, space.domain).NumDofs();
    case SpaceKind::SurfaceP0:
      return ExtractSurface(mesh, space.domain).NumTriangles();
    case SpaceKind::SurfaceP1:
      return ExtractSurface(mesh, space.domain).NumNodes();
  }
  return 0;
}

}  // namespace fembem
