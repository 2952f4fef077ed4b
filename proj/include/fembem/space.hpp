// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_SPACE_HPP
#define FEMBEM_SPACE_HPP

#include <string>

#include "fembem/common.hpp"

namespace fembem
{

struct Mesh;

enum class SpaceKind
{
  VolumeP1,
  SurfaceP0,
  SurfaceP1
};

// Discrete function space on one domain of a mesh.
struct SpaceTag
{
  SpaceKind kind = SpaceKind::SurfaceP1;
  int domain = 0;

  bool operator==(const SpaceTag &) const = default;
  std::string ToString() const;
};

Index SpaceDimension(const Mesh &mesh, const SpaceTag &space);

std::string ToString(SpaceKind kind);

enum class Execution
{
  Serial,
  Parallel
};

}  // namespace fembem

#endif  // FEMBEM_SPACE_HPP
