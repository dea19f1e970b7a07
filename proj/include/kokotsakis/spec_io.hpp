#pragma once

#include <iosfwd>
#include <string>

#include "kokotsakis/planar.hpp"

namespace kokotsakis::spec_io {

// JSON layout:
//   deltas       base angles in input order
//   tau
//   vertices[i]  {alpha, beta, gamma, delta, lambda, mu, nu} in normalized order
//   zetas
//   enumeration  1-based input index of each normalized vertex
//   sigma        {alpha: [4], gamma: [4]}
// Values are written with round-trip precision. Loading keeps the stored
// factors as they are, so a hand-edited file is checked rather than repaired.
std::string to_json(const planar::PolyhedronSpec& spec);
planar::PolyhedronSpec from_json(const std::string& text);

void save(const planar::PolyhedronSpec& spec, const std::string& path);
planar::PolyhedronSpec load(const std::string& path);

}  // namespace kokotsakis::spec_io
