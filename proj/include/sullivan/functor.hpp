#pragma once

// Contravariant functor from graphs with full monomorphisms to the algebras
// M_G: a full monomorphism s: G1 -> G2 gives M(s): M_G2 -> M_G1 with
// x_{v'} -> x_v and z_{v'} -> z_v when s(v) = v', and 0 off the image.

#include <map>
#include <string>

#include "sullivan/graph.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/morphism.hpp"

namespace sullivan {

inline Morphism functor_morphism(const GraphMorphism& m, const MGAlgebra& target_alg, const MGAlgebra& source_alg) {
  if (!is_full_monomorphism(m)) throw ValidationError("graph map is not a full monomorphism");
  if (target_alg.u1 != source_alg.u1 || target_alg.u2 != source_alg.u2) {
    throw ValidationError("algebras belong to different variants");
  }
  for (const auto& l : m.source->labels())
    if (!source_alg.graph.has_vertex(l)) throw DomainMismatch("source graph does not match the source algebra");
  for (const auto& l : m.target->labels())
    if (!target_alg.graph.has_vertex(l)) throw DomainMismatch("target graph does not match the target algebra");
  std::map<std::string, std::string> preimage;
  for (const auto& [v, w] : m.vertex_map) preimage[w] = v;
  const auto& cod = source_alg.algebra;
  std::map<std::string, RElement> images;
  for (const char* name : {"x1", "x2", "y1", "y2", "y3", "z"}) images.emplace(name, cod->gen(name));
  for (const auto& l : target_alg.labels) {
    auto it = preimage.find(l);
    if (it == preimage.end()) continue;
    images.emplace(x_name(l), cod->gen(x_name(it->second)));
    images.emplace(z_name(l), cod->gen(z_name(it->second)));
  }
  Morphism f = Morphism::from_map(target_alg.algebra, cod, images);
  if (!is_dga_morphism(f)) throw InvariantViolation("functor image does not commute with d");
  return f;
}

}  // namespace sullivan
