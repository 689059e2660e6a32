#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat::detail {

// Objects C^0..C^m with cofaces coface[n][i] : C^{n-1} -> C^n (n >= 1) and
// codegeneracies codegen[n][i] : C^{n+1} -> C^n (n < m). All objects share one
// truncation so that maps into a target are keyed on the same levels.
struct CosimplicialDiagram {
  std::vector<SSetPtr> obj;
  std::vector<std::vector<SMap>> coface;
  std::vector<std::vector<SMap>> codegen;
};

// Simplicial set whose n-simplices are maps[n] (maps C^n -> S, distinct),
// with faces and degeneracies given by precomposition. Identifiers come from
// the images of maximal nondegenerate simplices when C^n is finite, and from
// the canonical position otherwise.
SSetPtr assemble_map_space(const CosimplicialDiagram& C, const SSetPtr& S,
                           const std::vector<std::vector<SMap>>& maps, const std::string& index_prefix);

// Images of the nondegenerate simplices of the source, flattened.
std::vector<Index> nondegenerate_key(const SMap& f, int upto);

// Maximal nondegenerate simplices (not a face of another nondegenerate simplex).
std::vector<Simplex> maximal_simplices(const SSet& X);

// The map Delta^m -> Delta^n induced by a monotone vertex map.
SMap simplex_map(const SSetPtr& dm, const SSetPtr& dn, const std::vector<int>& vertex_map);
// Coface delta^i : [n-1] -> [n] and codegeneracy sigma^i : [n+1] -> [n] as vertex maps.
std::vector<int> coface_vertices(int n, int i);
std::vector<int> codegen_vertices(int n, int i);

// The map determined by a vertex assignment, when the target's simplices are
// determined by their vertex tuples.
SMap vertex_map(const SSetPtr& X, const SSetPtr& Y, const std::vector<Index>& vmap);
// Factors h through the surjection p (h must be constant on the fibres of p).
SMap descend(const SMap& p, const SMap& h);
// Map sending every simplex to the degenerate simplex on the image of its vertex.
SMap discrete_map(const SSetPtr& X, const SSetPtr& Y, const std::vector<Index>& vmap);

}  // namespace qcat::detail
