#pragma once

#include <string>
#include <vector>

#include "qcat/category.hpp"
#include "qcat/sset.hpp"

namespace qcat {

// Delta^{n_1} v ... v Delta^{n_k}, the final vertex of each bead glued to the
// initial vertex of the next. No beads at all is the point Delta^0.
struct Necklace {
  std::vector<int> beads;

  int vertex_count() const;
  std::vector<int> joints() const;  // vertex positions of the bead endpoints
  // Realised inside its associated simplex, which is what `simplex` returns.
  SSetPtr simplex(int D) const;
  Inclusion realize(int D) const;
  Inclusion spine(int D) const;
  std::string label() const;
};

// All necklaces with at most V vertices (the point first, then by vertex count).
std::vector<Necklace> necklaces_up_to(int V);

struct NecklaceModel {
  FinCat category;  // objects: necklaces over S from a to b; morphisms: necklace maps over S
  SSetPtr nerve;    // nerve of `category`, truncated at m
  int V = 0, m = 0;
};

// Finite fragment of the necklace model of the mapping space from a to b:
// necklaces with at most V vertices.
NecklaceModel necklace_model(const BiPointed& S, int V, int m);

}  // namespace qcat
