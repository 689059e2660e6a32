#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcat/sset.hpp"

namespace qcat {

using BigInt = boost::multiprecision::cpp_int;

// Column-sparse integer matrix; entries of boundary maps stay small.
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> columns;  // (row, value), rows ascending
};

// Normalized chains: the basis in degree d is the nondegenerate d-simplices.
struct ChainComplex {
  int top = 0;
  // Degrees above this bound may hold truncation artefacts (unstable inputs).
  int trusted = 0;
  std::vector<std::vector<Index>> basis;
  std::vector<SparseMatrix> boundary;  // boundary[d] : C_d -> C_{d-1}; boundary[0] is 0 x |C_0|
};

ChainComplex chains(const SSet& X, int m);
// Every composite boundary[d-1] * boundary[d] vanishes.
bool boundary_squares_zero(const ChainComplex& C);

struct HomologyGroup {
  long long betti = 0;
  std::vector<BigInt> torsion;  // invariant factors greater than one, ascending
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyReport {
  std::vector<HomologyGroup> groups;  // degrees 0..m
  int trusted = 0;                    // highest degree not affected by truncation
};

// Invariant factors of an integer matrix (Smith normal form diagonal, nonzero part).
std::vector<BigInt> invariant_factors(const SparseMatrix& M);

HomologyReport homology(const SSet& X, int m);
HomologyReport homology(const ChainComplex& C);
std::string to_string(const HomologyGroup& g);

struct Components {
  std::vector<int> of_vertex;  // component label per vertex, labelled by first vertex
  int count = 0;
};
Components pi0(const SSet& X);

// The subcomplex of simplices lying over one path component.
Inclusion component(const SSetPtr& X, const Components& c, int label);

// Every component has H_0 = Z and H_k = 0 (no torsion) for 1 <= k <= m.
// Returns an empty string on success, else a description of the first failure.
std::string componentwise_acyclic(const SSetPtr& X, int m);

// Induced map on path components, as component labels.
std::vector<int> pi0_map(const SMap& f, const Components& src, const Components& dst);

struct HomologyIsoEvidence {
  bool pi0_bijective = false;
  bool iso = false;
  int checked_up_to = -1;  // degrees 0..checked_up_to are known isomorphisms
  std::string witness;     // first failing comparison, if any
};
// Checks that f induces isomorphisms on H_k for k <= m via the mapping cone,
// or via componentwise acyclicity of both sides when that already decides it.
HomologyIsoEvidence homology_iso(const SMap& f, int m);

}  // namespace qcat
