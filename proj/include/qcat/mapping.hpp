#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcat/build.hpp"
#include "qcat/sset.hpp"

namespace qcat {

struct AnodyneCertificate;

enum class IntervalKind { R, L, cyl, E, relE };
std::string to_string(IntervalKind k);
IntervalKind interval_kind_from_string(const std::string& s);

// Cosimplicial object C^0..C^m under its basepoint object (the boundary of
// Delta^1, or A for the relative kind). All objects share one truncation.
struct CosimplicialInterval {
  IntervalKind kind = IntervalKind::R;
  int m = 0;
  int trunc = 0;
  SSetPtr base;                           // boundary of Delta^1, or A
  std::vector<SSetPtr> at;                // C^n
  std::vector<std::vector<SMap>> coface;  // coface[n][i] : C^{n-1} -> C^n
  std::vector<std::vector<SMap>> codegen; // codegen[n][i] : C^{n+1} -> C^n
  std::vector<SMap> basepoints;           // base -> C^n
};

// Kinds R, L, cyl and E. For E the truncation of the E-direction is D
// (default m + 2); the other kinds use m + 2 so every object is stable.
CosimplicialInterval cosimplicial_interval(IntervalKind kind, int m, int D = -1);
// C_E(B, A): the pushout of A x E^n -> B x E^n along A x E^n -> A.
CosimplicialInterval relative_interval(const SMap& inclusion, int m, int D);

// Cosimplicial identities, vertex count, and the latching spot-audit.
std::vector<std::string> audit_interval(const CosimplicialInterval& C);

struct MappingSpace {
  SSetPtr space;
  std::vector<std::vector<SMap>> maps;  // maps[n][x] : C^n -> S for simplex x of level n
  CosimplicialInterval interval;
};

// Maps C^n -> S carrying the basepoints to (a, b), for n <= m.
MappingSpace hom_model(IntervalKind kind, const BiPointed& S, int m = 4, int D = -1);

struct ComparisonMaps {
  std::optional<SMap> e_to_cyl;  // absent when the E model is not computable
  SMap cyl_to_r, cyl_to_l;
};
struct ModelSet {
  std::optional<MappingSpace> E;
  MappingSpace R, L, cyl;
  ComparisonMaps maps;
};
ModelSet comparison_maps(const BiPointed& S, int m = 4, int D = -1);

// Hom(a, b) -> Hom(f a, f b) induced by f : S -> T, for two models of the same kind.
SMap postcompose(const MappingSpace& from, const MappingSpace& to, const SMap& f);

// Relative mapping space: level n = maps B x E^n -> X restricting to f . pr on A x E^n.
struct RelativeSpace {
  SSetPtr space;
  std::vector<std::vector<SMap>> maps;
  std::vector<ProductResult> b_products, a_products;
  SMap inclusion;  // A -> B (retruncated)
  SMap f;          // A -> X (retruncated)
  int e_trunc = 0;
};
RelativeSpace rel_map_space(const SMap& inclusion, const SMap& f, int m = 4, int D = -1);

// Induced map Hom_{A'}(B', X) -> Hom_A(B, X) along b : B -> B'.
SMap restriction_map(const RelativeSpace& from, const RelativeSpace& to, const SMap& b);

enum class LatchingStatus { fibration, acyclic_fibration, not_applicable, refuted };
struct LatchingVerdict {
  LatchingStatus status = LatchingStatus::not_applicable;
  std::string detail;
  int checked_dim = 0;
};
// Square A -> B, A -> A', B -> B', A' -> B' (all monomorphisms expected) and
// f : A' -> X. Checks the right lifting property of Hom_{A'}(B', X) -> Hom_A(B, X)
// against horns up to r_max, and against boundaries when `acyclic` certifies
// the latching map.
LatchingVerdict latching_fibration_check(const SMap& i, const SMap& i_prime, const SMap& a, const SMap& b,
                                         const SMap& f, int r_max, int m,
                                         const AnodyneCertificate* acyclic = nullptr, int D = -1);

struct PullbackVerdict {
  bool strict = false;
  int checked_dim = 0;
  std::string detail;
  std::vector<std::size_t> sizes;  // level sizes of Hom_A(B, X)
};
// B1 and B2 cover B; A is a subcomplex of B; f : materialize(B, A) -> X.
PullbackVerdict relative_pullback_check(const SSetPtr& B, const Subcomplex& A, const Subcomplex& B1,
                                        const Subcomplex& B2, const SMap& f, int m, int D = -1);

// Inclusion of a materialised subcomplex, matched by identifier.
SMap inclusion_by_ids(const SSetPtr& small, const SSetPtr& big);

// Restriction of f to a materialised subcomplex of its source, matched by identifier.
SMap restrict_by_ids(const SMap& f, const SSetPtr& sub);

// Right lifting property of p against horn (and optionally boundary) inclusions
// up to dimension r_max. Returns an empty string on success.
std::string rlp_check(const SMap& p, int r_max, bool boundaries);

}  // namespace qcat
