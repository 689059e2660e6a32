#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcat/category.hpp"
#include "qcat/sset.hpp"

namespace qcat {

struct HornInstance {
  int n = 0, k = 0;
  SMap attachment;  // horn(n,k) -> X
};

// Images of the faces d_i of the missing top simplex (entry k is -1).
std::vector<Index> horn_face_images(const HornInstance& h);

// All n-simplices of X restricting to the horn, in identifier order.
std::vector<Index> find_fillers(const SSetPtr& X, const HornInstance& h);

struct FibrancyVerdict {
  bool verified = false;
  int bound = 0;
  std::optional<HornInstance> failure;
};

// Exhaustive over inner horns of dimension 2..d.
FibrancyVerdict is_inner_fibrant_up_to(const SSetPtr& X, int d);
// Exhaustive over all horns (outer included) of dimension 1..d.
FibrancyVerdict is_kan_up_to(const SSetPtr& X, int d);
// Runs the inner check and, on success, returns the verified wrapper.
std::optional<QuasiCategory> verify_quasi_category(const SSetPtr& X, int d = 3);

enum class QuasiIsoMode { providers, sk2e1, ho };
enum class Tri { yes, no, unknown };

struct QuasiIsoWitness {
  Index edge = 0;
  std::optional<Index> left_provider;   // d2 = f, d1 = s0(a)
  std::optional<Index> right_provider;  // d0 = f, d1 = s0(b)
  std::optional<SMap> sk2e1_extension;
};

struct QuasiIsoVerdict {
  Tri answer = Tri::unknown;
  QuasiIsoWitness witness;
};

// `verified` lets missing witnesses count as "no"; mode ho requires it.
QuasiIsoVerdict quasi_iso(const SSetPtr& X, Index edge, QuasiIsoMode mode,
                          const QuasiCategory* verified = nullptr);
// Mode ho against a precomputed homotopy category.
QuasiIsoVerdict quasi_iso(const HoCategory& H, Index edge);
// sk_2(E^1), the domain of the sk2e1 witnesses.
SSetPtr sk2_e1();

struct LiftOver {
  SMap fibration;     // X -> Y
  Index base_simplex; // n-simplex of Y under the horn
};

struct LiftResult {
  std::optional<Index> filler;
  std::string diagnostic;  // non-empty when a guaranteed filler is missing
};

// Fills a special outer horn (k = 0 or k = n) by exhaustive search.
LiftResult special_horn_lift(const SSetPtr& X, const HornInstance& p, const std::optional<LiftOver>& over = std::nullopt,
                             const QuasiCategory* verified = nullptr);

// Simplices all of whose edges are invertible in the homotopy category.
Inclusion j_subcomplex(const QuasiCategory& X);

// X_{/k}: level n = maps Delta^n * K -> X extending k, for n <= trunc
// (default: the largest level computable from X's truncation).
SSetPtr slice(const SSetPtr& X, const SMap& k, std::optional<int> trunc = std::nullopt);

}  // namespace qcat
