#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat {

enum class HornClass { inner, special_left, special_right };
std::string to_string(HornClass c);
HornClass horn_class_from_string(const std::string& s);

struct CertStep {
  std::string simplex;  // identifier of the attached simplex in the ambient
  int k = 0;            // index of the face attached with it
  HornClass cls = HornClass::inner;
  friend bool operator==(const CertStep&, const CertStep&) = default;
};

// A sequence of horn attachments inside an ambient simplicial set, starting
// from `start` and (when not partial) reaching `end`.
struct AnodyneCertificate {
  SSetPtr ambient;
  Subcomplex start;
  std::vector<CertStep> steps;
  Subcomplex end;
  bool partial = false;
  int verified_dim = 0;  // for partial certificates: end is complete through this dimension
};

struct CertVerdict {
  bool valid = false;
  int step = -1;  // failing step, or -1 for failures after the last step
  std::string reason;
  int verified_dim = 0;  // end agrees with the ambient through this dimension
};

// Replays the certificate: each target is nondegenerate and new, its horn is
// present, its k-face is absent (non-bounding), and its class matches k and the
// quasi-isomorphism side condition. The final subcomplex must equal `end`.
CertVerdict verify(const AnodyneCertificate& cert);

// (Lambda^n_k -> Delta^n) box (boundary Delta^r -> Delta^r), 0 < k < n.
AnodyneCertificate gen_box_inner(int n, int k, int r);
// ({0} -> E^1) box (boundary Delta^r -> Delta^r), r >= 1, truncated at D.
AnodyneCertificate gen_box_special(int r, int D);
// Delta^n v Delta^1 inside Delta^{n+1}.
AnodyneCertificate gen_spine_simplex(int n);
// Spine of Delta^r inside Delta^r, by iterating the previous family.
AnodyneCertificate gen_spine(int r);
// Delta^n_k: Delta^n with its initial Delta^k and terminal Delta^{n-k-1} collapsed.
SSetPtr squashed_simplex(int n, int k);
AnodyneCertificate gen_squash(int n, int k);
// One certificate per stage of the filtration of C_cyl^n by the images of
// its top simplices; entry 0 starts from an edge.
std::vector<AnodyneCertificate> gen_cyl_squash(int n);

struct StructuralVerdict {
  bool ok = false;
  std::string detail;
};
// (Lambda^n_k * Delta^r) u (Delta^n * boundary Delta^r) equals the horn Lambda^{n+r+1}_k.
StructuralVerdict check_joinbox(int n, int k, int r);
// Z_{n+1} is the pushout of Z_n <- Lambda^{n+1}_0 -> Delta^{n+1} inside E^1.
StructuralVerdict check_e1_filtration(int n);
// The subcomplex Z_n of E^1 (truncated at D) generated by the alternating simplex.
Subcomplex e1_filtration_stage(const SSet& e1, int n);

enum class Mutation { swap_dependent, change_k, drop_step };
// A single-step mutation of a certificate with at least one step.
AnodyneCertificate mutate(const AnodyneCertificate& cert, Mutation kind, std::mt19937_64& rng);

}  // namespace qcat
