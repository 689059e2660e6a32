#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcat/homology.hpp"
#include "qcat/mapping.hpp"
#include "qcat/sset.hpp"

namespace qcat {

struct Bounds {
  int m = 4;   // mapping-space dimension
  int D = -1;  // E-direction truncation (default m + 2)
  int V = 3;   // necklace vertex bound
};

struct PairRecord {
  std::string a, b;          // vertex pair in the source
  std::string model;         // model used for the comparison
  int pi0_source = 0, pi0_target = 0;
  bool pi0_bijective = false;
  bool homology_iso = false;
  int checked_up_to = -1;
  std::string witness;
};

struct EquivalenceVerdict {
  bool refuted = false;
  std::string witness;  // the first failing comparison when refuted
  Bounds bounds;
  // Condition on points: homotopy classes of objects, as representative identifiers.
  std::vector<std::string> source_classes, target_classes;
  std::vector<int> class_map;  // source class -> target class
  std::vector<PairRecord> pairs;
};

// Condition (1): bijection on isomorphism classes of the homotopy categories.
// Condition (2): for every vertex pair, the induced map of cylinder models is
// a bijection on components and an isomorphism on H_k for k <= m - 1.
// Both sides must verify as quasi-categories up to dimension 3.
EquivalenceVerdict dk_check(const SMap& f, Bounds bounds = {});

struct ModelSummary {
  std::string model;
  bool computed = false;
  std::string notice;  // why a model was skipped
  std::vector<std::size_t> level_sizes;
  int pi0 = 0;
  std::vector<HomologyGroup> homology;  // whole space, degrees 0..trusted
  std::string acyclic_failure;          // empty when every component is acyclic
};

struct AgreementReport {
  Bounds bounds;
  std::vector<ModelSummary> models;
  std::vector<std::string> comparison_checks;  // one line per comparison map
  std::vector<std::string> disagreements;
  bool agree() const { return disagreements.empty(); }
};

// All computable models among R, L, cyl, E and the necklace fragment.
AgreementReport model_agreement(const BiPointed& S, Bounds bounds = {});

struct ContractibilityVerdict {
  bool consistent = false;
  int checked_up_to = -1;
  std::string witness;
};
// One component and vanishing reduced homology in degrees up to m - 1 (evidence only).
ContractibilityVerdict contractibility_evidence(const SSetPtr& K, int m);

}  // namespace qcat
