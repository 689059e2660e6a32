#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat {

// A finite category with an explicit composition table.
class FinCat {
 public:
  struct Morphism {
    std::string name;
    int src = 0, dst = 0;
  };

  int add_object(std::string name);
  int add_morphism(std::string name, int src, int dst);
  void set_identity(int object, int morphism);
  void set_composite(int g, int f, int gf);  // records g . f
  // Freezes the table and checks totality, identity laws and associativity;
  // throws InvalidArgument describing the first violation.
  void finalize();

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object(int o) const { return objects_[o]; }
  const Morphism& morphism(int f) const { return morphisms_[f]; }
  int identity(int o) const { return identity_[o]; }
  // g . f, or -1 when not composable
  int compose(int g, int f) const;
  const std::vector<int>& out(int o) const { return out_[o]; }
  std::vector<int> hom(int a, int b) const;
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_morphism(const std::string& name) const;
  std::optional<int> inverse(int f) const;
  bool invertible(int f) const { return inverse(f).has_value(); }

 private:
  void validate_laws() const;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identity_;
  std::map<std::pair<int, int>, int> pending_;
  std::vector<std::vector<int>> out_;
  std::vector<int> pos_;               // position of g in out_[src g]
  std::vector<std::vector<int>> after_;  // after_[f][pos_[g]] = g . f
  bool frozen_ = false;
};

// Nerve truncated at D (default 8); 2-coskeletal.
SSetPtr nerve(const FinCat& C, int D = 8);

// A simplicial set with inner horns verified to fill up to a recorded
// dimension. Only the fibrancy checker can produce one.
class QuasiCategory {
 public:
  const SSetPtr& space() const { return space_; }
  int verified_dim() const { return verified_; }

 private:
  QuasiCategory(SSetPtr X, int d) : space_(std::move(X)), verified_(d) {}
  friend struct FibrancyChecker;
  SSetPtr space_;
  int verified_;
};

struct HoCategory {
  FinCat base;
  SSetPtr source;
  std::vector<int> edge_class;  // per 1-simplex of source
};

// Objects are the vertices; morphisms are edges modulo the homotopy relation.
HoCategory ho_category(const QuasiCategory& X);
// Partition of objects under "an invertible morphism exists between".
std::vector<std::vector<int>> iso_classes(const HoCategory& H);

}  // namespace qcat
