#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qcat/error.hpp"

namespace qcat {

using Index = std::int32_t;

struct Simplex {
  int dim = 0;
  Index index = 0;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

class SSet;
using SSetPtr = std::shared_ptr<const SSet>;

// A truncated simplicial set stored as explicit levelwise tables, degenerate
// simplices included. Immutable once built; construct through SSetBuilder.
class SSet {
 public:
  int trunc_dim() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  bool stable() const noexcept { return stable_; }
  // Degree k such that the object is known to be k-coskeletal, if any.
  std::optional<int> coskeletal_hint() const noexcept { return cosk_; }

  Index size(int n) const { return static_cast<Index>(levels_.at(n).ids.size()); }
  bool empty() const { return levels_.empty() || levels_[0].ids.empty(); }

  const std::string& id(int n, Index x) const { return levels_[n].ids[x]; }
  const std::string& id(Simplex s) const { return id(s.dim, s.index); }
  std::optional<Simplex> find(std::string_view id) const;
  Simplex at(std::string_view id) const;  // throws InvalidArgument

  // d_i : X_n -> X_{n-1}
  Index face(int n, int i, Index x) const { return levels_[n].face[x * (n + 1) + i]; }
  // s_i : X_n -> X_{n+1}, defined for n < trunc_dim
  Index degen(int n, int i, Index x) const { return levels_[n].degen[x * (n + 1) + i]; }

  bool nondegenerate(int n, Index x) const { return levels_[n].nondeg[x] != 0; }
  const std::vector<Index>& nondegenerate_simplices(int n) const { return levels_[n].nondeg_list; }
  std::size_t nondegenerate_count(int n) const { return levels_[n].nondeg_list.size(); }
  int max_nondegenerate_dim() const;

  // Eilenberg-Zilber normal form: x = theta^*(base) with theta the surjection.
  Simplex base(int n, Index x) const { return {levels_[n].base_dim[x], levels_[n].base[x]}; }
  std::span<const std::int8_t> ez_surjection(int n, Index x) const {
    return {levels_[n].surj.data() + static_cast<std::size_t>(x) * (n + 1),
            static_cast<std::size_t>(n + 1)};
  }

  Index vertex(int n, Index x, int j) const { return levels_[n].verts[x * (n + 1) + j]; }
  std::vector<Index> vertices(int n, Index x) const;

  // theta^*(x) for a monotone theta : [p] -> [n], given as its value list.
  Index apply(int n, Index x, std::span<const int> theta) const;

 private:
  friend class SSetBuilder;
  struct Level {
    std::vector<std::string> ids;
    std::vector<Index> face;   // |X_n| * (n+1)
    std::vector<Index> degen;  // |X_n| * (n+1), empty at the top level
    std::vector<char> nondeg;
    std::vector<Index> nondeg_list;
    std::vector<Index> base;
    std::vector<std::int8_t> base_dim;
    std::vector<std::int8_t> surj;
    std::vector<Index> verts;
  };
  std::vector<Level> levels_;
  std::unordered_map<std::string, Simplex> by_id_;
  bool stable_ = false;
  std::optional<int> cosk_;
};

class SSetBuilder {
 public:
  explicit SSetBuilder(int trunc_dim);

  Index add(int n, std::string id);
  Index size(int n) const { return static_cast<Index>(levels_[n].ids.size()); }
  void set_face(int n, int i, Index x, Index y);
  void set_degen(int n, int i, Index x, Index y);

  // Validates totality and id uniqueness, computes normal forms. A claimed
  // stable flag is dropped if the top level holds a nondegenerate simplex.
  SSetPtr finish(bool stable, std::optional<int> coskeletal = std::nullopt);

 private:
  int trunc_;
  std::vector<SSet::Level> levels_;
};

// Human-readable list of violated simplicial identities / normal-form
// inconsistencies; empty when the object is sound.
std::vector<std::string> audit(const SSet& X);

// ---------------------------------------------------------------------------

class SMap {
 public:
  SMap() = default;
  SMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Index>> assignment);

  const SSetPtr& source() const { return src_; }
  const SSetPtr& target() const { return dst_; }
  int levels() const { return static_cast<int>(assign_.size()); }  // stored levels 0..levels()-1
  Index operator()(int n, Index x) const { return assign_[n][x]; }
  Simplex operator()(Simplex s) const { return {s.dim, assign_[s.dim][s.index]}; }
  const std::vector<Index>& level(int n) const { return assign_[n]; }
  const std::vector<std::vector<Index>>& assignment() const { return assign_; }

  friend bool operator==(const SMap& a, const SMap& b) { return a.assign_ == b.assign_; }

 private:
  SSetPtr src_, dst_;
  std::vector<std::vector<Index>> assign_;
};

// Checks that the assignment commutes with every stored face and degeneracy.
bool is_simplicial(const SMap& f);
SMap compose(const SMap& g, const SMap& f);  // g . f
SMap identity_map(const SSetPtr& X);
bool is_injective(const SMap& f);
bool is_surjective(const SMap& f);
bool is_bijective(const SMap& f);
// Builds a map from the images of the source's nondegenerate simplices,
// extending to degenerate simplices through the normal form.
SMap extend_from_nondegenerate(const SSetPtr& source, const SSetPtr& target,
                               const std::vector<std::vector<Index>>& nondeg_images);

// ---------------------------------------------------------------------------

// A subcomplex given by a per-level membership mask; always closed under faces
// and degeneracies.
class Subcomplex {
 public:
  Subcomplex() = default;
  static Subcomplex empty(const SSet& X);
  static Subcomplex full(const SSet& X);
  // Closure of a set of simplices under faces and degeneracies.
  static Subcomplex generated(const SSet& X, std::span<const Simplex> generators);
  static Subcomplex image(const SMap& f);
  // Throws InvalidArgument if the mask is not closed under faces/degeneracies.
  static Subcomplex from_mask(const SSet& X, std::vector<std::vector<char>> mask);

  bool contains(Simplex s) const { return mask_[s.dim][s.index] != 0; }
  bool contains(int n, Index x) const { return mask_[n][x] != 0; }
  const std::vector<std::vector<char>>& mask() const { return mask_; }
  std::size_t count(int n) const;
  Subcomplex unite(const Subcomplex& other) const;
  Subcomplex intersect(const Subcomplex& other) const;
  friend bool operator==(const Subcomplex&, const Subcomplex&) = default;

 private:
  std::vector<std::vector<char>> mask_;
};

struct Inclusion {
  SSetPtr sub;
  SMap map;  // sub -> ambient
};

// Materialises a subcomplex, keeping identifiers and relative order. The
// stable flag defaults to the ambient's.
Inclusion materialize(const SSetPtr& X, const Subcomplex& A, std::optional<bool> stable = std::nullopt);

struct BiPointed {
  SSetPtr space;
  Index a = 0;
  Index b = 0;
  static BiPointed of(SSetPtr space, std::string_view a, std::string_view b);
};

}  // namespace qcat
