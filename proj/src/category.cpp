#include "qcat/category.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace qcat {

int FinCat::add_object(std::string name) {
  if (frozen_) throw InvalidArgument("category already finalized");
  objects_.push_back(std::move(name));
  identity_.push_back(-1);
  return object_count() - 1;
}

int FinCat::add_morphism(std::string name, int src, int dst) {
  if (frozen_) throw InvalidArgument("category already finalized");
  if (src < 0 || src >= object_count() || dst < 0 || dst >= object_count())
    throw InvalidArgument("morphism '" + name + "' has an unknown endpoint");
  morphisms_.push_back({std::move(name), src, dst});
  return morphism_count() - 1;
}

void FinCat::set_identity(int o, int f) {
  if (frozen_) throw InvalidArgument("category already finalized");
  identity_.at(o) = f;
}

void FinCat::set_composite(int g, int f, int gf) {
  if (frozen_) throw InvalidArgument("category already finalized");
  auto [it, fresh] = pending_.emplace(std::pair{g, f}, gf);
  if (!fresh && it->second != gf)
    throw InvalidArgument("conflicting composites for (" + morphisms_.at(g).name + ", " + morphisms_.at(f).name + ")");
}

void FinCat::finalize() {
  if (frozen_) return;
  const int M = morphism_count();
  {
    std::unordered_map<std::string, int> seen;
    for (const auto& o : objects_)
      if (!seen.emplace(o, 0).second) throw InvalidArgument("duplicate object '" + o + "'");
    std::unordered_map<std::string, int> ms;
    for (const auto& m : morphisms_)
      if (!ms.emplace(m.name, 0).second) throw InvalidArgument("duplicate morphism '" + m.name + "'");
  }
  out_.assign(object_count(), {});
  pos_.assign(M, 0);
  for (int g = 0; g < M; ++g) {
    pos_[g] = static_cast<int>(out_[morphisms_[g].src].size());
    out_[morphisms_[g].src].push_back(g);
  }
  after_.assign(M, {});
  for (int f = 0; f < M; ++f) after_[f].assign(out_[morphisms_[f].dst].size(), -1);
  for (const auto& [gf_pair, h] : pending_) {
    auto [g, f] = gf_pair;
    if (g < 0 || g >= M || f < 0 || f >= M || h < 0 || h >= M) throw InvalidArgument("composition entry out of range");
    if (morphisms_[g].src != morphisms_[f].dst)
      throw InvalidArgument("composite given for non-composable pair (" + morphisms_[g].name + ", " + morphisms_[f].name + ")");
    if (morphisms_[h].src != morphisms_[f].src || morphisms_[h].dst != morphisms_[g].dst)
      throw InvalidArgument("composite of (" + morphisms_[g].name + ", " + morphisms_[f].name + ") has wrong endpoints");
    after_[f][pos_[g]] = h;
  }
  frozen_ = true;  // compose() below reads the tables
  try {
    validate_laws();
  } catch (...) {
    frozen_ = false;  // a failed finalize leaves the category editable
    throw;
  }
  pending_.clear();
}

void FinCat::validate_laws() const {
  const int M = morphism_count();
  for (int o = 0; o < object_count(); ++o) {
    int id = identity_[o];
    if (id < 0 || morphisms_[id].src != o || morphisms_[id].dst != o)
      throw InvalidArgument("object '" + objects_[o] + "' lacks a valid identity");
  }
  for (int f = 0; f < M; ++f)
    for (int g : out_[morphisms_[f].dst])
      if (compose(g, f) < 0)
        throw InvalidArgument("missing composite (" + morphisms_[g].name + ", " + morphisms_[f].name + ")");
  for (int f = 0; f < M; ++f) {
    if (compose(identity_[morphisms_[f].dst], f) != f || compose(f, identity_[morphisms_[f].src]) != f)
      throw InvalidArgument("identity law fails for '" + morphisms_[f].name + "'");
  }
  for (int f = 0; f < M; ++f)
    for (int g : out_[morphisms_[f].dst])
      for (int h : out_[morphisms_[g].dst])
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
          throw InvalidArgument("associativity fails on (" + morphisms_[h].name + ", " + morphisms_[g].name + ", " +
                                morphisms_[f].name + ")");
}

int FinCat::compose(int g, int f) const {
  if (!frozen_) throw InvalidArgument("category not finalized");
  if (morphisms_[g].src != morphisms_[f].dst) return -1;
  return after_[f][pos_[g]];
}

std::vector<int> FinCat::hom(int a, int b) const {
  std::vector<int> r;
  for (int f : out_.at(a))
    if (morphisms_[f].dst == b) r.push_back(f);
  return r;
}

std::optional<int> FinCat::find_object(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCat::find_morphism(const std::string& name) const {
  for (int f = 0; f < morphism_count(); ++f)
    if (morphisms_[f].name == name) return f;
  return std::nullopt;
}

std::optional<int> FinCat::inverse(int f) const {
  const auto& m = morphisms_[f];
  for (int g : hom(m.dst, m.src))
    if (compose(g, f) == identity_[m.src] && compose(f, g) == identity_[m.dst]) return g;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {
struct ChainHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};
}  // namespace

SSetPtr nerve(const FinCat& C, int D) {
  if (D < 0) throw InvalidArgument("nerve: negative truncation");
  // chains[n] holds composable strings f_1 .. f_n (f_1 applied first)
  std::vector<std::vector<std::vector<int>>> chains(D + 1);
  std::vector<std::unordered_map<std::vector<int>, Index, ChainHash>> where(D + 1);
  SSetBuilder b(D);
  for (int o = 0; o < C.object_count(); ++o) b.add(0, C.object(o));
  for (int n = 1; n <= D; ++n) {
    if (n == 1) {
      for (int f = 0; f < C.morphism_count(); ++f) chains[1].push_back({f});
    } else {
      for (const auto& c : chains[n - 1])
        for (int g : C.out(C.morphism(c.back()).dst)) {
          auto e = c;
          e.push_back(g);
          chains[n].push_back(std::move(e));
        }
    }
    for (Index x = 0; x < static_cast<Index>(chains[n].size()); ++x) {
      const auto& c = chains[n][x];
      std::string id;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) id += '|';
        id += C.morphism(c[i]).name;
      }
      b.add(n, std::move(id));
      where[n][c] = x;
    }
  }
  auto vertex_at = [&](const std::vector<int>& c, int i) {
    return i == 0 ? C.morphism(c[0]).src : C.morphism(c[i - 1]).dst;
  };
  for (int o = 0; o < C.object_count() && D > 0; ++o) b.set_degen(0, 0, o, where[1].at({C.identity(o)}));
  for (int n = 1; n <= D; ++n)
    for (Index x = 0; x < static_cast<Index>(chains[n].size()); ++x) {
      const auto& c = chains[n][x];
      for (int i = 0; i <= n; ++i) {
        if (n == 1) {
          b.set_face(1, i, x, i == 0 ? C.morphism(c[0]).dst : C.morphism(c[0]).src);
        } else {
          std::vector<int> f;
          if (i == 0) {
            f.assign(c.begin() + 1, c.end());
          } else if (i == n) {
            f.assign(c.begin(), c.end() - 1);
          } else {
            f = c;
            f[i - 1] = C.compose(c[i], c[i - 1]);
            f.erase(f.begin() + i);
          }
          b.set_face(n, i, x, where[n - 1].at(f));
        }
        if (n < D) {
          auto g = c;
          g.insert(g.begin() + i, C.identity(vertex_at(c, i)));
          b.set_degen(n, i, x, where[n + 1].at(g));
        }
      }
    }
  return b.finish(true, 2);
}

// ---------------------------------------------------------------------------

HoCategory ho_category(const QuasiCategory& Q) {
  if (Q.verified_dim() < 3)
    throw NotVerifiedQuasiCategory("homotopy category needs inner horns verified up to dimension 3 (have " +
                                   std::to_string(Q.verified_dim()) + ")");
  const SSet& X = *Q.space();
  const Index E = X.size(1);
  // f ~ g iff some 2-simplex has d2 = f, d1 = g and d0 degenerate
  std::vector<Index> parent(E);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index s = 0; s < X.size(2); ++s) {
    Index d0 = X.face(2, 0, s);
    if (X.nondegenerate(1, d0)) continue;
    Index a = find(X.face(2, 2, s)), c = find(X.face(2, 1, s));
    if (a != c) parent[std::max(a, c)] = std::min(a, c);
  }
  HoCategory H;
  H.source = Q.space();
  H.edge_class.assign(E, -1);
  // Class representatives: lexicographically least identifier.
  std::vector<Index> rep(E, -1);
  for (Index e = 0; e < E; ++e) {
    Index r = find(e);
    if (rep[r] < 0 || X.id(1, e) < X.id(1, rep[r])) rep[r] = e;
  }
  for (Index v = 0; v < X.size(0); ++v) H.base.add_object(X.id(0, v));
  std::vector<int> class_of_root(E, -1);
  std::vector<Index> roots;
  for (Index e = 0; e < E; ++e)
    if (find(e) == e) roots.push_back(e);
  std::sort(roots.begin(), roots.end(), [&](Index a, Index b) { return X.id(1, rep[a]) < X.id(1, rep[b]); });
  for (Index r : roots) {
    Index e = rep[r];
    class_of_root[r] = H.base.add_morphism(X.id(1, e), X.face(1, 1, e), X.face(1, 0, e));
  }
  for (Index e = 0; e < E; ++e) H.edge_class[e] = class_of_root[find(e)];
  for (Index v = 0; v < X.size(0); ++v) H.base.set_identity(v, H.edge_class[X.degen(0, 0, v)]);
  std::map<std::pair<int, int>, int> comp;
  for (Index s = 0; s < X.size(2); ++s) {
    int f = H.edge_class[X.face(2, 2, s)], g = H.edge_class[X.face(2, 0, s)], h = H.edge_class[X.face(2, 1, s)];
    auto [it, fresh] = comp.emplace(std::pair{g, f}, h);
    if (!fresh && it->second != h)
      throw FillerNotFound("composite of '" + H.base.morphism(g).name + "' after '" + H.base.morphism(f).name +
                           "' is not well defined");
  }
  for (int f = 0; f < H.base.morphism_count(); ++f)
    for (int g = 0; g < H.base.morphism_count(); ++g)
      if (H.base.morphism(g).src == H.base.morphism(f).dst) {
        auto it = comp.find({g, f});
        if (it == comp.end())
          throw FillerNotFound("no 2-simplex composes '" + H.base.morphism(g).name + "' after '" +
                               H.base.morphism(f).name + "'");
        H.base.set_composite(g, f, it->second);
      }
  try {
    H.base.finalize();
  } catch (const InvalidArgument& e) {
    throw FillerNotFound(std::string("homotopy category is not a category: ") + e.what());
  }
  return H;
}

std::vector<std::vector<int>> iso_classes(const HoCategory& H) {
  const FinCat& C = H.base;
  std::vector<int> parent(C.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int f = 0; f < C.morphism_count(); ++f)
    if (C.invertible(f)) {
      int a = find(C.morphism(f).src), b = find(C.morphism(f).dst);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<int>> groups;
  for (int o = 0; o < C.object_count(); ++o) groups[find(o)].push_back(o);
  std::vector<std::vector<int>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  return out;
}

}  // namespace qcat
