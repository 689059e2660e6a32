#include "qcat/necklace.hpp"

#include <functional>
#include <map>
#include <numeric>

#include "qcat/build.hpp"

namespace qcat {

int Necklace::vertex_count() const { return 1 + std::accumulate(beads.begin(), beads.end(), 0); }

std::vector<int> Necklace::joints() const {
  std::vector<int> j{0};
  for (int b : beads) j.push_back(j.back() + b);
  return j;
}

SSetPtr Necklace::simplex(int D) const { return delta(vertex_count() - 1, D); }

Inclusion Necklace::realize(int D) const {
  auto s = simplex(D);
  auto j = joints();
  std::vector<std::vector<int>> sets;
  for (std::size_t i = 0; i + 1 < j.size(); ++i) {
    std::vector<int> v(j[i + 1] - j[i] + 1);
    std::iota(v.begin(), v.end(), j[i]);
    sets.push_back(v);
  }
  if (sets.empty()) sets.push_back({0});
  return materialize(s, simplex_faces(*s, sets));
}

Inclusion Necklace::spine(int D) const {
  auto s = simplex(D);
  std::vector<std::vector<int>> sets;
  for (int i = 0; i + 1 < vertex_count(); ++i) sets.push_back({i, i + 1});
  if (sets.empty()) sets.push_back({0});
  return materialize(s, simplex_faces(*s, sets));
}

std::string Necklace::label() const {
  std::string s = "N(";
  for (std::size_t i = 0; i < beads.size(); ++i) s += (i ? "," : "") + std::to_string(beads[i]);
  return s + ")";
}

std::vector<Necklace> necklaces_up_to(int V) {
  std::vector<Necklace> out{Necklace{}};
  std::function<void(int, std::vector<int>&)> rec = [&](int left, std::vector<int>& cur) {
    if (left == 0) {
      out.push_back({cur});
      return;
    }
    for (int b = 1; b <= left; ++b) {
      cur.push_back(b);
      rec(left - b, cur);
      cur.pop_back();
    }
  };
  for (int v = 2; v <= V; ++v) {
    std::vector<int> cur;
    rec(v - 1, cur);
  }
  return out;
}

namespace {

struct Object {
  Necklace T;
  std::vector<Index> images;  // one simplex of S per bead
};

Index iterated_degeneracy(const SSet& S, Index v, int n) {
  for (int l = 0; l < n; ++l) v = S.degen(l, 0, v);
  return v;
}

// Necklace maps T -> T' over S, as vertex maps.
std::vector<std::vector<int>> maps_between(const SSet& S, Index a, const Object& x, const Object& y) {
  const int v = x.T.vertex_count(), w = y.T.vertex_count();
  std::vector<std::vector<int>> out;
  if (y.T.beads.empty()) {
    if (!x.T.beads.empty() && w == 1) {
      for (std::size_t i = 0; i < x.T.beads.size(); ++i)
        if (x.images[i] != iterated_degeneracy(S, a, x.T.beads[i])) return out;
    }
    if (v == 1 || !x.T.beads.empty()) out.push_back(std::vector<int>(v, 0));
    return out;
  }
  if (x.T.beads.empty()) return out;  // the point cannot hit both ends of a nonempty necklace
  const auto jx = x.T.joints(), jy = y.T.joints();
  std::vector<int> g(v);
  std::function<void(int)> rec = [&](int p) {
    if (p == v) {
      if (g.back() != w - 1) return;
      for (std::size_t i = 0; i + 1 < jx.size(); ++i) {
        const int lo = g[jx[i]], hi = g[jx[i + 1]];
        int bead = -1;
        for (std::size_t l = 0; l + 1 < jy.size() && bead < 0; ++l)
          if (jy[l] <= lo && hi <= jy[l + 1]) bead = static_cast<int>(l);
        if (bead < 0) return;
        std::vector<int> theta;
        for (int t = jx[i]; t <= jx[i + 1]; ++t) theta.push_back(g[t] - jy[bead]);
        if (S.apply(y.T.beads[bead], y.images[bead], theta) != x.images[i]) return;
      }
      out.push_back(g);
      return;
    }
    for (int t = p == 0 ? 0 : g[p - 1]; t < (p == 0 ? 1 : w); ++t) {
      g[p] = t;
      rec(p + 1);
    }
  };
  rec(0);
  return out;
}

std::string object_name(const SSet& S, const Object& o) {
  if (o.T.beads.empty()) return "pt";
  std::string s = o.T.label() + ":";
  for (std::size_t i = 0; i < o.images.size(); ++i) s += (i ? "|" : "") + S.id(o.T.beads[i], o.images[i]);
  return s;
}

}  // namespace

NecklaceModel necklace_model(const BiPointed& Sp, int V, int m) {
  const SSet& S = *Sp.space;
  if (V < 1 || m < 0) throw InvalidArgument("necklace_model: needs V >= 1 and m >= 0");
  if (V - 1 > S.trunc_dim()) throw InvalidArgument("necklace_model: beads exceed the truncation of S");
  std::vector<Object> objs;
  for (const auto& T : necklaces_up_to(V)) {
    if (T.beads.empty()) {
      if (Sp.a == Sp.b) objs.push_back({T, {}});
      continue;
    }
    std::vector<Index> cur;
    std::function<void(std::size_t, Index)> rec = [&](std::size_t i, Index at) {
      if (i == T.beads.size()) {
        if (at == Sp.b) objs.push_back({T, cur});
        return;
      }
      const int n = T.beads[i];
      for (Index x = 0; x < S.size(n); ++x) {
        if (S.vertex(n, x, 0) != at) continue;
        cur.push_back(x);
        rec(i + 1, S.vertex(n, x, n));
        cur.pop_back();
      }
    };
    rec(0, Sp.a);
  }
  NecklaceModel M;
  M.V = V;
  M.m = m;
  for (const auto& o : objs) M.category.add_object(object_name(S, o));
  std::map<std::tuple<int, int, std::vector<int>>, int> index;
  std::vector<std::tuple<int, int, std::vector<int>>> info;
  for (int i = 0; i < static_cast<int>(objs.size()); ++i)
    for (int j = 0; j < static_cast<int>(objs.size()); ++j)
      for (auto& g : maps_between(S, Sp.a, objs[i], objs[j])) {
        std::string name = "f" + std::to_string(i) + "." + std::to_string(j) + ":";
        for (int t : g) name += std::to_string(t) + ",";
        name.pop_back();
        const int id = M.category.add_morphism(name, i, j);
        index[{i, j, g}] = id;
        info.push_back({i, j, g});
      }
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) {
    std::vector<int> id(objs[i].T.vertex_count());
    std::iota(id.begin(), id.end(), 0);
    M.category.set_identity(i, index.at({i, i, id}));
  }
  for (int f = 0; f < static_cast<int>(info.size()); ++f) {
    const auto& [i, j, gf] = info[f];
    for (int g = 0; g < static_cast<int>(info.size()); ++g) {
      const auto& [j2, k, gg] = info[g];
      if (j2 != j) continue;
      std::vector<int> comp(gf.size());
      for (std::size_t t = 0; t < gf.size(); ++t) comp[t] = gg[gf[t]];
      M.category.set_composite(g, f, index.at({i, k, comp}));
    }
  }
  M.category.finalize();
  M.nerve = nerve(M.category, m);
  return M;
}

}  // namespace qcat
