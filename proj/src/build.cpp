#include "qcat/build.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "combinatorics.hpp"
#include "qcat/enumerate.hpp"

namespace qcat {

namespace {

using Seq = std::vector<int>;

// Builds an object whose simplices are vertex sequences (closed under deleting
// and repeating entries), with faces deleting and degeneracies repeating.
SSetPtr from_sequences(int D, const std::vector<std::vector<Seq>>& levels,
                       const std::function<std::string(const Seq&)>& label, bool stable,
                       std::optional<int> cosk) {
  SSetBuilder b(D);
  std::vector<std::map<Seq, Index>> where(D + 1);
  for (int n = 0; n <= D; ++n)
    for (const auto& s : levels[n]) where[n][s] = b.add(n, label(s));
  for (int n = 0; n <= D; ++n)
    for (const auto& [s, x] : where[n])
      for (int i = 0; i <= n; ++i) {
        if (n > 0) {
          Seq f = s;
          f.erase(f.begin() + i);
          b.set_face(n, i, x, where[n - 1].at(f));
        }
        if (n < D) {
          Seq g = s;
          g.insert(g.begin() + i, s[i]);
          b.set_degen(n, i, x, where[n + 1].at(g));
        }
      }
  return b.finish(stable, cosk);
}

void monotone_sequences(int len, int maxv, Seq& cur, std::vector<Seq>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v <= maxv; ++v) {
    cur.push_back(v);
    monotone_sequences(len, maxv, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string simplex_label(const std::vector<int>& vertices) { return sequence_label(vertices); }

SSetPtr delta(int n, int D) {
  if (n < 0) throw InvalidArgument("delta: n must be non-negative");
  if (D < 0) D = std::max(kDefaultTrunc, n + 1);
  std::vector<std::vector<Seq>> levels(D + 1);
  for (int m = 0; m <= D; ++m) {
    Seq cur;
    monotone_sequences(m + 1, n, cur, levels[m]);
  }
  return from_sequences(D, levels, sequence_label, D >= n + 1, 1);
}

SSetPtr empty_sset(int D) { return SSetBuilder(D).finish(true); }

Subcomplex simplex_faces(const SSet& dn, const std::vector<std::vector<int>>& vertex_sets) {
  std::vector<Simplex> gens;
  for (const auto& v : vertex_sets) gens.push_back(dn.at(simplex_label(v)));
  return Subcomplex::generated(dn, gens);
}

SSetPtr boundary(int n, int D) {
  if (n < 1) throw InvalidArgument("boundary: n must be at least 1");
  auto dn = delta(n, D);
  std::vector<std::vector<int>> faces;
  for (int i = 0; i <= n; ++i) {
    std::vector<int> f;
    for (int j = 0; j <= n; ++j)
      if (j != i) f.push_back(j);
    faces.push_back(f);
  }
  // Faces of the honest simplex: nothing nondegenerate is missing above n - 1.
  return materialize(dn, simplex_faces(*dn, faces), true).sub;
}

SSetPtr horn(int n, int k, int D) {
  if (n < 1) throw InvalidArgument("horn: n must be at least 1");
  if (k < 0 || k > n) throw InvalidArgument("horn: k outside 0..n");
  auto dn = delta(n, D);
  std::vector<std::vector<int>> faces;
  for (int i = 0; i <= n; ++i) {
    if (i == k) continue;
    std::vector<int> f;
    for (int j = 0; j <= n; ++j)
      if (j != i) f.push_back(j);
    faces.push_back(f);
  }
  // Faces of the honest simplex: nothing nondegenerate is missing above n - 1.
  return materialize(dn, simplex_faces(*dn, faces), true).sub;
}

SSetPtr e_space(const std::vector<std::string>& S, int D) {
  if (S.empty()) throw InvalidArgument("e_space: the set must be nonempty");
  if (std::set<std::string>(S.begin(), S.end()).size() != S.size())
    throw InvalidArgument("e_space: repeated element");
  if (D < 0) throw InvalidArgument("e_space: negative truncation");
  const int s = static_cast<int>(S.size());
  bool short_labels = true;
  for (const auto& x : S) short_labels = short_labels && x.size() == 1;
  std::vector<std::vector<Seq>> levels(D + 1);
  for (int m = 0; m <= D; ++m) {
    Seq cur(m + 1, 0);
    while (true) {
      levels[m].push_back(cur);
      int i = m;
      while (i >= 0 && cur[i] == s - 1) cur[i--] = 0;
      if (i < 0) break;
      ++cur[i];
    }
  }
  auto label = [&](const Seq& q) {
    std::string out;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!short_labels && i) out += ',';
      out += S[q[i]];
    }
    return out;
  };
  return from_sequences(D, levels, label, s == 1, 0);
}

// ---------------------------------------------------------------------------

ProductResult product(const SSetPtr& X, const SSetPtr& Y) {
  const int D = std::min(X->trunc_dim(), Y->trunc_dim());
  SSetBuilder b(D);
  ProductResult r;
  r.ysize.resize(D + 1);
  std::vector<std::vector<Index>> p1(D + 1), p2(D + 1);
  for (int n = 0; n <= D; ++n) {
    r.ysize[n] = Y->size(n);
    for (Index x = 0; x < X->size(n); ++x)
      for (Index y = 0; y < Y->size(n); ++y) {
        b.add(n, "(" + X->id(n, x) + "," + Y->id(n, y) + ")");
        p1[n].push_back(x);
        p2[n].push_back(y);
      }
  }
  for (int n = 0; n <= D; ++n)
    for (Index x = 0; x < X->size(n); ++x)
      for (Index y = 0; y < Y->size(n); ++y) {
        Index s = r.pair(n, x, y);
        for (int i = 0; i <= n; ++i) {
          if (n > 0) b.set_face(n, i, s, r.pair(n - 1, X->face(n, i, x), Y->face(n, i, y)));
          if (n < D) b.set_degen(n, i, s, r.pair(n + 1, X->degen(n, i, x), Y->degen(n, i, y)));
        }
      }
  const bool stable = X->stable() && Y->stable() &&
                      D >= X->max_nondegenerate_dim() + Y->max_nondegenerate_dim() + 1;
  std::optional<int> cosk;
  if (X->coskeletal_hint() && Y->coskeletal_hint())
    cosk = std::max(*X->coskeletal_hint(), *Y->coskeletal_hint());
  r.object = b.finish(stable, cosk);
  r.pr1 = SMap(r.object, X, std::move(p1));
  r.pr2 = SMap(r.object, Y, std::move(p2));
  return r;
}

SMap product_map(const ProductResult& from, const ProductResult& to, const SMap& f, const SMap& g) {
  const int L = std::min(from.object->trunc_dim(), to.object->trunc_dim());
  if (f.levels() <= L || g.levels() <= L) throw InvalidArgument("product_map: factor maps too short");
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].resize(from.object->size(n));
    for (Index s = 0; s < from.object->size(n); ++s)
      a[n][s] = to.pair(n, f(n, from.pr1(n, s)), g(n, from.pr2(n, s)));
  }
  return SMap(from.object, to.object, std::move(a));
}

// ---------------------------------------------------------------------------

Index JoinResult::part(int n, int i, Index x, Index y) const {
  const int j = n - i - 1;
  const Index ny = j < 0 ? 1 : N->size(j);
  return offsets[n][i + 1] + (i < 0 ? 0 : x) * ny + (j < 0 ? 0 : y);
}

JoinResult::Parts JoinResult::parts(int n, Index s) const {
  const auto& off = offsets[n];
  auto it = std::upper_bound(off.begin(), off.end(), s);
  const int i = static_cast<int>(it - off.begin()) - 2;
  const int j = n - i - 1;
  const Index ny = j < 0 ? 1 : N->size(j);
  const Index r = s - off[i + 1];
  return {i, i < 0 ? Index{0} : r / ny, j < 0 ? Index{0} : r % ny};
}

JoinResult join(const SSetPtr& M0, const SSetPtr& N0, std::optional<int> trunc) {
  const bool both_stable = M0->stable() && N0->stable();
  const int T = trunc ? *trunc
                      : (both_stable ? M0->trunc_dim() + N0->trunc_dim() + 1
                                     : std::min(M0->trunc_dim(), N0->trunc_dim()));
  auto widen = [&](const SSetPtr& X) {
    if (X->trunc_dim() >= T) return X;
    if (!X->stable()) throw InvalidArgument("join: truncation exceeds an unstable factor");
    return retruncate(X, T);
  };
  JoinResult r;
  r.M = widen(M0);
  r.N = widen(N0);
  const SSet& M = *r.M;
  const SSet& N = *r.N;
  auto msize = [&](int i) -> Index { return i < 0 ? 1 : M.size(i); };
  auto nsize = [&](int j) -> Index { return j < 0 ? 1 : N.size(j); };
  r.offsets.resize(T + 1);
  SSetBuilder b(T);
  for (int n = 0; n <= T; ++n) {
    auto& off = r.offsets[n];
    off.assign(n + 3, 0);
    for (int i = -1; i <= n; ++i) off[i + 2] = off[i + 1] + msize(i) * nsize(n - i - 1);
    for (int i = -1; i <= n; ++i) {
      const int j = n - i - 1;
      for (Index x = 0; x < msize(i); ++x)
        for (Index y = 0; y < nsize(j); ++y)
          b.add(n, "(" + (i < 0 ? std::string("-") : M.id(i, x)) + "*" + (j < 0 ? std::string("-") : N.id(j, y)) + ")");
    }
  }
  for (int n = 0; n <= T; ++n)
    for (int i = -1; i <= n; ++i) {
      const int j = n - i - 1;
      for (Index x = 0; x < msize(i); ++x)
        for (Index y = 0; y < nsize(j); ++y) {
          const Index s = r.part(n, i, x, y);
          for (int l = 0; l <= n; ++l) {
            if (n > 0) {
              Index f;
              if (l <= i)
                f = i == 0 ? r.part(n - 1, -1, 0, y) : r.part(n - 1, i - 1, M.face(i, l, x), y);
              else
                f = j == 0 ? r.part(n - 1, i, x, 0) : r.part(n - 1, i, x, N.face(j, l - i - 1, y));
              b.set_face(n, l, s, f);
            }
            if (n < T) {
              Index g = l <= i ? r.part(n + 1, i + 1, M.degen(i, l, x), y)
                               : r.part(n + 1, i, x, N.degen(j, l - i - 1, y));
              b.set_degen(n, l, s, g);
            }
          }
        }
    }
  const bool stable = both_stable && T >= M.max_nondegenerate_dim() + N.max_nondegenerate_dim() + 2;
  r.object = b.finish(stable);
  std::vector<std::vector<Index>> li(T + 1), ri(T + 1);
  for (int n = 0; n <= T; ++n) {
    for (Index x = 0; x < M.size(n); ++x) li[n].push_back(r.part(n, n, x, 0));
    for (Index y = 0; y < N.size(n); ++y) ri[n].push_back(r.part(n, -1, 0, y));
  }
  r.left = SMap(r.M, r.object, std::move(li));
  r.right = SMap(r.N, r.object, std::move(ri));
  return r;
}

SMap join_map(const JoinResult& from, const JoinResult& to, const SMap& f, const SMap& g) {
  const int L = std::min(from.object->trunc_dim(), to.object->trunc_dim());
  if (f.levels() <= L || g.levels() <= L) throw InvalidArgument("join_map: factor maps too short");
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].resize(from.object->size(n));
    for (Index s = 0; s < from.object->size(n); ++s) {
      auto p = from.parts(n, s);
      const int j = n - p.i - 1;
      a[n][s] = to.part(n, p.i, p.i < 0 ? 0 : f(p.i, p.x), j < 0 ? 0 : g(j, p.y));
    }
  }
  return SMap(from.object, to.object, std::move(a));
}

// ---------------------------------------------------------------------------

QuotientResult quotient(const SSetPtr& Xp, const Subcomplex& A, const std::string& label) {
  const SSet& X = *Xp;
  const int D = X.trunc_dim();
  if (static_cast<int>(A.mask().size()) != D + 1) throw InvalidArgument("quotient: subcomplex of a different object");
  Subcomplex::from_mask(X, A.mask());  // rejects non-closed subsets
  SSetBuilder b(D);
  QuotientResult r;
  r.section.resize(D + 1);
  r.collapsed.assign(D + 1, -1);
  std::vector<std::vector<Index>> proj(D + 1);
  for (int n = 0; n <= D; ++n) {
    proj[n].resize(X.size(n));
    for (Index x = 0; x < X.size(n); ++x) {
      if (A.contains(n, x)) {
        if (r.collapsed[n] < 0) {
          r.collapsed[n] = b.add(n, n == 0 ? label : label + "^" + std::to_string(n));
          r.section[n].push_back(-1);
        }
        proj[n][x] = r.collapsed[n];
      } else {
        proj[n][x] = b.add(n, X.id(n, x));
        r.section[n].push_back(x);
      }
    }
  }
  for (int n = 0; n <= D; ++n)
    for (Index q = 0; q < static_cast<Index>(r.section[n].size()); ++q) {
      const Index x = r.section[n][q];
      for (int i = 0; i <= n; ++i) {
        if (n > 0) b.set_face(n, i, q, x < 0 ? r.collapsed[n - 1] : proj[n - 1][X.face(n, i, x)]);
        if (n < D) b.set_degen(n, i, q, x < 0 ? r.collapsed[n + 1] : proj[n + 1][X.degen(n, i, x)]);
      }
    }
  r.object = b.finish(X.stable());
  r.projection = SMap(Xp, r.object, std::move(proj));
  return r;
}

SMap quotient_map(const QuotientResult& from, const QuotientResult& to, const SMap& f) {
  const int L = std::min(from.object->trunc_dim(), to.object->trunc_dim());
  if (f.levels() <= L) throw InvalidArgument("quotient_map: map too short");
  const SSet& X = *from.projection.source();
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    for (Index x = 0; x < X.size(n); ++x)
      if (from.projection(n, x) == from.collapsed[n] && to.projection(n, f(n, x)) != to.collapsed[n])
        throw InvalidArgument("quotient_map: map does not carry the collapsed subcomplex into the target's");
    a[n].resize(from.object->size(n));
    for (Index q = 0; q < from.object->size(n); ++q) {
      const Index x = from.section[n][q];
      a[n][q] = x < 0 ? to.collapsed[n] : to.projection(n, f(n, x));
    }
  }
  return SMap(from.object, to.object, std::move(a));
}

// ---------------------------------------------------------------------------

namespace {
struct UnionFind {
  std::vector<Index> p;
  explicit UnionFind(std::size_t n) : p(n) {
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Index>(i);
  }
  Index find(Index x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};
}  // namespace

PushoutResult pushout(const SMap& f, const SMap& g) {
  if (f.source() != g.source()) throw InvalidArgument("pushout: maps must share their source");
  const SSet& B = *f.target();
  const SSet& C = *g.target();
  const int D = std::min({f.levels() - 1, g.levels() - 1, B.trunc_dim(), C.trunc_dim()});
  const SSet& A = *f.source();
  std::vector<std::vector<Index>> cls(D + 1);
  PushoutResult r;
  r.reps.resize(D + 1);
  for (int n = 0; n <= D; ++n) {
    const Index nb = B.size(n), nc = C.size(n);
    UnionFind uf(nb + nc);
    for (Index a = 0; a < A.size(n); ++a) uf.unite(f(n, a), nb + g(n, a));
    cls[n].assign(nb + nc, -1);
    std::vector<Index> root_class(nb + nc, -1);
    for (Index e = 0; e < nb + nc; ++e) {
      Index rt = uf.find(e);
      if (root_class[rt] < 0) {
        root_class[rt] = static_cast<Index>(r.reps[n].size());
        r.reps[n].push_back({e >= nb, e >= nb ? e - nb : e});
      } else if (e >= nb && !r.reps[n][root_class[rt]].c_side) {
        r.reps[n][root_class[rt]] = {true, e - nb};
      }
      cls[n][e] = root_class[rt];
    }
  }
  auto rep_id = [&](int n, const PushoutResult::Rep& rp, const std::string& pre_b, const std::string& pre_c) {
    return rp.c_side ? pre_c + C.id(n, rp.index) : pre_b + B.id(n, rp.index);
  };
  bool collide = false;
  {
    std::set<std::string> seen;
    for (int n = 0; n <= D && !collide; ++n)
      for (const auto& rp : r.reps[n])
        if (!seen.insert(rep_id(n, rp, "", "")).second) {
          collide = true;
          break;
        }
  }
  const std::string pb = collide ? "b:" : "", pc = collide ? "c:" : "";
  SSetBuilder bld(D);
  for (int n = 0; n <= D; ++n)
    for (const auto& rp : r.reps[n]) bld.add(n, rep_id(n, rp, pb, pc));
  for (int n = 0; n <= D; ++n) {
    const Index nb = B.size(n);
    for (Index q = 0; q < static_cast<Index>(r.reps[n].size()); ++q) {
      const auto& rp = r.reps[n][q];
      for (int i = 0; i <= n; ++i) {
        if (n > 0) {
          Index fx = rp.c_side ? B.size(n - 1) + C.face(n, i, rp.index) : B.face(n, i, rp.index);
          bld.set_face(n, i, q, cls[n - 1][fx]);
        }
        if (n < D) {
          Index sx = rp.c_side ? B.size(n + 1) + C.degen(n, i, rp.index) : B.degen(n, i, rp.index);
          bld.set_degen(n, i, q, cls[n + 1][sx]);
        }
      }
    }
    (void)nb;
  }
  r.object = bld.finish(B.stable() && C.stable() && D == B.trunc_dim() && D == C.trunc_dim());
  std::vector<std::vector<Index>> fb(D + 1), fc(D + 1);
  for (int n = 0; n <= D; ++n) {
    const Index nb = B.size(n);
    fb[n].assign(cls[n].begin(), cls[n].begin() + nb);
    fc[n].assign(cls[n].begin() + nb, cls[n].end());
  }
  // Cone maps are recorded on the common levels only.
  auto cut = [&](const SSetPtr& X) { return X->trunc_dim() == D ? X : retruncate(X, D); };
  r.from_b = SMap(cut(f.target()), r.object, std::move(fb));
  r.from_c = SMap(cut(g.target()), r.object, std::move(fc));
  return r;
}

SMap pushout_map(const PushoutResult& from, const PushoutResult& to, const SMap& fb, const SMap& fc) {
  const int L = std::min(from.object->trunc_dim(), to.object->trunc_dim());
  if (fb.levels() <= L || fc.levels() <= L) throw InvalidArgument("pushout_map: maps too short");
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].resize(from.object->size(n));
    for (Index q = 0; q < from.object->size(n); ++q) {
      const auto& rp = from.reps[n][q];
      a[n][q] = rp.c_side ? to.from_c(n, fc(n, rp.index)) : to.from_b(n, fb(n, rp.index));
    }
  }
  SMap m(from.object, to.object, std::move(a));
  if (!is_simplicial(m)) throw InvalidArgument("pushout_map: maps are not compatible with the gluing");
  return m;
}

PullbackResult pullback(const SMap& f, const SMap& g) {
  if (f.target() != g.target()) throw InvalidArgument("pullback: maps must share their target");
  const SSet& B = *f.source();
  const SSet& C = *g.source();
  const int D = std::min(f.levels(), g.levels()) - 1;
  SSetBuilder b(D);
  std::vector<std::unordered_map<std::int64_t, Index>> where(D + 1);
  std::vector<std::vector<Index>> p1(D + 1), p2(D + 1);
  for (int n = 0; n <= D; ++n) {
    std::unordered_map<Index, std::vector<Index>> over;
    for (Index c = 0; c < C.size(n); ++c) over[g(n, c)].push_back(c);
    for (Index x = 0; x < B.size(n); ++x) {
      auto it = over.find(f(n, x));
      if (it == over.end()) continue;
      for (Index c : it->second) {
        Index s = b.add(n, "(" + B.id(n, x) + "," + C.id(n, c) + ")");
        where[n][static_cast<std::int64_t>(x) * C.size(n) + c] = s;
        p1[n].push_back(x);
        p2[n].push_back(c);
      }
    }
  }
  for (int n = 0; n <= D; ++n)
    for (Index s = 0; s < static_cast<Index>(p1[n].size()); ++s)
      for (int i = 0; i <= n; ++i) {
        if (n > 0) {
          Index x = B.face(n, i, p1[n][s]), c = C.face(n, i, p2[n][s]);
          b.set_face(n, i, s, where[n - 1].at(static_cast<std::int64_t>(x) * C.size(n - 1) + c));
        }
        if (n < D) {
          Index x = B.degen(n, i, p1[n][s]), c = C.degen(n, i, p2[n][s]);
          b.set_degen(n, i, s, where[n + 1].at(static_cast<std::int64_t>(x) * C.size(n + 1) + c));
        }
      }
  const bool stable = B.stable() && C.stable() && D == B.trunc_dim() && D == C.trunc_dim() &&
                      D >= B.max_nondegenerate_dim() + C.max_nondegenerate_dim() + 1;
  std::optional<int> cosk;
  const SSet& T = *f.target();
  if (B.coskeletal_hint() && C.coskeletal_hint() && T.coskeletal_hint())
    cosk = std::max({*B.coskeletal_hint(), *C.coskeletal_hint(), *T.coskeletal_hint()});
  PullbackResult r;
  r.object = b.finish(stable, cosk);
  auto cut = [&](const SSetPtr& X) { return X->trunc_dim() == D ? X : retruncate(X, D); };
  r.pr1 = SMap(r.object, cut(f.source()), std::move(p1));
  r.pr2 = SMap(r.object, cut(g.source()), std::move(p2));
  return r;
}

// ---------------------------------------------------------------------------

Inclusion skeleton(const SSetPtr& X, int k) {
  if (k < 0 || k > X->trunc_dim()) throw InvalidArgument("skeleton: k outside 0..trunc_dim");
  std::vector<Simplex> gens;
  for (int n = 0; n <= k; ++n)
    for (Index x : X->nondegenerate_simplices(n)) gens.push_back({n, x});
  auto A = Subcomplex::generated(*X, gens);
  // Everything above k is degenerate, so a truncation above k determines the skeleton.
  auto inc = materialize(X, A, X->stable() || k < X->trunc_dim());
  return inc;
}

namespace {

// Nondegenerate simplices of sk_k(Delta^n), addressed by vertex subset, and the
// maps sk_k(Delta^n) -> X.
struct SkeletalSimplex {
  SSetPtr object;                           // sk_k Delta^n, truncated at k+1
  std::vector<Simplex> cells;               // nondegenerate, dims <= k, fixed order
  std::map<std::vector<int>, std::size_t> pos;  // vertex subset -> position in cells
};

SkeletalSimplex skeletal_simplex(int n, int k) {
  SkeletalSimplex s;
  auto dn = delta(n, std::max(k + 1, 1));
  auto inc = skeleton(dn, std::min(k, n));
  s.object = inc.sub;
  for (int d = 0; d <= std::min(k, n); ++d)
    for (Index x : s.object->nondegenerate_simplices(d)) {
      std::vector<int> verts;
      for (Index v : s.object->vertices(d, x)) verts.push_back(std::stoi(s.object->id(0, v)));
      s.pos[verts] = s.cells.size();
      s.cells.push_back({d, x});
    }
  return s;
}

// Restriction of an n-simplex x of X to the cells of sk_k Delta^n.
std::vector<Index> restrict_simplex(const SSet& X, int n, Index x, const SkeletalSimplex& s) {
  std::vector<Index> key(s.cells.size());
  for (const auto& [verts, p] : s.pos) key[p] = X.apply(n, x, verts);
  return key;
}

}  // namespace

SSetPtr coskeleton(const SSetPtr& Xp, int k) {
  const SSet& X = *Xp;
  const int D = X.trunc_dim();
  if (k < 0 || k > D) throw InvalidArgument("coskeleton: k outside 0..trunc_dim");
  SSetBuilder b(D);
  // level n > k: elements are keys (images of the cells of sk_k Delta^n)
  std::vector<std::vector<std::vector<Index>>> keys(D + 1);
  std::vector<std::map<std::vector<Index>, Index>> where(D + 1);
  std::vector<SkeletalSimplex> sk(D + 1);
  for (int n = 0; n <= D; ++n) sk[n] = skeletal_simplex(n, k);
  for (int n = 0; n <= D; ++n) {
    if (n <= k) {
      for (Index x = 0; x < X.size(n); ++x) {
        auto key = restrict_simplex(X, n, x, sk[n]);
        where[n][key] = b.add(n, X.id(n, x));
        keys[n].push_back(std::move(key));
      }
      continue;
    }
    std::vector<std::vector<Index>> found;
    visit_maps(sk[n].object, Xp, {}, {}, [&](const std::vector<std::vector<Index>>& img) {
      std::vector<Index> key(sk[n].cells.size());
      for (std::size_t c = 0; c < key.size(); ++c) key[c] = img[sk[n].cells[c].dim][sk[n].cells[c].index];
      found.push_back(std::move(key));
      return true;
    });
    std::sort(found.begin(), found.end());
    for (auto& key : found) {
      std::string label = "<";
      bool first = true;
      for (std::size_t c = 0; c < key.size(); ++c)
        if (sk[n].cells[c].dim == k) {
          if (!first) label += ",";
          label += X.id(k, key[c]);
          first = false;
        }
      label += ">";
      if (k == 0) label = "<" + std::to_string(n) + ":" + label.substr(1);
      where[n][key] = b.add(n, label);
      keys[n].push_back(std::move(key));
    }
  }
  // Faces and degeneracies act on keys through the vertex subsets.
  for (int n = 0; n <= D; ++n)
    for (Index e = 0; e < static_cast<Index>(keys[n].size()); ++e) {
      const auto& key = keys[n][e];
      for (int i = 0; i <= n; ++i) {
        if (n > 0) {
          std::vector<Index> fk(sk[n - 1].cells.size());
          for (const auto& [verts, p] : sk[n - 1].pos) {
            std::vector<int> up;
            for (int v : verts) up.push_back(v < i ? v : v + 1);
            fk[p] = key[sk[n].pos.at(up)];
          }
          b.set_face(n, i, e, where[n - 1].at(fk));
        }
        if (n < D) {
          std::vector<Index> gk(sk[n + 1].cells.size());
          for (const auto& [verts, p] : sk[n + 1].pos) {
            std::vector<int> down;
            for (int v : verts) down.push_back(v <= i ? v : v - 1);
            std::vector<int> img = down;
            img.erase(std::unique(img.begin(), img.end()), img.end());
            std::vector<int> theta;
            for (int v : down) theta.push_back(static_cast<int>(std::lower_bound(img.begin(), img.end(), v) - img.begin()));
            const int q = static_cast<int>(img.size()) - 1;
            gk[p] = X.apply(q, key[sk[n].pos.at(img)], theta);
          }
          b.set_degen(n, i, e, where[n + 1].at(gk));
        }
      }
    }
  return b.finish(false, k);
}

bool is_coskeletal(const SSetPtr& Xp, int k) {
  const SSet& X = *Xp;
  if (k < 0) return false;
  for (int n = k + 1; n <= X.trunc_dim() - 1; ++n) {
    auto sk = skeletal_simplex(n, k);
    std::set<std::vector<Index>> unit;
    for (Index x = 0; x < X.size(n); ++x)
      if (!unit.insert(restrict_simplex(X, n, x, sk)).second) return false;
    bool ok = true;
    std::size_t count = 0;
    visit_maps(sk.object, Xp, {}, {}, [&](const std::vector<std::vector<Index>>& img) {
      std::vector<Index> key(sk.cells.size());
      for (std::size_t c = 0; c < key.size(); ++c) key[c] = img[sk.cells[c].dim][sk.cells[c].index];
      ++count;
      if (!unit.count(key)) ok = false;
      return ok;
    });
    if (!ok || count != unit.size()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// Free extension of a stable object: new simplices are pairs (base, surjection).
SSetPtr extend_stable(const SSetPtr& Xp, int Dn) {
  const SSet& X = *Xp;
  const int D0 = X.trunc_dim();
  using Key = std::tuple<int, Index, std::vector<int>>;
  std::vector<std::map<Key, Index>> where(Dn + 1);
  std::vector<std::vector<Key>> elems(Dn + 1);
  for (int n = 0; n <= Dn; ++n) {
    if (n <= D0) {
      for (Index x = 0; x < X.size(n); ++x) {
        auto bs = X.base(n, x);
        auto s = X.ez_surjection(n, x);
        Key key{bs.dim, bs.index, std::vector<int>(s.begin(), s.end())};
        where[n][key] = x;
        elems[n].push_back(std::move(key));
      }
    } else {
      for (int p = 0; p <= X.max_nondegenerate_dim(); ++p)
        for (Index y : X.nondegenerate_simplices(p))
          for_each_surjection(n, p, [&](const std::vector<int>& theta) {
            Key key{p, y, theta};
            where[n][key] = static_cast<Index>(elems[n].size());
            elems[n].push_back(std::move(key));
          });
    }
  }
  SSetBuilder b(Dn);
  for (int n = 0; n <= Dn; ++n)
    for (Index e = 0; e < static_cast<Index>(elems[n].size()); ++e) {
      if (n <= D0) {
        b.add(n, X.id(n, e));
      } else {
        const auto& [p, y, theta] = elems[n][e];
        b.add(n, "s" + sequence_label(theta) + "(" + X.id(p, y) + ")");
      }
    }
  auto face_key = [&](const Key& key, int i) -> Key {
    const auto& [p, y, theta] = key;
    std::vector<int> t = theta;
    const int v = t[i];
    t.erase(t.begin() + i);
    if (std::find(t.begin(), t.end(), v) != t.end()) return {p, y, t};
    for (int& w : t)
      if (w > v) --w;
    Index z = X.face(p, v, y);
    auto zb = X.base(p - 1, z);
    auto zs = X.ez_surjection(p - 1, z);
    std::vector<int> comp;
    for (int w : t) comp.push_back(zs[w]);
    return {zb.dim, zb.index, comp};
  };
  for (int n = 0; n <= Dn; ++n)
    for (Index e = 0; e < static_cast<Index>(elems[n].size()); ++e) {
      for (int i = 0; i <= n; ++i) {
        if (n > 0) b.set_face(n, i, e, n <= D0 ? X.face(n, i, e) : where[n - 1].at(face_key(elems[n][e], i)));
        if (n < Dn) {
          if (n < D0) {
            b.set_degen(n, i, e, X.degen(n, i, e));
          } else {
            auto [p, y, theta] = elems[n][e];
            theta.insert(theta.begin() + i, theta[i]);
            b.set_degen(n, i, e, where[n + 1].at(Key{p, y, theta}));
          }
        }
      }
    }
  return b.finish(true, X.coskeletal_hint());
}

}  // namespace

SSetPtr retruncate(const SSetPtr& Xp, int D) {
  const SSet& X = *Xp;
  if (D == X.trunc_dim()) return Xp;
  if (D < 0) throw InvalidArgument("retruncate: negative truncation");
  if (D > X.trunc_dim()) {
    if (!X.stable()) throw InvalidArgument("retruncate: cannot extend an unstable object");
    return extend_stable(Xp, D);
  }
  SSetBuilder b(D);
  for (int n = 0; n <= D; ++n)
    for (Index x = 0; x < X.size(n); ++x) b.add(n, X.id(n, x));
  for (int n = 0; n <= D; ++n)
    for (Index x = 0; x < X.size(n); ++x)
      for (int i = 0; i <= n; ++i) {
        if (n > 0) b.set_face(n, i, x, X.face(n, i, x));
        if (n < D) b.set_degen(n, i, x, X.degen(n, i, x));
      }
  const bool stable = X.stable() && D > X.max_nondegenerate_dim();
  return b.finish(stable, X.coskeletal_hint());
}

SMap retruncate_map(const SMap& f, const SSetPtr& source, const SSetPtr& target) {
  const SSet& X = *f.source();
  const SSet& Y = *f.target();
  std::vector<std::vector<Index>> img(source->trunc_dim() + 1);
  for (int n = 0; n <= source->trunc_dim(); ++n) {
    img[n].assign(source->size(n), -1);
    for (Index x : source->nondegenerate_simplices(n)) {
      auto s = X.at(source->id(n, x));
      if (s.dim >= f.levels()) throw InvalidArgument("retruncate_map: map undefined on a nondegenerate simplex");
      img[n][x] = target->at(Y.id(f(s))).index;
    }
  }
  return extend_from_nondegenerate(source, target, img);
}

}  // namespace qcat
