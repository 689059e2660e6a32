#include "qcat/mapping.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "assemble.hpp"
#include "qcat/anodyne.hpp"
#include "qcat/enumerate.hpp"

namespace qcat {

namespace detail {

namespace {
struct KeyHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};
using KeyMap = std::unordered_map<std::vector<Index>, Index, KeyHash>;

// Images of the nondegenerate simplices of `src` under `phi . c`, where c is
// given levelwise (c may be null for the identity).
std::vector<Index> composite_key(const SSet& src, int upto, const SMap& phi, const SMap* c) {
  std::vector<Index> key;
  for (int n = 0; n <= upto; ++n)
    for (Index x : src.nondegenerate_simplices(n)) key.push_back(phi(n, c ? (*c)(n, x) : x));
  return key;
}
}  // namespace

std::vector<Index> nondegenerate_key(const SMap& f, int upto) {
  return composite_key(*f.source(), std::min(upto, f.levels() - 1), f, nullptr);
}

std::vector<Simplex> maximal_simplices(const SSet& X) {
  const int D = X.trunc_dim();
  std::vector<std::vector<char>> covered(D + 1);
  for (int n = 0; n <= D; ++n) covered[n].assign(X.size(n), 0);
  for (int n = 1; n <= D; ++n)
    for (Index x : X.nondegenerate_simplices(n))
      for (int i = 0; i <= n; ++i) {
        auto b = X.base(n - 1, X.face(n, i, x));
        covered[b.dim][b.index] = 1;
      }
  std::vector<Simplex> out;
  for (int n = 0; n <= D; ++n)
    for (Index x : X.nondegenerate_simplices(n))
      if (!covered[n][x]) out.push_back({n, x});
  return out;
}

std::vector<int> coface_vertices(int n, int i) {
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = j < i ? j : j + 1;
  return v;
}

std::vector<int> codegen_vertices(int n, int i) {
  std::vector<int> v(n + 2);
  for (int j = 0; j <= n + 1; ++j) v[j] = j <= i ? j : j - 1;
  return v;
}

// Map into an object whose simplices are determined by their vertex tuples.
SMap vertex_map(const SSetPtr& Xp, const SSetPtr& Yp, const std::vector<Index>& vmap) {
  const SSet& X = *Xp;
  const SSet& Y = *Yp;
  const int L = std::min(X.trunc_dim(), Y.trunc_dim());
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    KeyMap where;
    for (Index y = 0; y < Y.size(n); ++y)
      if (!where.emplace(Y.vertices(n, y), y).second)
        throw InvalidArgument("vertex_map: target simplices are not determined by their vertices");
    a[n].resize(X.size(n));
    std::vector<Index> t(n + 1);
    for (Index x = 0; x < X.size(n); ++x) {
      for (int j = 0; j <= n; ++j) t[j] = vmap.at(X.vertex(n, x, j));
      auto it = where.find(t);
      if (it == where.end()) throw InvalidArgument("vertex_map: no simplex with the required vertices");
      a[n][x] = it->second;
    }
  }
  SMap f(Xp, Yp, std::move(a));
  if (!is_simplicial(f)) throw InvalidArgument("vertex_map: vertex assignment is not simplicial");
  return f;
}

SMap simplex_map(const SSetPtr& dm, const SSetPtr& dn, const std::vector<int>& vertex_map_values) {
  std::vector<Index> v(vertex_map_values.begin(), vertex_map_values.end());
  return vertex_map(dm, dn, v);
}

// The map Q -> Y induced by h : X -> Y along a levelwise surjection p : X -> Q.
SMap descend(const SMap& p, const SMap& h) {
  const SSetPtr& Q = p.target();
  const int L = std::min({Q->trunc_dim(), h.target()->trunc_dim(), p.levels() - 1, h.levels() - 1});
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].assign(Q->size(n), -1);
    for (Index x = 0; x < p.source()->size(n); ++x) {
      Index& slot = a[n][p(n, x)];
      if (slot >= 0 && slot != h(n, x)) throw InvalidArgument("descend: map is not constant on fibres");
      slot = h(n, x);
    }
    if (std::find(a[n].begin(), a[n].end(), -1) != a[n].end()) throw InvalidArgument("descend: not surjective");
  }
  return SMap(Q, h.target(), std::move(a));
}

// Map out of an object all of whose simplices are degenerate vertices.
SMap discrete_map(const SSetPtr& Xp, const SSetPtr& Yp, const std::vector<Index>& vmap) {
  const SSet& X = *Xp;
  const SSet& Y = *Yp;
  const int L = std::min(X.trunc_dim(), Y.trunc_dim());
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].resize(X.size(n));
    for (Index x = 0; x < X.size(n); ++x) {
      auto b = X.base(n, x);
      if (b.dim != 0) throw InvalidArgument("discrete_map: source is not discrete");
      Index y = vmap.at(b.index);
      for (int l = 0; l < n; ++l) y = Y.degen(l, 0, y);
      a[n][x] = y;
    }
  }
  return SMap(Xp, Yp, std::move(a));
}

SSetPtr assemble_map_space(const CosimplicialDiagram& C, const SSetPtr& Sp, const std::vector<std::vector<SMap>>& maps,
                           const std::string& prefix) {
  const SSet& S = *Sp;
  const int m = static_cast<int>(maps.size()) - 1;
  std::vector<int> key_levels(m + 1);
  std::vector<KeyMap> where(m + 1);
  for (int n = 0; n <= m; ++n) {
    key_levels[n] = std::min(C.obj[n]->trunc_dim(), S.trunc_dim());
    for (Index j = 0; j < static_cast<Index>(maps[n].size()); ++j)
      if (!where[n].emplace(nondegenerate_key(maps[n][j], key_levels[n]), j).second)
        throw InvalidArgument("assemble: duplicate map");
  }
  SSetBuilder b(m);
  for (int n = 0; n <= m; ++n) {
    const SSet& Cn = *C.obj[n];
    auto maxi = maximal_simplices(Cn);
    bool by_image = Cn.stable();
    for (const auto& s : maxi) by_image = by_image && s.dim <= key_levels[n];
    std::vector<std::string> ids;
    if (by_image) {
      for (const auto& f : maps[n]) {
        std::string id;
        if (maxi.size() == 1) {
          id = S.id(maxi[0].dim, f(maxi[0]).index);
        } else {
          id = "<";
          for (std::size_t q = 0; q < maxi.size(); ++q) id += (q ? ";" : "") + S.id(maxi[q].dim, f(maxi[q]).index);
          id += ">";
        }
        ids.push_back(std::move(id));
      }
      std::vector<std::string> sorted = ids;
      std::sort(sorted.begin(), sorted.end());
      by_image = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    for (std::size_t j = 0; j < maps[n].size(); ++j)
      b.add(n, by_image ? ids[j] : prefix + std::to_string(n) + "." + std::to_string(j));
  }
  auto lookup = [&](int n, const std::vector<Index>& key) {
    auto it = where[n].find(key);
    if (it == where[n].end()) throw Error("assemble: a precomposite is missing from the enumerated level");
    return it->second;
  };
  for (int n = 0; n <= m; ++n)
    for (Index j = 0; j < static_cast<Index>(maps[n].size()); ++j) {
      const SMap& phi = maps[n][j];
      for (int i = 0; i <= n; ++i) {
        if (n > 0) {
          const SMap& c = C.coface[n][i];
          b.set_face(n, i, j, lookup(n - 1, composite_key(*C.obj[n - 1], key_levels[n - 1], phi, &c)));
        }
        if (n < m) {
          const SMap& c = C.codegen[n][i];
          b.set_degen(n, i, j, lookup(n + 1, composite_key(*C.obj[n + 1], key_levels[n + 1], phi, &c)));
        }
      }
    }
  return b.finish(false);
}

}  // namespace detail

// ---------------------------------------------------------------------------

std::string to_string(IntervalKind k) {
  switch (k) {
    case IntervalKind::R: return "R";
    case IntervalKind::L: return "L";
    case IntervalKind::cyl: return "cyl";
    case IntervalKind::E: return "E";
    case IntervalKind::relE: return "relE";
  }
  return "?";
}

IntervalKind interval_kind_from_string(const std::string& s) {
  if (s == "R") return IntervalKind::R;
  if (s == "L") return IntervalKind::L;
  if (s == "cyl") return IntervalKind::cyl;
  if (s == "E") return IntervalKind::E;
  if (s == "relE") return IntervalKind::relE;
  throw InvalidArgument("unknown model '" + s + "'");
}

namespace {

using detail::codegen_vertices;
using detail::coface_vertices;
using detail::vertex_map;

std::vector<std::string> digit_labels(int n) {
  std::vector<std::string> s;
  for (int i = 0; i <= n; ++i) s.push_back(std::to_string(i));
  return s;
}

// The interval plus the intermediate constructions the comparison maps need.
struct Rich {
  CosimplicialInterval pub;
  std::vector<SSetPtr> M;             // Delta^n or E^n
  std::vector<JoinResult> J;          // R, L
  std::vector<QuotientResult> Q;      // R, L
  std::vector<ProductResult> P1, P0;  // cyl, E
  std::vector<PushoutResult> PO;      // cyl, E
};

// Cosimplicial Delta^n or E^n at truncation T.
void build_cosimplicial_simplices(Rich& r, int m, int T, bool e_space_kind,
                                  std::vector<std::vector<SMap>>& cf, std::vector<std::vector<SMap>>& cd) {
  for (int n = 0; n <= m; ++n) r.M.push_back(e_space_kind ? e_space(digit_labels(n), T) : delta(n, T));
  cf.assign(m + 1, {});
  cd.assign(m + 1, {});
  auto as_index = [](const std::vector<int>& v) { return std::vector<Index>(v.begin(), v.end()); };
  for (int n = 1; n <= m; ++n)
    for (int i = 0; i <= n; ++i) cf[n].push_back(vertex_map(r.M[n - 1], r.M[n], as_index(coface_vertices(n, i))));
  for (int n = 0; n < m; ++n)
    for (int i = 0; i <= n; ++i) cd[n].push_back(vertex_map(r.M[n + 1], r.M[n], as_index(codegen_vertices(n, i))));
}

Rich build_cone(bool right_cone, int m) {
  Rich r;
  const int T = m + 2;
  r.pub.kind = right_cone ? IntervalKind::R : IntervalKind::L;
  r.pub.m = m;
  r.pub.trunc = T;
  r.pub.base = boundary(1, T);
  std::vector<std::vector<SMap>> cf, cd;
  build_cosimplicial_simplices(r, m, T, false, cf, cd);
  auto pt = delta(0, T);
  auto id_pt = identity_map(pt);
  for (int n = 0; n <= m; ++n) {
    r.J.push_back(right_cone ? join(r.M[n], pt, T) : join(pt, r.M[n], T));
    const SMap& side = right_cone ? r.J[n].left : r.J[n].right;
    r.Q.push_back(quotient(r.J[n].object, Subcomplex::image(side), "c"));
    r.pub.at.push_back(r.Q[n].object);
    const SSet& C = *r.Q[n].object;
    const Index collapsed = r.Q[n].collapsed[0];
    const Index cone = r.Q[n].projection(0, right_cone ? r.J[n].part(0, -1, 0, 0) : r.J[n].part(0, 0, 0, 0));
    (void)C;
    r.pub.basepoints.push_back(detail::discrete_map(
        r.pub.base, r.Q[n].object, right_cone ? std::vector<Index>{collapsed, cone} : std::vector<Index>{cone, collapsed}));
  }
  r.pub.coface.assign(m + 1, {});
  r.pub.codegen.assign(m + 1, {});
  auto induced = [&](int from, int to, const SMap& f) {
    SMap j = right_cone ? join_map(r.J[from], r.J[to], f, id_pt) : join_map(r.J[from], r.J[to], id_pt, f);
    return quotient_map(r.Q[from], r.Q[to], j);
  };
  for (int n = 1; n <= m; ++n)
    for (int i = 0; i <= n; ++i) r.pub.coface[n].push_back(induced(n - 1, n, cf[n][i]));
  for (int n = 0; n < m; ++n)
    for (int i = 0; i <= n; ++i) r.pub.codegen[n].push_back(induced(n + 1, n, cd[n][i]));
  return r;
}

// C_cyl(M^n) for the cosimplicial object M = Delta or E.
Rich build_cylinder(bool e_kind, int m, int T) {
  Rich r;
  r.pub.kind = e_kind ? IntervalKind::E : IntervalKind::cyl;
  r.pub.m = m;
  r.pub.trunc = T;
  r.pub.base = boundary(1, T);
  std::vector<std::vector<SMap>> cf, cd;
  build_cosimplicial_simplices(r, m, T, e_kind, cf, cd);
  auto d1 = delta(1, T);
  auto bd_in = vertex_map(r.pub.base, d1, {0, 1});
  auto id_d1 = identity_map(d1);
  auto id_bd = identity_map(r.pub.base);
  for (int n = 0; n <= m; ++n) {
    r.P1.push_back(product(r.M[n], d1));
    r.P0.push_back(product(r.M[n], r.pub.base));
    auto incl = product_map(r.P0[n], r.P1[n], identity_map(r.M[n]), bd_in);
    r.PO.push_back(pushout(incl, r.P0[n].pr2));
    r.pub.at.push_back(r.PO[n].object);
    r.pub.basepoints.push_back(r.PO[n].from_c);
  }
  r.pub.coface.assign(m + 1, {});
  r.pub.codegen.assign(m + 1, {});
  auto induced = [&](int from, int to, const SMap& f) {
    return pushout_map(r.PO[from], r.PO[to], product_map(r.P1[from], r.P1[to], f, id_d1), id_bd);
  };
  for (int n = 1; n <= m; ++n)
    for (int i = 0; i <= n; ++i) r.pub.coface[n].push_back(induced(n - 1, n, cf[n][i]));
  for (int n = 0; n < m; ++n)
    for (int i = 0; i <= n; ++i) r.pub.codegen[n].push_back(induced(n + 1, n, cd[n][i]));
  return r;
}

Rich build_rich(IntervalKind kind, int m, int D) {
  if (m < 0) throw InvalidArgument("cosimplicial_interval: negative degree bound");
  switch (kind) {
    case IntervalKind::R: return build_cone(true, m);
    case IntervalKind::L: return build_cone(false, m);
    case IntervalKind::cyl: return build_cylinder(false, m, m + 2);
    case IntervalKind::E: return build_cylinder(true, m, D < 0 ? m + 2 : D);
    case IntervalKind::relE: break;
  }
  throw InvalidArgument("cosimplicial_interval: use relative_interval for the relative kind");
}

detail::CosimplicialDiagram diagram_of(const CosimplicialInterval& C) { return {C.at, C.coface, C.codegen}; }

MappingSpace hom_from(const CosimplicialInterval& C, const BiPointed& S) {
  MappingSpace out;
  out.interval = C;
  const SSet& bd = *C.base;
  const Index v0 = bd.at("0").index, v1 = bd.at("1").index;
  out.maps.resize(C.m + 1);
  for (int n = 0; n <= C.m; ++n) {
    MapConstraint cons[2] = {{{0, C.basepoints[n](0, v0)}, S.a}, {{0, C.basepoints[n](0, v1)}, S.b}};
    out.maps[n] = enumerate_maps(C.at[n], S.space, cons);
  }
  out.space = detail::assemble_map_space(diagram_of(C), S.space, out.maps, to_string(C.kind));
  return out;
}

// E-direction truncation used for maps into S: exact for a k-coskeletal target.
int e_truncation(const SSet& S, int m, int D) {
  auto k = S.coskeletal_hint();
  if (!k) throw UnsupportedEnumeration("the E model needs a target known to be coskeletal");
  const int want = D < 0 ? m + 2 : D;
  return std::max(std::min(want, *k + 1), 1);
}

BiPointed widen_target(const BiPointed& S, int T) {
  if (S.space->trunc_dim() >= T || !S.space->stable()) return S;
  auto W = retruncate(S.space, T);
  return BiPointed::of(W, S.space->id(0, S.a), S.space->id(0, S.b));
}

// phi . c looked up among the maps of `into` (keys over the common levels).
SMap precompose_levels(const MappingSpace& from, const MappingSpace& into, const std::vector<SMap>& c) {
  const int m = std::min(from.interval.m, into.interval.m);
  std::vector<std::vector<Index>> a(m + 1);
  for (int n = 0; n <= m; ++n) {
    const SSet& A = *into.interval.at[n];
    int upto = std::min(c[n].levels() - 1, A.trunc_dim());
    if (!from.maps[n].empty()) upto = std::min(upto, from.maps[n][0].levels() - 1);
    detail::KeyMap where;
    for (Index j = 0; j < static_cast<Index>(into.maps[n].size()); ++j)
      if (!where.emplace(detail::composite_key(A, upto, into.maps[n][j], nullptr), j).second)
        throw Error("comparison: maps are not determined on the common levels");
    for (const auto& phi : from.maps[n]) {
      auto it = where.find(detail::composite_key(A, upto, phi, &c[n]));
      if (it == where.end()) throw Error("comparison: precomposite is not a point of the target model");
      a[n].push_back(it->second);
    }
  }
  SMap f(from.space, into.space, std::move(a));
  if (!is_simplicial(f)) throw Error("comparison: induced map is not simplicial");
  return f;
}

}  // namespace

CosimplicialInterval cosimplicial_interval(IntervalKind kind, int m, int D) { return build_rich(kind, m, D).pub; }

CosimplicialInterval relative_interval(const SMap& inclusion, int m, int D) {
  if (!is_injective(inclusion)) throw InvalidArgument("relative_interval: A -> B must be a monomorphism");
  CosimplicialInterval r;
  r.kind = IntervalKind::relE;
  r.m = m;
  r.trunc = D;
  auto A = retruncate(inclusion.source(), D);
  auto B = retruncate(inclusion.target(), D);
  auto i = retruncate_map(inclusion, A, B);
  r.base = A;
  Rich e;
  std::vector<std::vector<SMap>> cf, cd;
  build_cosimplicial_simplices(e, m, D, true, cf, cd);
  std::vector<ProductResult> PA, PB;
  std::vector<PushoutResult> PO;
  auto idA = identity_map(A), idB = identity_map(B);
  for (int n = 0; n <= m; ++n) {
    PA.push_back(product(A, e.M[n]));
    PB.push_back(product(B, e.M[n]));
    PO.push_back(pushout(product_map(PA[n], PB[n], i, identity_map(e.M[n])), PA[n].pr1));
    r.at.push_back(PO[n].object);
    r.basepoints.push_back(PO[n].from_c);
  }
  r.coface.assign(m + 1, {});
  r.codegen.assign(m + 1, {});
  auto induced = [&](int from, int to, const SMap& f) {
    return pushout_map(PO[from], PO[to], product_map(PB[from], PB[to], idB, f), idA);
  };
  for (int n = 1; n <= m; ++n)
    for (int k = 0; k <= n; ++k) r.coface[n].push_back(induced(n - 1, n, cf[n][k]));
  for (int n = 0; n < m; ++n)
    for (int k = 0; k <= n; ++k) r.codegen[n].push_back(induced(n + 1, n, cd[n][k]));
  return r;
}

std::vector<std::string> audit_interval(const CosimplicialInterval& C) {
  std::vector<std::string> bad;
  auto eq = [](const SMap& a, const SMap& b) { return a.assignment() == b.assignment(); };
  const int m = C.m;
  for (int n = 0; n <= m; ++n) {
    for (const auto& p : audit(*C.at[n])) bad.push_back("C^" + std::to_string(n) + ": " + p);
    if (C.kind != IntervalKind::relE && C.at[n]->size(0) != 2)
      bad.push_back("C^" + std::to_string(n) + " does not have exactly two vertices");
    if (!is_injective(C.basepoints[n])) bad.push_back("basepoint map into C^" + std::to_string(n) + " is not injective");
  }
  auto tag = [](const char* what, int n, int i, int j) {
    return std::string(what) + " n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
  };
  // delta^j delta^i = delta^i delta^{j-1} for i < j
  for (int n = 2; n <= m; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (!eq(compose(C.coface[n][j], C.coface[n - 1][i]), compose(C.coface[n][i], C.coface[n - 1][j - 1])))
          bad.push_back(tag("coface identity fails", n, i, j));
  // sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j
  for (int n = 0; n + 2 <= m; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        if (!eq(compose(C.codegen[n][j], C.codegen[n + 1][i]), compose(C.codegen[n][i], C.codegen[n + 1][j + 1])))
          bad.push_back(tag("codegeneracy identity fails", n, i, j));
  // sigma^j delta^i on C^n -> C^{n+1} -> C^n
  for (int n = 0; n + 1 <= m; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        SMap lhs = compose(C.codegen[n][j], C.coface[n + 1][i]);
        if (i == j || i == j + 1) {
          if (!eq(lhs, identity_map(C.at[n]))) bad.push_back(tag("sigma delta = id fails", n, i, j));
        } else if (i < j) {
          if (!eq(lhs, compose(C.coface[n][i], C.codegen[n - 1][j - 1]))) bad.push_back(tag("sigma delta fails", n, i, j));
        } else {
          if (!eq(lhs, compose(C.coface[n][i - 1], C.codegen[n - 1][j]))) bad.push_back(tag("sigma delta fails", n, i, j));
        }
      }
  // Cofaces are under the base, injective, and meet only along common faces
  // (the latching map is then a monomorphism).
  for (int n = 1; n <= m; ++n) {
    for (int i = 0; i <= n; ++i) {
      if (!is_injective(C.coface[n][i])) bad.push_back("coface not injective n=" + std::to_string(n));
      if (!eq(compose(C.coface[n][i], C.basepoints[n - 1]), C.basepoints[n]))
        bad.push_back("coface does not preserve the base n=" + std::to_string(n));
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        auto meet = Subcomplex::image(C.coface[n][i]).intersect(Subcomplex::image(C.coface[n][j]));
        auto expect = n == 1 ? Subcomplex::image(C.basepoints[1])
                             : Subcomplex::image(compose(C.coface[n][j], C.coface[n - 1][i]));
        if (!(meet == expect)) bad.push_back(tag("latching map not injective", n, i, j));
      }
  }
  return bad;
}

MappingSpace hom_model(IntervalKind kind, const BiPointed& S0, int m, int D) {
  if (kind == IntervalKind::relE) throw InvalidArgument("hom_model: use rel_map_space for the relative kind");
  if (S0.space->size(0) <= S0.a || S0.space->size(0) <= S0.b) throw InvalidArgument("hom_model: basepoint out of range");
  if (kind == IntervalKind::E) return hom_from(build_rich(kind, m, e_truncation(*S0.space, m, D)).pub, S0);
  return hom_from(build_rich(kind, m, D).pub, widen_target(S0, m + 2));
}

ModelSet comparison_maps(const BiPointed& S0, int m, int D) {
  const BiPointed S = widen_target(S0, m + 2);
  Rich rR = build_rich(IntervalKind::R, m, D), rL = build_rich(IntervalKind::L, m, D),
       rC = build_rich(IntervalKind::cyl, m, D);
  ModelSet out{std::nullopt, hom_from(rR.pub, S), hom_from(rL.pub, S), hom_from(rC.pub, S), {}};
  // C_R^n -> C_cyl^n: i -> (i,0), cone -> (n,1); C_L^n -> C_cyl^n: cone -> (0,0), i -> (i,1).
  std::vector<SMap> cR, cL;
  for (int n = 0; n <= m; ++n) {
    const auto& P1 = rC.P1[n];
    std::vector<Index> vr(n + 2), vl(n + 2);
    for (int i = 0; i <= n; ++i) {
      vr[rR.J[n].part(0, 0, i, 0)] = P1.pair(0, i, 0);
      vl[rL.J[n].part(0, -1, 0, i)] = P1.pair(0, i, 1);
    }
    vr[rR.J[n].part(0, -1, 0, 0)] = P1.pair(0, n, 1);
    vl[rL.J[n].part(0, 0, 0, 0)] = P1.pair(0, 0, 0);
    cR.push_back(detail::descend(rR.Q[n].projection,
                                 compose(rC.PO[n].from_b, vertex_map(rR.J[n].object, P1.object, vr))));
    cL.push_back(detail::descend(rL.Q[n].projection,
                                 compose(rC.PO[n].from_b, vertex_map(rL.J[n].object, P1.object, vl))));
  }
  out.maps.cyl_to_r = precompose_levels(out.cyl, out.R, cR);
  out.maps.cyl_to_l = precompose_levels(out.cyl, out.L, cL);
  try {
    Rich rE = build_rich(IntervalKind::E, m, e_truncation(*S0.space, m, D));
    out.E = hom_from(rE.pub, S0);
    // C_cyl^n sits inside C_E^n with the same identifiers.
    std::vector<SMap> cE;
    for (int n = 0; n <= m; ++n) {
      const SSet& Cc = *rC.pub.at[n];
      const SSet& Ce = *rE.pub.at[n];
      auto cut = retruncate(rC.pub.at[n], std::min(Cc.trunc_dim(), Ce.trunc_dim()));
      std::vector<std::vector<Index>> a(cut->trunc_dim() + 1);
      for (int l = 0; l <= cut->trunc_dim(); ++l)
        for (Index x = 0; x < cut->size(l); ++x) a[l].push_back(Ce.at(cut->id(l, x)).index);
      cE.push_back(SMap(cut, rE.pub.at[n], std::move(a)));
    }
    // Keys over the cut levels; the retruncated source shares simplex indices.
    MappingSpace cyl_cut = out.cyl;
    for (int n = 0; n <= m; ++n) cyl_cut.interval.at[n] = cE[n].source();
    out.maps.e_to_cyl = precompose_levels(*out.E, cyl_cut, cE);
    out.maps.e_to_cyl = SMap(out.E->space, out.cyl.space, out.maps.e_to_cyl->assignment());
  } catch (const UnsupportedEnumeration&) {
    out.E.reset();
  }
  return out;
}

SMap postcompose(const MappingSpace& from, const MappingSpace& to, const SMap& f) {
  if (from.interval.kind != to.interval.kind) throw InvalidArgument("postcompose: models of different kinds");
  const int m = std::min(from.interval.m, to.interval.m);
  std::vector<std::vector<Index>> a(m + 1);
  std::optional<SMap> fw;
  for (int n = 0; n <= m; ++n) {
    if (from.maps[n].empty()) continue;
    if (to.maps[n].empty()) throw Error("postcompose: target model is empty where the source is not");
    if (!fw) fw = retruncate_map(f, from.maps[n][0].target(), to.maps[n][0].target());
    const SSet& A = *from.interval.at[n];
    const int upto = std::min({from.maps[n][0].levels(), to.maps[n][0].levels(), fw->levels()}) - 1;
    detail::KeyMap where;
    for (Index j = 0; j < static_cast<Index>(to.maps[n].size()); ++j)
      where.emplace(detail::composite_key(A, upto, to.maps[n][j], nullptr), j);
    for (const auto& phi : from.maps[n]) {
      std::vector<Index> key;
      for (int l = 0; l <= upto; ++l)
        for (Index x : A.nondegenerate_simplices(l)) key.push_back((*fw)(l, phi(l, x)));
      auto it = where.find(key);
      if (it == where.end()) throw Error("postcompose: composite is not a point of the target model");
      a[n].push_back(it->second);
    }
  }
  SMap g(from.space, to.space, std::move(a));
  if (!is_simplicial(g)) throw Error("postcompose: induced map is not simplicial");
  return g;
}

// ---------------------------------------------------------------------------

SMap restrict_by_ids(const SMap& f, const SSetPtr& sub) {
  const SSet& X = *f.source();
  const int L = std::min(sub->trunc_dim(), f.target()->trunc_dim());
  if (L >= f.levels()) throw InvalidArgument("restrict_by_ids: map too short");
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n)
    for (Index x = 0; x < sub->size(n); ++x) a[n].push_back(f(n, X.at(sub->id(n, x)).index));
  return SMap(sub, f.target(), std::move(a));
}

RelativeSpace rel_map_space(const SMap& inclusion, const SMap& f, int m, int D) {
  if (inclusion.source() != f.source()) throw InvalidArgument("rel_map_space: f must be defined on A");
  if (!is_injective(inclusion)) throw InvalidArgument("rel_map_space: A -> B must be a monomorphism");
  const SSetPtr& X = f.target();
  RelativeSpace r;
  r.e_trunc = e_truncation(*X, m, D);
  const int T = r.e_trunc;
  auto A = retruncate(inclusion.source(), T);
  auto B = retruncate(inclusion.target(), T);
  r.inclusion = retruncate_map(inclusion, A, B);
  r.f = retruncate_map(f, A, X);
  Rich e;
  std::vector<std::vector<SMap>> cf, cd;
  build_cosimplicial_simplices(e, m, T, true, cf, cd);
  detail::CosimplicialDiagram C;
  auto idB = identity_map(B);
  r.maps.resize(m + 1);
  for (int n = 0; n <= m; ++n) {
    r.b_products.push_back(product(B, e.M[n]));
    r.a_products.push_back(product(A, e.M[n]));
    const auto& PA = r.a_products[n];
    auto j = product_map(PA, r.b_products[n], r.inclusion, identity_map(e.M[n]));
    std::vector<MapConstraint> cons;
    for (int l = 0; l <= PA.object->trunc_dim(); ++l)
      for (Index s : PA.object->nondegenerate_simplices(l)) cons.push_back({{l, j(l, s)}, r.f(l, PA.pr1(l, s))});
    r.maps[n] = enumerate_maps(r.b_products[n].object, X, cons);
    C.obj.push_back(r.b_products[n].object);
  }
  C.coface.assign(m + 1, {});
  C.codegen.assign(m + 1, {});
  for (int n = 1; n <= m; ++n)
    for (int i = 0; i <= n; ++i) C.coface[n].push_back(product_map(r.b_products[n - 1], r.b_products[n], idB, cf[n][i]));
  for (int n = 0; n < m; ++n)
    for (int i = 0; i <= n; ++i) C.codegen[n].push_back(product_map(r.b_products[n + 1], r.b_products[n], idB, cd[n][i]));
  r.space = detail::assemble_map_space(C, X, r.maps, "rel");
  return r;
}

SMap restriction_map(const RelativeSpace& from, const RelativeSpace& to, const SMap& b) {
  if (from.e_trunc != to.e_trunc) throw InvalidArgument("restriction_map: different E truncations");
  const int m = std::min(from.space->trunc_dim(), to.space->trunc_dim());
  const SSetPtr& Bs = to.inclusion.target();
  const SSetPtr& Bb = from.inclusion.target();
  SMap bt = retruncate_map(b, Bs, Bb);
  std::vector<std::vector<Index>> a(m + 1);
  for (int n = 0; n <= m; ++n) {
    const auto& Ps = to.b_products[n];
    const auto& Pb = from.b_products[n];
    auto c = product_map(Ps, Pb, bt, identity_map(Ps.pr2.target()));
    const SSet& src = *Ps.object;
    const int upto = src.trunc_dim();
    detail::KeyMap where;
    for (Index j = 0; j < static_cast<Index>(to.maps[n].size()); ++j)
      where.emplace(detail::composite_key(src, upto, to.maps[n][j], nullptr), j);
    for (const auto& phi : from.maps[n]) {
      auto it = where.find(detail::composite_key(src, upto, phi, &c));
      if (it == where.end()) throw Error("restriction_map: restricted map is not a point of the target space");
      a[n].push_back(it->second);
    }
  }
  SMap p(from.space, to.space, std::move(a));
  if (!is_simplicial(p)) throw Error("restriction_map: induced map is not simplicial");
  return p;
}

std::string rlp_check(const SMap& p, int r_max, bool boundaries) {
  const SSetPtr& P = p.source();
  const SSetPtr& Q = p.target();
  const int top = std::min({r_max, P->trunc_dim(), Q->trunc_dim()});
  using Faces = std::vector<Index>;
  if (boundaries) {
    std::vector<char> hit(Q->size(0), 0);
    for (Index x = 0; x < P->size(0); ++x) hit[p(0, x)] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return "no lift against the empty boundary in dimension 0";
  }
  for (int r = 1; r <= top; ++r)
    for (int k = boundaries ? -1 : 0; k <= r; ++k) {
      // Lifting problems are keyed by the faces of the top simplex other than k.
      std::map<Faces, std::vector<std::pair<Index, Index>>> lifts;  // faces -> (tau, p tau)
      auto key_of = [&](const SSet& X, Index x) {
        Faces f;
        for (int i = 0; i <= r; ++i)
          if (i != k) f.push_back(X.face(r, i, x));
        return f;
      };
      for (Index t = 0; t < P->size(r); ++t) lifts[key_of(*P, t)].push_back({t, p(r, t)});
      std::map<Faces, std::vector<Index>> below;
      for (Index s = 0; s < Q->size(r); ++s) below[key_of(*Q, s)].push_back(s);
      SSetPtr shape = k < 0 ? boundary(r, r) : horn(r, k, r);
      std::vector<Index> cells;
      for (int i = 0; i <= r; ++i) {
        if (i == k) continue;
        std::vector<int> v;
        for (int j = 0; j <= r; ++j)
          if (j != i) v.push_back(j);
        cells.push_back(shape->at(simplex_label(v)).index);
      }
      std::string failure;
      visit_maps(shape, P, {}, {}, [&](const std::vector<std::vector<Index>>& img) {
        Faces up, down;
        for (Index c : cells) {
          up.push_back(img[r - 1][c]);
          down.push_back(p(r - 1, img[r - 1][c]));
        }
        auto it = below.find(down);
        if (it == below.end()) return true;
        auto lt = lifts.find(up);
        for (Index s : it->second) {
          bool ok = false;
          if (lt != lifts.end())
            for (const auto& [t, pt] : lt->second) ok = ok || pt == s;
          if (!ok) {
            failure = (k < 0 ? "boundary" : "horn k=" + std::to_string(k)) + " in dimension " + std::to_string(r) +
                      " has no lift over '" + Q->id(r, s) + "'";
            return false;
          }
        }
        return true;
      });
      if (!failure.empty()) return failure;
    }
  return {};
}

LatchingVerdict latching_fibration_check(const SMap& i, const SMap& ip, const SMap& a, const SMap& b, const SMap& f,
                                         int r_max, int m, const AnodyneCertificate* acyclic, int D) {
  if (i.source() != a.source() || i.target() != b.source() || ip.source() != a.target() || ip.target() != b.target() ||
      f.source() != ip.source())
    throw InvalidArgument("latching_fibration_check: maps do not form a square");
  LatchingVerdict v;
  if (!(compose(b, i) == compose(ip, a))) throw InvalidArgument("latching_fibration_check: square does not commute");
  if (!is_injective(i) || !is_injective(ip)) {
    v.detail = "horizontal maps are not monomorphisms";
    return v;
  }
  // Latching map A' u_A B -> B'.
  auto po = pushout(i, a);
  const int L = po.object->trunc_dim();
  std::vector<std::vector<Index>> lat(L + 1);
  for (int n = 0; n <= L; ++n)
    for (const auto& rp : po.reps[n]) lat[n].push_back(rp.c_side ? ip(n, rp.index) : b(n, rp.index));
  SMap latch(po.object, b.target(), std::move(lat));
  if (!is_simplicial(latch) || !is_injective(latch)) {
    v.detail = "latching map is not a monomorphism";
    return v;
  }
  auto big = rel_map_space(ip, f, m, D);
  auto small = rel_map_space(i, compose(f, a), m, D);
  auto p = restriction_map(big, small, b);
  v.checked_dim = std::min(r_max, m);
  if (auto fail = rlp_check(p, r_max, false); !fail.empty()) {
    v.status = LatchingStatus::refuted;
    v.detail = fail;
    return v;
  }
  v.status = LatchingStatus::fibration;
  if (acyclic) {
    auto cv = verify(*acyclic);
    const SSet& amb = *acyclic->ambient;
    const SSet& Bp = *b.target();
    bool matches = cv.valid && !acyclic->partial && amb.trunc_dim() >= 0;
    auto image = Subcomplex::image(latch);
    for (int n = 0; n <= std::min(amb.trunc_dim(), L) && matches; ++n)
      for (Index x : Bp.nondegenerate_simplices(n)) {
        auto s = amb.find(Bp.id(n, x));
        const bool in_start = s && acyclic->start.contains(*s);
        matches = matches && s && in_start == image.contains(n, x);
      }
    if (!matches) {
      v.detail = "certificate does not certify the latching map";
      return v;
    }
    if (auto fail = rlp_check(p, r_max, true); !fail.empty()) {
      v.status = LatchingStatus::refuted;
      v.detail = fail;
      return v;
    }
    v.status = LatchingStatus::acyclic_fibration;
  }
  return v;
}

SMap inclusion_by_ids(const SSetPtr& small, const SSetPtr& big) {
  const int L = std::min(small->trunc_dim(), big->trunc_dim());
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n)
    for (Index x = 0; x < small->size(n); ++x) a[n].push_back(big->at(small->id(n, x)).index);
  return SMap(small, big, std::move(a));
}

PullbackVerdict relative_pullback_check(const SSetPtr& B, const Subcomplex& A, const Subcomplex& B1,
                                        const Subcomplex& B2, const SMap& f, int m, int D) {
  if (!(B1.unite(B2) == Subcomplex::full(*B))) throw InvalidArgument("relative_pullback_check: B1 and B2 must cover B");
  struct Piece {
    SSetPtr Bi, Ai;
    RelativeSpace space;
  };
  auto make = [&](const Subcomplex& Bi) {
    Piece p;
    p.Bi = materialize(B, Bi).sub;
    p.Ai = materialize(B, Bi.intersect(A)).sub;
    p.space = rel_map_space(inclusion_by_ids(p.Ai, p.Bi), restrict_by_ids(f, p.Ai), m, D);
    return p;
  };
  Piece whole = make(Subcomplex::full(*B)), one = make(B1), two = make(B2), both = make(B1.intersect(B2));
  auto r1 = restriction_map(whole.space, one.space, inclusion_by_ids(one.Bi, whole.Bi));
  auto r2 = restriction_map(whole.space, two.space, inclusion_by_ids(two.Bi, whole.Bi));
  auto q1 = restriction_map(one.space, both.space, inclusion_by_ids(both.Bi, one.Bi));
  auto q2 = restriction_map(two.space, both.space, inclusion_by_ids(both.Bi, two.Bi));
  PullbackVerdict v;
  v.checked_dim = m;
  v.strict = true;
  for (int n = 0; n <= m; ++n) {
    const SSet& P = *whole.space.space;
    v.sizes.push_back(P.size(n));
    std::map<std::pair<Index, Index>, int> seen;
    for (Index x = 0; x < P.size(n); ++x) {
      const Index y1 = r1(n, x), y2 = r2(n, x);
      if (q1(n, y1) != q2(n, y2)) {
        v.strict = false;
        v.detail = "square does not commute at level " + std::to_string(n);
        return v;
      }
      if (++seen[{y1, y2}] > 1) {
        v.strict = false;
        v.detail = "two points of the corner restrict to the same pair at level " + std::to_string(n);
        return v;
      }
    }
    std::map<Index, std::size_t> c1, c2;
    for (Index y = 0; y < one.space.space->size(n); ++y) ++c1[q1(n, y)];
    for (Index y = 0; y < two.space.space->size(n); ++y) ++c2[q2(n, y)];
    std::size_t pairs = 0;
    for (const auto& [z, c] : c1)
      if (auto it = c2.find(z); it != c2.end()) pairs += c * it->second;
    if (pairs != static_cast<std::size_t>(P.size(n))) {
      v.strict = false;
      v.detail = "fibre product has " + std::to_string(pairs) + " points at level " + std::to_string(n) + ", corner has " +
                 std::to_string(P.size(n));
      return v;
    }
  }
  return v;
}

}  // namespace qcat
