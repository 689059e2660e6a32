#include "qcat/anodyne.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "assemble.hpp"
#include "combinatorics.hpp"
#include "qcat/build.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/horn.hpp"
#include "qcat/mapping.hpp"

namespace qcat {

std::string to_string(HornClass c) {
  switch (c) {
    case HornClass::inner: return "inner";
    case HornClass::special_left: return "special_left";
    case HornClass::special_right: return "special_right";
  }
  return "?";
}

HornClass horn_class_from_string(const std::string& s) {
  if (s == "inner") return HornClass::inner;
  if (s == "special_left") return HornClass::special_left;
  if (s == "special_right") return HornClass::special_right;
  throw InvalidArgument("unknown horn class '" + s + "'");
}

namespace {

using Mask = std::vector<std::vector<char>>;

// Adds s together with all its faces and degeneracies.
void close_in(const SSet& X, Mask& m, Simplex s) {
  std::vector<Simplex> stack{s};
  while (!stack.empty()) {
    auto [n, x] = stack.back();
    stack.pop_back();
    if (m[n][x]) continue;
    m[n][x] = 1;
    if (n > 0)
      for (int i = 0; i <= n; ++i) stack.push_back({n - 1, X.face(n, i, x)});
    if (n < X.trunc_dim())
      for (int i = 0; i <= n; ++i) stack.push_back({n + 1, X.degen(n, i, x)});
  }
}

bool mask_shape_ok(const SSet& X, const Subcomplex& A) {
  const auto& m = A.mask();
  if (static_cast<int>(m.size()) != X.trunc_dim() + 1) return false;
  for (int n = 0; n <= X.trunc_dim(); ++n)
    if (static_cast<Index>(m[n].size()) != X.size(n)) return false;
  return true;
}

Index edge_of(const SSet& X, Simplex s, int a, int b) {
  const int th[2] = {a, b};
  return X.apply(s.dim, s.index, th);
}

// Accumulates steps while tracking the current subcomplex.
struct Recorder {
  SSetPtr X;
  Mask cur;
  std::vector<CertStep> steps;

  Recorder(SSetPtr x, const Subcomplex& start) : X(std::move(x)), cur(start.mask()) {}
  bool has(Simplex s) const { return cur[s.dim][s.index] != 0; }
  void add(Simplex s, int k, HornClass c) {
    steps.push_back({X->id(s), k, c});
    close_in(*X, cur, s);
  }
  AnodyneCertificate finish(const Subcomplex& start) const {
    AnodyneCertificate c;
    c.ambient = X;
    c.start = start;
    c.steps = steps;
    c.end = Subcomplex::from_mask(*X, cur);
    c.verified_dim = X->trunc_dim();
    return c;
  }
};

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> v;
  for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
  return v;
}

// Vertex pairs of a simplex of a product, as (first factor, second factor) vertex indices.
std::vector<std::pair<Index, Index>> pair_vertices(const ProductResult& P, int d, Index s) {
  std::vector<std::pair<Index, Index>> out;
  for (Index v : P.object->vertices(d, s)) out.emplace_back(P.pr1(0, v), P.pr2(0, v));
  return out;
}

}  // namespace

CertVerdict verify(const AnodyneCertificate& cert) {
  CertVerdict v;
  auto fail = [&](int step, std::string reason) {
    v.valid = false;
    v.step = step;
    v.reason = std::move(reason);
    return v;
  };
  if (!cert.ambient) return fail(-1, "malformed: no ambient");
  const SSet& X = *cert.ambient;
  if (!mask_shape_ok(X, cert.start) || !mask_shape_ok(X, cert.end))
    return fail(-1, "malformed: subcomplex does not match the ambient");
  Mask cur = cert.start.mask();
  for (int s = 0; s < static_cast<int>(cert.steps.size()); ++s) {
    const CertStep& st = cert.steps[s];
    auto found = X.find(st.simplex);
    if (!found) return fail(s, "malformed: unknown simplex '" + st.simplex + "'");
    const Simplex t = *found;
    const int n = t.dim;
    if (n == 0) return fail(s, "malformed: a vertex cannot be attached along a horn");
    if (!X.nondegenerate(n, t.index)) return fail(s, "degenerate target");
    if (cur[n][t.index]) return fail(s, "target already present");
    if (st.k < 0 || st.k > n) return fail(s, "malformed: horn index out of range");
    switch (st.cls) {
      case HornClass::inner:
        if (st.k == 0 || st.k == n) return fail(s, "not-inner");
        break;
      case HornClass::special_left:
      case HornClass::special_right: {
        const bool left = st.cls == HornClass::special_left;
        if (n < 2 || st.k != (left ? 0 : n)) return fail(s, "not-special");
        const Index e = left ? edge_of(X, t, 0, 1) : edge_of(X, t, n - 1, n);
        if (quasi_iso(cert.ambient, e, QuasiIsoMode::providers).answer != Tri::yes)
          return fail(s, "not-special");
        break;
      }
    }
    for (int i = 0; i <= n; ++i)
      if (i != st.k && !cur[n - 1][X.face(n, i, t.index)]) return fail(s, "horn-missing");
    if (cur[n - 1][X.face(n, st.k, t.index)]) return fail(s, "bounding");
    close_in(X, cur, t);
  }
  if (cur != cert.end.mask()) return fail(-1, "end-mismatch");
  v.verified_dim = X.trunc_dim();
  if (cert.partial) {
    for (int n = 0; n <= std::min(cert.verified_dim, X.trunc_dim()); ++n)
      for (Index x = 0; x < X.size(n); ++x)
        if (!cur[n][x]) return fail(-1, "end-mismatch: incomplete below the verified dimension");
    v.verified_dim = cert.verified_dim;
  }
  v.valid = true;
  return v;
}

// ---------------------------------------------------------------------------

AnodyneCertificate gen_box_inner(int n, int k, int r) {
  if (!(0 < k && k < n) || r < 0) throw InvalidArgument("gen_box_inner: needs 0 < k < n and r >= 0");
  const int T = n + r + 1;
  auto P = product(delta(n, T), delta(r, T));
  const SSetPtr Xp = P.object;
  const SSet& X = *Xp;
  Mask start(T + 1);
  for (int d = 0; d <= T; ++d) {
    start[d].resize(X.size(d));
    for (Index s = 0; s < X.size(d); ++s) {
      std::set<Index> a, b;
      for (auto [x, y] : pair_vertices(P, d, s)) a.insert(x), b.insert(y);
      const bool in_horn = !(static_cast<int>(a.size()) == n + 1 || (static_cast<int>(a.size()) == n && !a.count(k)));
      start[d][s] = in_horn || static_cast<int>(b.size()) != r + 1;
    }
  }
  auto Y0 = Subcomplex::from_mask(X, start);
  Recorder rec(Xp, Y0);
  // Stage i attaches the missing simplices through the column vertex (k, i).
  for (int i = 0; i <= r; ++i)
    for (int d = 1; d <= n + r; ++d) {
      std::vector<std::pair<Simplex, int>> batch;
      for (Index s : X.nondegenerate_simplices(d)) {
        if (rec.has({d, s})) continue;
        auto pv = pair_vertices(P, d, s);
        auto it = std::find(pv.begin(), pv.end(), std::pair<Index, Index>{k, i});
        if (it != pv.end()) batch.push_back({{d, s}, static_cast<int>(it - pv.begin())});
      }
      std::sort(batch.begin(), batch.end(), [&](auto& a, auto& b) { return X.id(a.first) < X.id(b.first); });
      for (auto [s, pos] : batch) rec.add(s, pos, HornClass::inner);
    }
  return rec.finish(Y0);
}

AnodyneCertificate gen_box_special(int r, int D) {
  if (r < 1) throw InvalidArgument("gen_box_special: needs r > 0");
  if (D < 2) throw InvalidArgument("gen_box_special: needs D >= 2");
  auto E1 = e_space({"a", "b"}, D);
  auto P = product(E1, delta(r, D));
  const SSetPtr Xp = P.object;
  const SSet& X = *Xp;
  const Index a = E1->at("a").index;
  Mask start(D + 1);
  for (int d = 0; d <= D; ++d) {
    start[d].resize(X.size(d));
    for (Index s = 0; s < X.size(d); ++s) {
      std::set<Index> cols;
      bool all_a = true;
      for (auto [e, c] : pair_vertices(P, d, s)) cols.insert(c), all_a = all_a && e == a;
      start[d][s] = all_a || static_cast<int>(cols.size()) != r + 1;
    }
  }
  auto Y0 = Subcomplex::from_mask(X, start);
  Recorder rec(Xp, Y0);
  // Stage m: groups after m are single a's and group m holds a b and ends in a;
  // the horn omits that final a.
  for (int m = 0; m <= r; ++m)
    for (int d = 1; d <= D; ++d) {
      std::vector<std::pair<Simplex, int>> batch;
      for (Index s : X.nondegenerate_simplices(d)) {
        if (rec.has({d, s})) continue;
        auto pv = pair_vertices(P, d, s);
        std::vector<std::vector<Index>> groups(r + 1);
        for (auto [e, c] : pv) groups[c].push_back(e);
        bool ok = true;
        for (int g = 0; g <= r && ok; ++g) ok = !groups[g].empty();
        for (int g = m + 1; g <= r && ok; ++g) ok = groups[g].size() == 1 && groups[g][0] == a;
        if (!ok || groups[m].back() != a) continue;
        if (std::all_of(groups[m].begin(), groups[m].end(), [&](Index e) { return e == a; })) continue;
        int pos = -1;
        for (int g = 0; g <= m; ++g) pos += static_cast<int>(groups[g].size());
        batch.push_back({{d, s}, pos});
      }
      std::sort(batch.begin(), batch.end(), [&](auto& x, auto& y) { return X.id(x.first) < X.id(y.first); });
      for (auto [s, pos] : batch)
        rec.add(s, pos, pos == s.dim ? HornClass::special_right : pos == 0 ? HornClass::special_left : HornClass::inner);
    }
  auto c = rec.finish(Y0);
  c.partial = true;
  c.verified_dim = D - 1;  // top-dimensional faces need fillers one dimension up
  return c;
}

AnodyneCertificate gen_spine_simplex(int n) {
  if (n < 1) throw InvalidArgument("gen_spine_simplex: needs n >= 1");
  auto Xp = delta(n + 1, n + 2);
  const SSet& X = *Xp;
  auto start = simplex_faces(X, {range(0, n), {n, n + 1}});
  Recorder rec(Xp, start);
  for (int i = 0; i < n; ++i)
    for_each_subset(n, i + 1, [&](const std::vector<int>& I) {
      rec.add(X.at(simplex_label(concat({I, {n, n + 1}}))), i + 1, HornClass::inner);
    });
  return rec.finish(start);
}

AnodyneCertificate gen_spine(int r) {
  if (r < 1) throw InvalidArgument("gen_spine: needs r >= 1");
  auto Xp = delta(r, r + 1);
  const SSet& X = *Xp;
  std::vector<std::vector<int>> edges;
  for (int j = 0; j < r; ++j) edges.push_back({j, j + 1});
  auto start = simplex_faces(X, edges);
  Recorder rec(Xp, start);
  // Delta^{0..j} u [j, j+1] inside Delta^{0..j+1}, for j = 1 .. r-1.
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i)
      for_each_subset(j, i + 1, [&](const std::vector<int>& I) {
        rec.add(X.at(simplex_label(concat({I, {j, j + 1}}))), i + 1, HornClass::inner);
      });
  return rec.finish(start);
}

namespace {

struct Squashed {
  SSetPtr delta_n;
  SSetPtr object;
  SMap projection;  // Delta^n -> Delta^n_k
  Simplex image(const std::vector<int>& verts) const {
    auto s = delta_n->at(simplex_label(verts));
    return projection(s);
  }
};

Squashed squash(int n, int k) {
  if (!(0 <= k && k < n)) throw InvalidArgument("squash: needs 0 <= k < n");
  Squashed q;
  q.delta_n = delta(n, n + 1);
  q.object = q.delta_n;
  q.projection = identity_map(q.delta_n);
  auto collapse = [&](const std::vector<int>& block, const std::string& label) {
    if (block.size() < 2) return;
    auto gen = q.projection(q.delta_n->at(simplex_label(block)));
    auto Q = quotient(q.object, Subcomplex::generated(*q.object, std::span(&gen, 1)), label);
    q.object = Q.object;
    q.projection = compose(Q.projection, q.projection);
  };
  collapse(range(0, k), "i");
  collapse(range(k + 1, n), "t");
  return q;
}

}  // namespace

SSetPtr squashed_simplex(int n, int k) { return squash(n, k).object; }

AnodyneCertificate gen_squash(int n, int k) {
  auto q = squash(n, k);
  const SSet& X = *q.object;
  std::vector<std::pair<Simplex, int>> targets;
  Subcomplex start;
  if (k == n - 1 && n >= 2) {
    // Mirror image: from the edge [n-1, n] through the simplices [J, n-1, n].
    auto e = q.image({n - 1, n});
    start = Subcomplex::generated(X, std::span(&e, 1));
    for (int size = 1; size <= n - 1; ++size)
      for_each_subset(n - 1, size, [&](const std::vector<int>& J) {
        targets.push_back({q.image(concat({J, {n - 1, n}})), size});
      });
  } else {
    std::vector<int> tail = range(2, n);
    if (k == 0) {
      auto e = q.image({0, 1});
      start = Subcomplex::generated(X, std::span(&e, 1));
    } else {
      auto f = q.image(range(1, n));
      start = Subcomplex::generated(X, std::span(&f, 1));
    }
    for (int size = 1; size <= n - 1; ++size)
      for_each_subset(n - 1, size, [&](const std::vector<int>& sub) {
        std::vector<int> J;
        for (int j : sub) J.push_back(tail[j]);
        if (J.back() > k) targets.push_back({q.image(concat({{0, 1}, J})), 1});
      });
  }
  std::stable_sort(targets.begin(), targets.end(), [&](auto& a, auto& b) {
    return a.first.dim != b.first.dim ? a.first.dim < b.first.dim : X.id(a.first) < X.id(b.first);
  });
  Recorder rec(q.object, start);
  for (auto [s, pos] : targets) rec.add(s, pos, HornClass::inner);
  return rec.finish(start);
}

std::vector<AnodyneCertificate> gen_cyl_squash(int n) {
  if (n < 0) throw InvalidArgument("gen_cyl_squash: needs n >= 0");
  const int T = n + 2;
  auto dn = delta(n, T);
  auto d1 = delta(1, T);
  auto bd = boundary(1, T);
  auto P1 = product(dn, d1);
  auto P0 = product(dn, bd);
  auto incl = product_map(P0, P1, identity_map(dn), inclusion_by_ids(bd, d1));
  auto PO = pushout(incl, P0.pr2);
  const SSetPtr Xp = PO.object;
  const SSet& X = *Xp;
  // Vertices are (j, e); prefer the product identifiers.
  using V = std::pair<int, int>;
  auto cell = [&](const std::vector<V>& vs) {
    std::vector<int> a, e;
    for (auto [j, x] : vs) a.push_back(j), e.push_back(x);
    auto s = P1.object->at("(" + simplex_label(a) + "," + simplex_label(e) + ")");
    return PO.from_b(s);
  };
  auto top = [&](int i) {
    std::vector<V> vs;
    for (int j = 0; j <= i; ++j) vs.push_back({j, 0});
    for (int j = i; j <= n; ++j) vs.push_back({j, 1});
    return cell(vs);
  };
  auto choose = [](const std::vector<V>& pool, int size, const std::function<void(std::vector<V>)>& fn) {
    for_each_subset(static_cast<int>(pool.size()), size, [&](const std::vector<int>& idx) {
      std::vector<V> out;
      for (int j : idx) out.push_back(pool[j]);
      fn(out);
    });
  };
  auto cat = [](std::initializer_list<std::vector<V>> parts) {
    std::vector<V> v;
    for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
    return v;
  };

  std::vector<AnodyneCertificate> out;
  std::vector<Simplex> tops;
  // Base: the edge [(0,0),(0,1)] inside E_0, a copy of Delta^{n+1}_0.
  {
    auto e = cell({{0, 0}, {0, 1}});
    auto start = Subcomplex::generated(X, std::span(&e, 1));
    Recorder rec(Xp, start);
    std::vector<V> pool;
    for (int j = 1; j <= n; ++j) pool.push_back({j, 1});
    for (int size = 1; size <= n; ++size)
      choose(pool, size, [&](std::vector<V> J) { rec.add(cell(cat({{{0, 0}, {0, 1}}, J})), 1, HornClass::inner); });
    tops.push_back(top(0));
    auto c = rec.finish(start);
    if (!(c.end == Subcomplex::generated(X, tops))) throw InvalidArgument("gen_cyl_squash: base stage incomplete");
    out.push_back(std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    auto start = Subcomplex::generated(X, tops);
    Recorder rec(Xp, start);
    const V p{i, 0}, v{i + 1, 0}, w{i + 1, 1};
    std::vector<V> before, after;
    for (int j = 0; j < i; ++j) before.push_back({j, 0});
    for (int j = i + 2; j <= n; ++j) after.push_back({j, 1});
    std::vector<V> with_p = before;
    with_p.push_back(p);
    rec.add(cell({p, v, w}), 0, HornClass::special_left);
    for (int d = 2; d <= n + 1; ++d) {
      // [I, p, v, w] with I nonempty, attached along the face without p.
      if (d >= 3)
        choose(before, d - 2, [&](std::vector<V> I) {
          rec.add(cell(cat({I, {p, v, w}})), d - 2, HornClass::inner);
        });
      // [I, v, w, J] with J nonempty, attached along the face without w.
      for (int js = 1; js <= static_cast<int>(after.size()); ++js) {
        const int is = d - 1 - js;
        if (is < 0 || is > static_cast<int>(with_p.size())) continue;
        choose(with_p, is, [&](std::vector<V> I) {
          choose(after, js, [&](std::vector<V> J) {
            rec.add(cell(cat({I, {v, w}, J})), is + 1, HornClass::inner);
          });
        });
      }
    }
    tops.push_back(top(i + 1));
    auto c = rec.finish(start);
    if (!(c.end == Subcomplex::generated(X, tops))) throw InvalidArgument("gen_cyl_squash: stage incomplete");
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

StructuralVerdict check_joinbox(int n, int k, int r) {
  if (!(0 < k && k <= n) || r < 0) throw InvalidArgument("check_joinbox: needs 0 < k <= n and r >= 0");
  const int N = n + r + 1;
  const int T = N + 1;
  auto dn = delta(n, T), dr = delta(r, T);
  auto J = join(dn, dr, T);
  auto big = delta(N, T);
  auto iso = find_isomorphism(J.object, big);
  if (!iso) return {false, "join of simplices is not a simplex"};
  auto hn = horn(n, k, T);
  auto left = Subcomplex::image(join_map(join(hn, dr, T), J, inclusion_by_ids(hn, dn), identity_map(dr)));
  Subcomplex domain = left;
  if (r > 0) {
    auto br = boundary(r, T);
    domain = domain.unite(
        Subcomplex::image(join_map(join(dn, br, T), J, identity_map(dn), inclusion_by_ids(br, dr))));
  } else {
    // The boundary of Delta^0 is empty, so the second piece is Delta^n itself.
    domain = domain.unite(Subcomplex::image(J.left));
  }
  auto hN = horn(N, k, T);
  auto expected = Subcomplex::image(inclusion_by_ids(hN, big));
  auto moved = Subcomplex::image(compose(*iso, materialize(J.object, domain).map));
  if (!(moved == expected)) return {false, "domain differs from the horn inside the simplex"};
  auto m = materialize(J.object, domain).sub;
  if (!find_isomorphism(m, hN)) return {false, "domain is not isomorphic to the horn"};
  return {true, "domain = Lambda^" + std::to_string(N) + "_" + std::to_string(k)};
}

Subcomplex e1_filtration_stage(const SSet& e1, int n) {
  std::string id;
  for (int i = 0; i <= n; ++i) id += (i % 2 ? "1" : "0");
  auto s = e1.at(id);
  return Subcomplex::generated(e1, std::span(&s, 1));
}

StructuralVerdict check_e1_filtration(int n) {
  if (n < 1) throw InvalidArgument("check_e1_filtration: needs n >= 1");
  const int D = n + 2;
  auto E = e_space({"0", "1"}, D);
  auto Zn = materialize(E, e1_filtration_stage(*E, n)).sub;
  auto Zn1 = materialize(E, e1_filtration_stage(*E, n + 1)).sub;
  auto simplex = delta(n + 1, D);
  auto H = horn(n + 1, 0, D);
  auto mod2 = [](const SSetPtr& src, const SSetPtr& dst) {
    std::vector<Index> vm;
    for (Index x = 0; x < src->size(0); ++x) vm.push_back(dst->at(std::to_string(std::stoi(src->id(0, x)) % 2)).index);
    return detail::vertex_map(src, dst, vm);
  };
  SMap g;
  try {
    g = mod2(H, Zn);
  } catch (const InvalidArgument&) {
    return {false, "attaching map does not land in Z_n"};
  }
  auto G = mod2(simplex, Zn1);
  auto PO = pushout(inclusion_by_ids(H, simplex), g);
  const SSet& Q = *PO.object;
  const int L = std::min(Q.trunc_dim(), Zn1->trunc_dim());
  std::vector<std::vector<Index>> a(L + 1);
  for (int d = 0; d <= L; ++d)
    for (Index x = 0; x < Q.size(d); ++x) {
      const auto& rep = PO.reps[d][x];
      a[d].push_back(rep.c_side ? Zn1->at(Zn->id(d, rep.index)).index : G(d, rep.index));
    }
  SMap cmp(PO.object, Zn1, std::move(a));
  if (!is_simplicial(cmp)) return {false, "comparison map is not simplicial"};
  if (!is_bijective(cmp)) return {false, "Z_{n+1} is not the pushout"};
  return {true, "Z_" + std::to_string(n + 1) + " = Z_" + std::to_string(n) + " +_{Lambda^" + std::to_string(n + 1) +
                    "_0} Delta^" + std::to_string(n + 1)};
}

// ---------------------------------------------------------------------------

AnodyneCertificate mutate(const AnodyneCertificate& cert, Mutation kind, std::mt19937_64& rng) {
  if (cert.steps.empty()) throw InvalidArgument("mutate: certificate has no steps");
  const SSet& X = *cert.ambient;
  AnodyneCertificate c = cert;
  const int S = static_cast<int>(c.steps.size());
  auto pick = [&](int hi) { return std::uniform_int_distribution<int>(0, hi - 1)(rng); };
  if (kind == Mutation::swap_dependent) {
    // Pairs (i, j) where a horn face of step j is created by step i.
    std::vector<std::pair<int, int>> deps;
    std::vector<std::pair<Simplex, Simplex>> created;
    for (const auto& st : c.steps) {
      auto t = X.at(st.simplex);
      created.push_back({t, {t.dim - 1, X.face(t.dim, st.k, t.index)}});
    }
    for (int j = 0; j < S; ++j) {
      auto t = X.at(c.steps[j].simplex);
      for (int l = 0; l <= t.dim; ++l) {
        if (l == c.steps[j].k) continue;
        const Simplex b = X.base(t.dim - 1, X.face(t.dim, l, t.index));
        for (int i = 0; i < j; ++i)
          if (created[i].first == b || created[i].second == b) deps.push_back({i, j});
      }
    }
    if (!deps.empty()) {
      auto [i, j] = deps[pick(static_cast<int>(deps.size()))];
      std::swap(c.steps[i], c.steps[j]);
      return c;
    }
    kind = Mutation::change_k;
  }
  const int s = pick(S);
  if (kind == Mutation::drop_step) {
    c.steps.erase(c.steps.begin() + s);
    return c;
  }
  const int n = X.at(c.steps[s].simplex).dim;
  int k = pick(n);
  if (k >= c.steps[s].k) ++k;
  c.steps[s].k = k;
  return c;
}

}  // namespace qcat
