#include "qcat/horn.hpp"

#include <algorithm>
#include <unordered_set>

#include "assemble.hpp"
#include "qcat/build.hpp"
#include "qcat/enumerate.hpp"

namespace qcat {

struct FibrancyChecker {
  static QuasiCategory make(SSetPtr X, int d) { return QuasiCategory(std::move(X), d); }
};

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ull;
    for (Index x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

std::vector<int> omit(int n, int i) {
  std::vector<int> v;
  for (int j = 0; j <= n; ++j)
    if (j != i) v.push_back(j);
  return v;
}

// Scans all horns of the given shapes; returns the first one without a filler.
FibrancyVerdict scan_horns(const SSetPtr& Xp, int d, bool outer) {
  const SSet& X = *Xp;
  if (d > X.trunc_dim()) throw InvalidArgument("fibrancy bound exceeds the truncation");
  FibrancyVerdict v;
  v.bound = d;
  for (int n = outer ? 1 : 2; n <= d; ++n)
    for (int k = outer ? 0 : 1; k <= (outer ? n : n - 1); ++k) {
      auto H = horn(n, k, n);
      std::vector<Simplex> face_cells;
      for (int i = 0; i <= n; ++i) face_cells.push_back(i == k ? Simplex{-1, -1} : H->at(simplex_label(omit(n, i))));
      std::unordered_set<std::vector<Index>, TupleHash> fillable;
      std::vector<Index> key(n + 1);
      for (Index x = 0; x < X.size(n); ++x) {
        for (int i = 0; i <= n; ++i) key[i] = i == k ? -1 : X.face(n, i, x);
        fillable.insert(key);
      }
      std::optional<std::vector<std::vector<Index>>> bad;
      visit_maps(H, Xp, {}, {}, [&](const std::vector<std::vector<Index>>& img) {
        for (int i = 0; i <= n; ++i) key[i] = i == k ? -1 : img[n - 1][face_cells[i].index];
        if (!fillable.count(key)) {
          bad = img;
          return false;
        }
        return true;
      });
      if (bad) {
        v.failure = HornInstance{n, k, extend_from_nondegenerate(H, Xp, *bad)};
        return v;
      }
    }
  v.verified = true;
  return v;
}

}  // namespace

std::vector<Index> horn_face_images(const HornInstance& h) {
  const SSet& H = *h.attachment.source();
  std::vector<Index> out(h.n + 1, -1);
  for (int i = 0; i <= h.n; ++i)
    if (i != h.k) out[i] = h.attachment(h.n - 1, H.at(simplex_label(omit(h.n, i))).index);
  return out;
}

std::vector<Index> find_fillers(const SSetPtr& Xp, const HornInstance& h) {
  const SSet& X = *Xp;
  if (h.n > X.trunc_dim()) throw InvalidArgument("find_fillers: horn dimension exceeds the truncation");
  auto faces = horn_face_images(h);
  std::vector<Index> out;
  for (Index x = 0; x < X.size(h.n); ++x) {
    bool ok = true;
    for (int i = 0; i <= h.n && ok; ++i) ok = i == h.k || X.face(h.n, i, x) == faces[i];
    if (ok) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [&](Index a, Index b) { return X.id(h.n, a) < X.id(h.n, b); });
  return out;
}

FibrancyVerdict is_inner_fibrant_up_to(const SSetPtr& X, int d) { return scan_horns(X, d, false); }
FibrancyVerdict is_kan_up_to(const SSetPtr& X, int d) { return scan_horns(X, d, true); }

std::optional<QuasiCategory> verify_quasi_category(const SSetPtr& X, int d) {
  auto v = is_inner_fibrant_up_to(X, d);
  if (!v.verified) return std::nullopt;
  return FibrancyChecker::make(X, d);
}

// ---------------------------------------------------------------------------

SSetPtr sk2_e1() {
  static const SSetPtr s = skeleton(e_space({"0", "1"}, 3), 2).sub;
  return s;
}

QuasiIsoVerdict quasi_iso(const SSetPtr& Xp, Index edge, QuasiIsoMode mode, const QuasiCategory* verified) {
  const SSet& X = *Xp;
  if (edge < 0 || edge >= X.size(1)) throw InvalidArgument("quasi_iso: edge out of range");
  if (verified && verified->space() != Xp) throw InvalidArgument("quasi_iso: verification is for another object");
  QuasiIsoVerdict v;
  v.witness.edge = edge;
  const Tri missing = verified ? Tri::no : Tri::unknown;
  switch (mode) {
    case QuasiIsoMode::providers: {
      if (X.trunc_dim() < 2) throw InvalidArgument("quasi_iso: needs 2-simplices");
      const Index a = X.face(1, 1, edge), b = X.face(1, 0, edge);
      const Index sa = X.degen(0, 0, a), sb = X.degen(0, 0, b);
      for (Index s = 0; s < X.size(2); ++s) {
        if (X.face(2, 2, s) == edge && X.face(2, 1, s) == sa)
          if (!v.witness.left_provider || X.id(2, s) < X.id(2, *v.witness.left_provider)) v.witness.left_provider = s;
        if (X.face(2, 0, s) == edge && X.face(2, 1, s) == sb)
          if (!v.witness.right_provider || X.id(2, s) < X.id(2, *v.witness.right_provider)) v.witness.right_provider = s;
      }
      v.answer = v.witness.left_provider && v.witness.right_provider ? Tri::yes : missing;
      return v;
    }
    case QuasiIsoMode::sk2e1: {
      auto K = sk2_e1();
      MapConstraint c{K->at("01"), edge};
      auto maps = enumerate_maps(K, Xp, std::span(&c, 1), {false, 1});
      if (!maps.empty()) v.witness.sk2e1_extension = maps.front();
      v.answer = maps.empty() ? missing : Tri::yes;
      return v;
    }
    case QuasiIsoMode::ho: {
      if (!verified) throw NotVerifiedQuasiCategory("quasi_iso mode ho needs a verified quasi-category");
      return quasi_iso(ho_category(*verified), edge);
    }
  }
  return v;
}

QuasiIsoVerdict quasi_iso(const HoCategory& H, Index edge) {
  QuasiIsoVerdict v;
  v.witness.edge = edge;
  v.answer = H.base.invertible(H.edge_class.at(edge)) ? Tri::yes : Tri::no;
  return v;
}

LiftResult special_horn_lift(const SSetPtr& Xp, const HornInstance& p, const std::optional<LiftOver>& over,
                             const QuasiCategory* verified) {
  const SSet& X = *Xp;
  if (p.k != 0 && p.k != p.n) throw InvalidArgument("special_horn_lift: horn must be outer");
  if (p.n < 2) throw InvalidArgument("special_horn_lift: horn dimension must be at least 2");
  const SSet& H = *p.attachment.source();
  const std::vector<int> ev = p.k == 0 ? std::vector<int>{0, 1} : std::vector<int>{p.n - 1, p.n};
  const Index edge = p.attachment(1, H.at(simplex_label(ev)).index);
  auto q = quasi_iso(Xp, edge, QuasiIsoMode::providers, verified);
  if (q.answer != Tri::yes)
    throw PreconditionNotQuasiIso("edge '" + X.id(1, edge) + "' of the horn is not a verified quasi-isomorphism");
  auto fillers = find_fillers(Xp, p);
  if (over) {
    if (over->fibration.source() != Xp) throw InvalidArgument("special_horn_lift: fibration has another source");
    std::erase_if(fillers, [&](Index s) { return over->fibration(p.n, s) != over->base_simplex; });
  }
  LiftResult r;
  if (!fillers.empty()) {
    r.filler = fillers.front();
  } else if (verified && verified->verified_dim() >= p.n) {
    r.diagnostic = "theorem violation: no filler for a special outer horn in a verified quasi-category (n=" +
                   std::to_string(p.n) + ", k=" + std::to_string(p.k) + ")";
  }
  return r;
}

// ---------------------------------------------------------------------------

Inclusion j_subcomplex(const QuasiCategory& Q) {
  auto H = ho_category(Q);
  const SSetPtr& Xp = Q.space();
  const SSet& X = *Xp;
  std::vector<char> iso(X.size(1), 0);
  for (Index e = 0; e < X.size(1); ++e) iso[e] = H.base.invertible(H.edge_class[e]);
  auto mask = Subcomplex::empty(X).mask();
  for (int n = 0; n <= X.trunc_dim(); ++n)
    for (Index x = 0; x < X.size(n); ++x) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j <= n && ok; ++j) {
          const int th[2] = {i, j};
          ok = iso[X.apply(n, x, th)];
        }
      mask[n][x] = ok;
    }
  return materialize(Xp, Subcomplex::from_mask(X, std::move(mask)));
}

SSetPtr slice(const SSetPtr& Xp, const SMap& k, std::optional<int> trunc) {
  const SSet& X = *Xp;
  const SSetPtr& K = k.source();
  if (k.target() != Xp) throw InvalidArgument("slice: map does not land in X");
  if (!K->stable()) throw InvalidArgument("slice: the source of k must be stable");
  const int q = K->max_nondegenerate_dim();
  const int t = trunc ? *trunc : X.trunc_dim() - q - 1;
  if (t < 0) throw InvalidArgument("slice: truncation too small for this K");
  const int T = std::max(t + q + 2, 1);
  auto Kw = retruncate(K, std::max(T, K->trunc_dim()));
  detail::CosimplicialDiagram C;
  std::vector<JoinResult> J;
  std::vector<SSetPtr> simplices;
  for (int n = 0; n <= t; ++n) {
    simplices.push_back(delta(n, T));
    J.push_back(join(simplices[n], Kw, T));
    C.obj.push_back(J[n].object);
  }
  auto idK = identity_map(Kw);
  C.coface.resize(t + 1);
  C.codegen.resize(t + 1);
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      C.coface[n].push_back(join_map(J[n - 1], J[n],
                                     detail::simplex_map(simplices[n - 1], simplices[n], detail::coface_vertices(n, i)), idK));
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      C.codegen[n].push_back(join_map(J[n + 1], J[n],
                                      detail::simplex_map(simplices[n + 1], simplices[n], detail::codegen_vertices(n, i)), idK));
  std::vector<MapConstraint> cons;
  for (int n = 0; n <= std::min(q, k.levels() - 1); ++n)
    for (Index y : K->nondegenerate_simplices(n)) {
      Index yw = Kw->at(K->id(n, y)).index;
      cons.push_back({{n, 0}, k(n, y)});
      cons.back().source.index = yw;
    }
  std::vector<std::vector<SMap>> maps(t + 1);
  for (int n = 0; n <= t; ++n) {
    std::vector<MapConstraint> cn;
    for (const auto& c : cons) cn.push_back({J[n].right(c.source), c.target});
    maps[n] = enumerate_maps(C.obj[n], Xp, cn);
  }
  return detail::assemble_map_space(C, Xp, maps, "sl");
}

}  // namespace qcat
