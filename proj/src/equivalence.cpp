#include "qcat/equivalence.hpp"

#include <algorithm>
#include <set>

#include "qcat/category.hpp"
#include "qcat/horn.hpp"
#include "qcat/necklace.hpp"

namespace qcat {

namespace {

std::vector<int> class_of_vertex(const HoCategory& H) {
  std::vector<int> of(H.base.object_count(), -1);
  auto classes = iso_classes(H);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (int o : classes[c]) of[o] = c;
  return of;
}

QuasiCategory require_quasi_category(const SSetPtr& X, const char* side) {
  auto q = verify_quasi_category(X, 3);
  if (!q) throw NotVerifiedQuasiCategory(std::string("dk_check: the ") + side + " is not an inner-fibrant complex up to dimension 3");
  return *q;
}

}  // namespace

EquivalenceVerdict dk_check(const SMap& f, Bounds bounds) {
  EquivalenceVerdict v;
  v.bounds = bounds;
  const SSetPtr& X = f.source();
  const SSetPtr& Y = f.target();
  auto qx = require_quasi_category(X, "source");
  auto qy = require_quasi_category(Y, "target");
  auto hx = ho_category(qx), hy = ho_category(qy);
  auto cx = iso_classes(hx), cy = iso_classes(hy);
  auto ofy = class_of_vertex(hy);
  for (const auto& c : cx) v.source_classes.push_back(X->id(0, c.front()));
  for (const auto& c : cy) v.target_classes.push_back(Y->id(0, c.front()));
  std::vector<int> preimages(cy.size(), 0);
  for (const auto& c : cx) {
    const int t = ofy[f(0, c.front())];
    v.class_map.push_back(t);
    ++preimages[t];
  }
  for (std::size_t t = 0; t < cy.size() && !v.refuted; ++t)
    if (preimages[t] != 1) {
      v.refuted = true;
      v.witness = "iso classes: " + std::to_string(cx.size()) + " in the source, " + std::to_string(cy.size()) +
                  " in the target; class of '" + v.target_classes[t] + "' has " + std::to_string(preimages[t]) +
                  " preimages";
    }
  if (v.refuted) return v;
  const int m = bounds.m;
  for (Index a = 0; a < X->size(0); ++a)
    for (Index b = 0; b < X->size(0); ++b) {
      PairRecord r;
      r.a = X->id(0, a);
      r.b = X->id(0, b);
      r.model = "cyl";
      auto hx_ab = hom_model(IntervalKind::cyl, {X, a, b}, m, bounds.D);
      auto hy_ab = hom_model(IntervalKind::cyl, {Y, f(0, a), f(0, b)}, m, bounds.D);
      auto g = postcompose(hx_ab, hy_ab, f);
      r.pi0_source = pi0(*hx_ab.space).count;
      r.pi0_target = pi0(*hy_ab.space).count;
      auto ev = homology_iso(g, m - 1);
      r.pi0_bijective = ev.pi0_bijective;
      r.homology_iso = ev.iso;
      r.checked_up_to = ev.checked_up_to;
      r.witness = ev.witness;
      v.pairs.push_back(r);
      if (!v.refuted && !(ev.pi0_bijective && ev.iso)) {
        v.refuted = true;
        v.witness = "pair ('" + r.a + "', '" + r.b + "'): " + ev.witness;
      }
    }
  return v;
}

namespace {

ModelSummary summarize(const std::string& name, const SSetPtr& space, int m) {
  ModelSummary s;
  s.model = name;
  s.computed = true;
  for (int n = 0; n <= space->trunc_dim(); ++n) s.level_sizes.push_back(static_cast<std::size_t>(space->size(n)));
  s.pi0 = pi0(*space).count;
  const int top = std::max(0, m - 1);
  s.homology = homology(*space, top).groups;
  s.acyclic_failure = componentwise_acyclic(space, top);
  return s;
}

}  // namespace

AgreementReport model_agreement(const BiPointed& S, Bounds bounds) {
  AgreementReport rep;
  rep.bounds = bounds;
  const int m = bounds.m;
  auto ms = comparison_maps(S, m, bounds.D);
  rep.models.push_back(summarize("R", ms.R.space, m));
  rep.models.push_back(summarize("L", ms.L.space, m));
  rep.models.push_back(summarize("cyl", ms.cyl.space, m));
  if (ms.E) {
    rep.models.push_back(summarize("E", ms.E->space, m));
  } else {
    rep.models.push_back({"E", false, "skipped: the target is not known to be coskeletal", {}, 0, {}, {}});
  }
  try {
    auto nk = necklace_model(S, bounds.V, m);
    auto s = summarize("necklace", nk.nerve, m);
    s.notice = "bounded by V = " + std::to_string(bounds.V);
    rep.models.push_back(s);
  } catch (const InvalidArgument& e) {
    rep.models.push_back({"necklace", false, std::string("skipped: ") + e.what(), {}, 0, {}, {}});
  }
  const ModelSummary* ref = nullptr;
  for (const auto& s : rep.models) {
    if (!s.computed) continue;
    if (!s.acyclic_failure.empty()) rep.disagreements.push_back(s.model + ": " + s.acyclic_failure);
    if (!ref) {
      ref = &s;
      continue;
    }
    if (s.pi0 != ref->pi0)
      rep.disagreements.push_back("pi0: " + ref->model + " has " + std::to_string(ref->pi0) + ", " + s.model +
                                  " has " + std::to_string(s.pi0));
    if (s.homology != ref->homology) rep.disagreements.push_back("homology: " + ref->model + " vs " + s.model);
  }
  auto check = [&](const std::string& name, const SMap& g) {
    auto ev = homology_iso(g, m - 1);
    const bool ok = ev.pi0_bijective && ev.iso;
    rep.comparison_checks.push_back(name + ": " + (ok ? "pi0 bijection, H_* isomorphism through degree " +
                                                             std::to_string(ev.checked_up_to)
                                                       : ev.witness));
    if (!ok) rep.disagreements.push_back(name + ": " + ev.witness);
  };
  if (ms.maps.e_to_cyl) check("E -> cyl", *ms.maps.e_to_cyl);
  check("cyl -> R", ms.maps.cyl_to_r);
  check("cyl -> L", ms.maps.cyl_to_l);
  return rep;
}

ContractibilityVerdict contractibility_evidence(const SSetPtr& K, int m) {
  ContractibilityVerdict v;
  auto c = pi0(*K);
  if (c.count != 1) {
    v.witness = "pi0 has " + std::to_string(c.count) + " elements";
    return v;
  }
  auto h = homology(*K, std::max(0, m - 1));
  const int top = std::min(std::max(0, m - 1), h.trusted);
  for (int k = 0; k <= top; ++k) {
    const HomologyGroup want = k == 0 ? HomologyGroup{1, {}} : HomologyGroup{0, {}};
    if (h.groups[k] != want) {
      v.witness = "H_" + std::to_string(k) + " = " + to_string(h.groups[k]);
      v.checked_up_to = k - 1;
      return v;
    }
  }
  v.consistent = true;
  v.checked_up_to = top;
  return v;
}

}  // namespace qcat
