#include <doctest.h>

#include "oracles.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/equivalence.hpp"
#include "qcat/necklace.hpp"

using namespace qcat;

namespace {

SMap to_point(const FinCat& C, const SSetPtr& NC, const SSetPtr& pt) {
  return nerve_map(C, point_category(), NC, pt, std::vector<int>(C.morphism_count(), 0));
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("identities are consistent") {
    for (const auto& [name, C] : corpus_categories()) {
      if (C.object_count() > 3) continue;
      auto N = nerve(C, 5);
      auto v = dk_check(identity_map(N), Bounds{3, -1, 3});
      CHECK_MESSAGE(!v.refuted, v.witness);
      CHECK(static_cast<int>(v.source_classes.size()) == oracle::iso_class_count(C));
      CHECK(v.pairs.size() == static_cast<std::size_t>(C.object_count() * C.object_count()));
    }
  }

  TEST_CASE("an equivalence of categories is consistent") {
    auto G = groupoid2_category();
    auto NG = nerve(G, 5), pt = nerve(point_category(), 5);
    auto v = dk_check(to_point(G, NG, pt), Bounds{3, -1, 3});
    CHECK_MESSAGE(!v.refuted, v.witness);
    CHECK(v.class_map == std::vector<int>{0});
    for (const auto& p : v.pairs) {
      CHECK(p.pi0_bijective);
      CHECK(p.homology_iso);
    }
  }

  TEST_CASE("a non-equivalence is refuted on isomorphism classes") {
    auto P = poset_category(1);
    auto NP = nerve(P, 5), pt = nerve(point_category(), 5);
    auto v = dk_check(to_point(P, NP, pt), Bounds{3, -1, 3});
    CHECK(v.refuted);
    CHECK(v.witness.find("iso classes") != std::string::npos);
    CHECK(v.source_classes.size() == 2);
    CHECK(v.target_classes.size() == 1);

    // bz2 -> point preserves classes but not the hom set at (x, x).
    auto Z = bz2_category();
    auto w = dk_check(to_point(Z, nerve(Z, 5), pt), Bounds{3, -1, 3});
    CHECK(w.refuted);
    CHECK(w.witness.find("pair ('x', 'x')") != std::string::npos);

    CHECK_THROWS_AS(dk_check(enumerate_maps(boundary(2, 5), pt).front()), NotVerifiedQuasiCategory);
  }

  TEST_CASE("composition with isomorphisms keeps the verdict") {
    auto G = groupoid2_category();
    auto NG = nerve(G, 5), pt = nerve(point_category(), 5);
    // The swap p <-> q is an automorphism of the codiscrete groupoid.
    std::vector<int> swap(G.morphism_count());
    for (int f = 0; f < G.morphism_count(); ++f) {
      const auto& m = G.morphism(f);
      swap[f] = G.hom(1 - m.src, 1 - m.dst).front();
    }
    auto s = nerve_map(G, G, NG, NG, swap);
    REQUIRE(is_bijective(s));
    CHECK_FALSE(dk_check(compose(to_point(G, NG, pt), s), Bounds{3, -1, 3}).refuted);
  }

  TEST_CASE("model agreement") {
    for (const auto& [name, C] : corpus_categories()) {
      if (C.object_count() > 2) continue;
      auto N = nerve(C, 6);
      for (int a = 0; a < C.object_count(); ++a)
        for (int b = 0; b < C.object_count(); ++b) {
          auto r = model_agreement(BiPointed{N, a, b}, Bounds{3, -1, 3});
          CHECK_MESSAGE(r.agree(), name);
          for (const auto& m : r.models)
            if (m.computed) CHECK(m.pi0 == static_cast<int>(oracle::hom(C, a, b).size()));
        }
    }
    auto r = model_agreement(BiPointed::of(delta(3), "0", "3"), Bounds{3, -1, 3});
    CHECK(r.agree());
    for (const auto& m : r.models)
      if (m.computed && m.model != "necklace")
        for (auto s : m.level_sizes) CHECK(s == 1);
    auto none = model_agreement(BiPointed::of(nerve(poset_category(1), 6), "1", "0"), Bounds{3, -1, 3});
    CHECK(none.agree());
    for (const auto& m : none.models)
      if (m.computed) CHECK(m.pi0 == 0);
    // Boundary of Delta^2 is not coskeletal: the E model is skipped with a notice.
    auto b = model_agreement(BiPointed::of(boundary(2), "0", "1"), Bounds{3, -1, 3});
    bool skipped = false;
    for (const auto& m : b.models) skipped = skipped || (m.model == "E" && !m.computed && !m.notice.empty());
    CHECK(skipped);
  }

  TEST_CASE("contractibility evidence") {
    // The necklace itself has no edge from its first to its last vertex, so the
    // R model (meaningful on quasi-categories) is empty there; its associated
    // simplex, into which it includes by an inner anodyne map, gives the point.
    const Necklace t{{2, 1}};
    auto raw = hom_model(IntervalKind::R, BiPointed::of(t.realize(6).sub, "0", "3"), 4);
    CHECK(raw.space->size(0) == 0);
    auto H = hom_model(IntervalKind::R, BiPointed::of(t.simplex(6), "0", "3"), 4);
    for (int l = 0; l <= H.space->trunc_dim(); ++l) CHECK(H.space->size(l) == 1);
    CHECK(contractibility_evidence(H.space, 4).consistent);
    auto c = contractibility_evidence(boundary(2), 3);
    CHECK_FALSE(c.consistent);
    CHECK(c.witness.find("H_1") != std::string::npos);
    auto e = contractibility_evidence(e_space({"0", "1"}, 5), 5);
    CHECK(e.consistent);
    CHECK(e.checked_up_to == 4);
  }
}
