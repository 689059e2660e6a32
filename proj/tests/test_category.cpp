#include <doctest.h>

#include "oracles.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/horn.hpp"

using namespace qcat;

namespace {

HoCategory ho_of(const SSetPtr& X) {
  auto q = verify_quasi_category(X, 3);
  REQUIRE(q.has_value());
  return ho_category(*q);
}

// The edge of N(C) for morphism f is the 1-chain named after f.
int class_of(const HoCategory& H, const SSetPtr& N, const FinCat& C, int f) {
  return H.edge_class[N->at(C.morphism(f).name).index];
}

}  // namespace

TEST_SUITE("category") {
  TEST_CASE("finite categories validate their tables") {
    FinCat C;
    C.add_object("a");
    const int e = C.add_morphism("e", 0, 0), g = C.add_morphism("g", 0, 0);
    C.set_identity(0, e);
    C.set_composite(e, e, e);
    C.set_composite(g, e, g);
    C.set_composite(e, g, g);
    CHECK_THROWS_AS(C.finalize(), InvalidArgument);  // g.g missing
    C.set_composite(g, g, g);
    CHECK_NOTHROW(C.finalize());
    CHECK_FALSE(C.invertible(g));

    FinCat bad;
    bad.add_object("a");
    bad.set_identity(0, bad.add_morphism("e", 0, 0));
    const int f = bad.add_morphism("f", 0, 0);
    bad.set_composite(0, 0, f);  // violates the identity law
    bad.set_composite(0, f, f);
    bad.set_composite(f, 0, f);
    bad.set_composite(f, f, f);
    CHECK_THROWS_AS(bad.finalize(), InvalidArgument);
  }

  TEST_CASE("nerves") {
    for (int n = 0; n <= 3; ++n) CHECK(find_isomorphism(nerve(poset_category(n), 6), delta(n, 6)).has_value());
    CHECK(find_isomorphism(nerve(groupoid2_category(), 6), e_space({"p", "q"}, 6)).has_value());
    auto z2 = nerve(bz2_category());
    CHECK(z2->size(2) == 4);
    CHECK(z2->size(2) == oracle::nerve_chains(bz2_category(), 2, false));
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 5);
      CHECK_MESSAGE(is_coskeletal(N, 2), name);
      for (int n = 0; n <= 5; ++n) {
        CHECK(N->size(n) == oracle::nerve_chains(C, n, false));
        CHECK(static_cast<long long>(N->nondegenerate_count(n)) == oracle::nerve_chains(C, n, true));
      }
    }
  }

  TEST_CASE("homotopy categories of nerves recover the category") {
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 5);
      auto H = ho_of(N);
      CHECK(H.base.object_count() == C.object_count());
      CHECK(H.base.morphism_count() == C.morphism_count());
      std::set<int> seen;
      for (int f = 0; f < C.morphism_count(); ++f) {
        const int cf = class_of(H, N, C, f);
        seen.insert(cf);
        CHECK(H.base.morphism(cf).src == C.morphism(f).src);
        CHECK(H.base.morphism(cf).dst == C.morphism(f).dst);
        for (int g = 0; g < C.morphism_count(); ++g)
          if (C.morphism(g).src == C.morphism(f).dst)
            CHECK(H.base.compose(class_of(H, N, C, g), cf) == class_of(H, N, C, C.compose(g, f)));
      }
      CHECK_MESSAGE(static_cast<int>(seen.size()) == C.morphism_count(), name);
    }
  }

  TEST_CASE("homotopy category examples") {
    auto H = ho_of(delta(3, 5));
    CHECK(H.base.object_count() == 4);
    CHECK(H.base.morphism_count() == oracle::simplex_all(3, 1));
    auto P = poset_category(3);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(H.base.hom(a, b).size() == oracle::hom(P, a, b).size());

    auto C = bz2_category();
    auto N = nerve(C, 5);
    auto Hz = ho_of(N);
    const int g = class_of(Hz, N, C, *C.find_morphism("g"));
    CHECK(Hz.base.compose(g, g) == Hz.base.identity(0));
  }

  TEST_CASE("composition witnesses: every 2-simplex records h = g.f") {
    for (const SSetPtr& X : {nerve(noninvertible3_category(), 4), nerve(bz2_category(), 4), e_space({"0", "1", "2"}, 4),
                             delta(3, 5)}) {
      auto H = ho_of(X);
      for (Index s = 0; s < X->size(2); ++s) {
        const int f = H.edge_class[X->face(2, 2, s)], gg = H.edge_class[X->face(2, 0, s)], h = H.edge_class[X->face(2, 1, s)];
        CHECK(H.base.compose(gg, f) == h);
      }
    }
  }

  TEST_CASE("isomorphism classes") {
    auto classes = iso_classes(ho_of(nerve(poset_category(1))));
    CHECK(classes.size() == 2);
    CHECK(iso_classes(ho_of(e_space({"0", "1"}, 5))).size() == 1);
    FinCat discrete;
    for (const char* o : {"u", "v", "w"}) {
      const int x = discrete.add_object(o);
      discrete.set_identity(x, discrete.add_morphism(std::string("id_") + o, x, x));
    }
    for (int o = 0; o < 3; ++o) discrete.set_composite(o, o, o);
    discrete.finalize();
    CHECK(iso_classes(ho_of(nerve(discrete))).size() == 3);
    for (const auto& [name, C] : corpus_categories())
      CHECK_MESSAGE(static_cast<int>(iso_classes(ho_of(nerve(C, 4))).size()) == oracle::iso_class_count(C), name);
  }

  TEST_CASE("ho_category needs a verified quasi-category") {
    CHECK_FALSE(verify_quasi_category(boundary(2), 3).has_value());
  }

  TEST_CASE("maps into nerves are functors") {
    // Delta^n: n-chains (Yoneda). Boundary of Delta^2: three edges with matching ends.
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 4);
      for (int n = 0; n <= 3; ++n)
        CHECK(static_cast<long long>(enumerate_maps(delta(n, 4), N).size()) == oracle::nerve_chains(C, n, false));
      long long triples = 0;
      for (int f = 0; f < C.morphism_count(); ++f)
        for (int g = 0; g < C.morphism_count(); ++g)
          for (int h = 0; h < C.morphism_count(); ++h)
            triples += C.morphism(g).src == C.morphism(f).dst && C.morphism(h).src == C.morphism(f).src &&
                       C.morphism(h).dst == C.morphism(g).dst;
      CHECK_MESSAGE(static_cast<long long>(enumerate_maps(boundary(2, 4), N).size()) == triples, name);
    }
  }
}
