#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcat/anodyne.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"

using namespace qcat;

namespace {

Subcomplex generated_by(const SSet& X, const std::vector<std::string>& ids) {
  std::vector<Simplex> g;
  for (const auto& s : ids) g.push_back(X.at(s));
  return Subcomplex::generated(X, g);
}

// Every nondegenerate simplex outside start is a step target or the face it attaches.
bool exhaustive(const AnodyneCertificate& c) {
  const SSet& X = *c.ambient;
  std::set<Simplex> added;
  for (const auto& st : c.steps) {
    auto t = X.at(st.simplex);
    added.insert(t);
    added.insert({t.dim - 1, X.face(t.dim, st.k, t.index)});
  }
  std::set<Simplex> missing;
  for (int n = 0; n <= X.trunc_dim(); ++n)
    for (Index x : X.nondegenerate_simplices(n))
      if (!c.start.contains(n, x)) missing.insert({n, x});
  return added == missing;
}

int count_class(const AnodyneCertificate& c, HornClass cls) {
  return static_cast<int>(std::count_if(c.steps.begin(), c.steps.end(), [&](auto& s) { return s.cls == cls; }));
}

void check_mutations(const AnodyneCertificate& c, int rounds, std::uint64_t seed) {
  if (c.steps.empty()) return;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < rounds; ++i) {
    const auto kind = static_cast<Mutation>(i % 3);
    CHECK_FALSE(verify(mutate(c, kind, rng)).valid);
  }
}

}  // namespace

TEST_SUITE("anodyne") {
  TEST_CASE("box products of inner horns") {
    auto c = gen_box_inner(2, 1, 1);
    CHECK(verify(c).valid);
    CHECK(c.end == Subcomplex::full(*c.ambient));
    // Shuffles of (2, 1): C(3, 1) top simplices, none of them in the start.
    long long fresh_top = 0;
    for (Index x : c.ambient->nondegenerate_simplices(3)) fresh_top += c.end.contains(3, x) && !c.start.contains(3, x);
    CHECK(fresh_top == oracle::binom(3, 1));
    CHECK(static_cast<long long>(c.ambient->nondegenerate_count(3)) == oracle::binom(3, 1));
    CHECK(exhaustive(c));

    auto r0 = gen_box_inner(2, 1, 0);
    CHECK(verify(r0).valid);
    REQUIRE(r0.steps.size() == 1);
    CHECK(r0.steps[0].k == 1);

    for (int n = 2; n <= 3; ++n)
      for (int k = 1; k < n; ++k)
        for (int r = 0; r <= 2; ++r) {
          auto g = gen_box_inner(n, k, r);
          CHECK(verify(g).valid);
          CHECK(exhaustive(g));
          CHECK(count_class(g, HornClass::inner) == static_cast<int>(g.steps.size()));
        }
    CHECK_THROWS_AS(gen_box_inner(2, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(gen_box_inner(2, 2, 1), InvalidArgument);
  }

  TEST_CASE("box products with the special endpoint") {
    for (int r = 1; r <= 2; ++r) {
      auto c = gen_box_special(r, 4);
      auto v = verify(c);
      CHECK(v.valid);
      CHECK(c.partial);
      CHECK(v.verified_dim >= 1);
      CHECK(count_class(c, HornClass::special_left) + count_class(c, HornClass::special_right) > 0);
    }
    CHECK_THROWS_AS(gen_box_special(0, 4), InvalidArgument);
  }

  TEST_CASE("spines") {
    CHECK(gen_spine_simplex(1).steps.size() == 1);
    CHECK(gen_spine_simplex(2).steps.size() == 3);
    CHECK(gen_spine_simplex(3).steps.size() == 7);
    for (int n = 1; n <= 5; ++n) {
      auto c = gen_spine_simplex(n);
      long long expect = 0;
      for (int i = 0; i < n; ++i) expect += oracle::binom(n, i + 1);
      CHECK(static_cast<long long>(c.steps.size()) == expect);
      CHECK(verify(c).valid);
      CHECK(exhaustive(c));
    }
    for (int r = 1; r <= 4; ++r) {
      auto c = gen_spine(r);
      CHECK(verify(c).valid);
      CHECK(c.start.count(1) == static_cast<std::size_t>(2 * (r + 1) - 1));  // r + 1 vertices, r spine edges
    }
  }

  TEST_CASE("squashed simplices") {
    CHECK(gen_squash(1, 0).steps.empty());
    CHECK(verify(gen_squash(1, 0)).valid);
    for (int n = 2; n <= 5; ++n) {
      auto c = gen_squash(n, 0);
      long long expect = 0;
      for (int i = 0; i < n - 1; ++i) expect += oracle::binom(n - 1, i + 1);
      CHECK(static_cast<long long>(c.steps.size()) == expect);
      CHECK(verify(c).valid);
    }
    auto c31 = gen_squash(3, 1);
    CHECK(verify(c31).valid);
    CHECK(find_isomorphism(c31.ambient, squashed_simplex(3, 1)).has_value());
    // Delta^n_k has n + 1 - k - (n - k - 1) = 2 vertices.
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k < n; ++k) CHECK(squashed_simplex(n, k)->size(0) == 2);
    CHECK_THROWS_AS(gen_squash(2, 2), InvalidArgument);
  }

  TEST_CASE("cylinder filtration") {
    auto c0 = gen_cyl_squash(0);
    for (const auto& c : c0) CHECK(c.steps.empty());
    CHECK(gen_cyl_squash(1).size() == 2);
    for (int n = 1; n <= 3; ++n)
      for (const auto& c : gen_cyl_squash(n)) CHECK(verify(c).valid);
    CHECK(gen_cyl_squash(2).back().ambient->nondegenerate_count(3) == 3);
  }

  TEST_CASE("crafted invalid certificates") {
    auto d2 = delta(2);
    AnodyneCertificate bounding{d2, generated_by(*d2, {"01", "02", "12"}), {{"012", 1, HornClass::inner}},
                                Subcomplex::full(*d2)};
    auto v = verify(bounding);
    CHECK_FALSE(v.valid);
    CHECK(v.step == 0);
    CHECK(v.reason == "bounding");

    auto N = nerve(poset_category(2), 4);
    const Index top = N->nondegenerate_simplices(2).front();
    const std::string t = N->id(2, top);
    AnodyneCertificate special{N,
                               generated_by(*N, {N->id(1, N->face(2, 1, top)), N->id(1, N->face(2, 2, top))}),
                               {{t, 0, HornClass::special_left}},
                               Subcomplex::full(*N)};
    v = verify(special);
    CHECK_FALSE(v.valid);
    CHECK(v.reason == "not-special");

    AnodyneCertificate outer = bounding;
    outer.start = generated_by(*d2, {"01", "12"});
    outer.steps[0].k = 0;
    CHECK(verify(outer).reason == "not-inner");

    AnodyneCertificate unknown = bounding;
    unknown.steps[0].simplex = "0123";
    CHECK(verify(unknown).reason.starts_with("malformed"));

    AnodyneCertificate short_end = gen_spine_simplex(2);
    short_end.steps.pop_back();
    CHECK(verify(short_end).reason.starts_with("end-mismatch"));
  }

  TEST_CASE("single-step mutations are rejected") {
    check_mutations(gen_box_inner(2, 1, 1), 60, 1);
    check_mutations(gen_spine_simplex(3), 60, 2);
    check_mutations(gen_squash(3, 0), 60, 3);
    check_mutations(gen_box_special(1, 4), 60, 4);
  }

  TEST_CASE("join boxes and the E^1 filtration") {
    CHECK(check_joinbox(2, 1, 1).ok);
    CHECK(check_joinbox(1, 1, 0).ok);
    CHECK(check_joinbox(2, 2, 1).ok);
    CHECK_THROWS_AS(check_joinbox(1, 0, 1), InvalidArgument);
    for (int n = 1; n <= 4; ++n) CHECK_MESSAGE(check_e1_filtration(n).ok, check_e1_filtration(n).detail);
    auto e1 = e_space({"0", "1"}, 4);
    auto z2 = e1_filtration_stage(*e1, 2);
    CHECK(z2.count(2) > 0);
    CHECK(z2.contains(e1->at("010")));
    CHECK_FALSE(z2.contains(e1->at("101")));
  }
}
