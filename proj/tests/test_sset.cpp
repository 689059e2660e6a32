#include <doctest.h>

#include "oracles.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/mapping.hpp"

using namespace qcat;

namespace {

std::vector<long long> nondeg(const SSet& X) {
  std::vector<long long> v;
  for (int n = 0; n <= X.trunc_dim(); ++n) v.push_back(static_cast<long long>(X.nondegenerate_count(n)));
  return v;
}

bool isomorphic(const SSetPtr& X, const SSetPtr& Y) { return find_isomorphism(X, Y).has_value(); }

std::vector<std::string> nondeg_ids(const SSet& X, int n) {
  std::vector<std::string> out;
  for (Index x : X.nondegenerate_simplices(n)) out.push_back(X.id(n, x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("sset") {
  TEST_CASE("standard simplices") {
    auto d0 = delta(0);
    CHECK(d0->size(0) == 1);
    for (int n = 1; n <= d0->trunc_dim(); ++n) CHECK(d0->nondegenerate_count(n) == 0);
    CHECK(d0->stable());

    auto d2 = delta(2);
    CHECK(nondeg(*d2)[0] == 3);
    CHECK(nondeg(*d2)[1] == 3);
    CHECK(nondeg(*d2)[2] == 1);
    CHECK(d2->trunc_dim() >= 3);

    auto d3 = delta(3);
    CHECK(d3->size(1) == oracle::simplex_all(3, 1));
    CHECK(static_cast<long long>(d3->nondegenerate_count(1)) == oracle::simplex_nondegenerate(3, 1));
    for (int n = 0; n <= 4; ++n) {
      auto d = delta(n);
      CHECK(d->stable());
      for (int k = 0; k <= d->trunc_dim(); ++k) {
        CHECK(d->size(k) == oracle::simplex_all(n, k));
        CHECK(oracle::nondegenerate_counts(*d)[k] == oracle::simplex_nondegenerate(n, k));
      }
    }
  }

  TEST_CASE("boundaries and horns") {
    auto b1 = boundary(1);
    CHECK(b1->size(0) == 2);
    CHECK(b1->nondegenerate_count(1) == 0);

    auto h21 = horn(2, 1);
    CHECK(nondeg_ids(*h21, 0) == std::vector<std::string>{"0", "1", "2"});
    CHECK(nondeg_ids(*h21, 1) == std::vector<std::string>{"01", "12"});
    CHECK(h21->nondegenerate_count(2) == 0);

    auto h30 = horn(3, 0);
    CHECK(nondeg_ids(*h30, 2) == std::vector<std::string>{"012", "013", "023"});

    CHECK_THROWS_AS(horn(2, 3), InvalidArgument);
    CHECK_THROWS_AS(horn(2, -1), InvalidArgument);
    CHECK(boundary(3)->stable());
    CHECK(horn(3, 1)->stable());
  }

  TEST_CASE("e-spaces") {
    auto e = e_space({"0", "1"}, 5);
    for (int n = 1; n <= 5; ++n) CHECK(e->nondegenerate_count(n) == 2);
    CHECK_FALSE(e->stable());
    CHECK(isomorphic(e_space({"x"}, 6), delta(0, 6)));
    auto e3 = e_space({"0", "1", "2"}, 2);
    CHECK(e3->size(1) == 9);
    for (int n = 0; n <= 2; ++n) CHECK(e3->size(n) == oracle::count_sequences(3, n, [](auto&) { return true; }));
    for (int n = 1; n <= 2; ++n)
      CHECK(static_cast<long long>(e3->nondegenerate_count(n)) == oracle::e_space_nondegenerate(3, n));
    CHECK_THROWS_AS(e_space({}, 3), InvalidArgument);
  }

  TEST_CASE("products") {
    auto sq = product(delta(1), delta(1)).object;
    CHECK(sq->nondegenerate_count(2) == 2);
    CHECK(sq->nondegenerate_count(1) == 5);
    auto prism = product(delta(2), delta(1)).object;
    CHECK(static_cast<long long>(prism->nondegenerate_count(3)) == oracle::binom(3, 1));
    CHECK(isomorphic(product(boundary(2), delta(0)).object, boundary(2)));
    for (int p = 1; p <= 3; ++p) {
      auto P = product(delta(p, 6), delta(1, 6)).object;
      CHECK(static_cast<long long>(P->nondegenerate_count(p + 1)) == oracle::binom(p + 1, 1));
      CHECK(oracle::nondegenerate_counts(*P) == nondeg(*P));
      CHECK(audit(*P).empty());
    }
  }

  TEST_CASE("joins") {
    CHECK(isomorphic(join(delta(2, 5), delta(1, 5), 5).object, delta(4, 5)));
    CHECK(isomorphic(join(empty_sset(6), delta(2, 6), 6).object, delta(2, 6)));
    CHECK(isomorphic(join(delta(2, 6), empty_sset(6), 6).object, delta(2, 6)));
    CHECK(isomorphic(join(delta(0, 4), delta(0, 4), 4).object, delta(1, 4)));
    auto J = join(delta(1, 4), delta(0, 4), 4);
    CHECK(is_simplicial(J.left));
    CHECK(is_simplicial(J.right));
    CHECK(is_injective(J.left));
  }

  TEST_CASE("quotients") {
    auto d2 = delta(2);
    auto q = quotient(d2, Subcomplex::generated(*d2, std::vector<Simplex>{d2->at("01")}));
    CHECK(nondeg(*q.object)[0] == 2);
    CHECK(nondeg(*q.object)[1] == 2);
    CHECK(nondeg(*q.object)[2] == 1);
    CHECK(is_simplicial(q.projection));
    CHECK(isomorphic(quotient(d2, Subcomplex::empty(*d2)).object, d2));
    auto d1 = delta(1);
    auto circle = quotient(d1, Subcomplex::generated(*d1, std::vector<Simplex>{d1->at("0"), d1->at("1")})).object;
    CHECK(circle->size(0) == 1);
    CHECK(circle->nondegenerate_count(1) == 1);
    CHECK(audit(*circle).empty());
  }

  TEST_CASE("pushouts and pullbacks") {
    auto b1 = boundary(1), d1 = delta(1);
    auto glued = pushout(identity_map(b1), inclusion_by_ids(b1, d1));
    CHECK(isomorphic(glued.object, d1));
    auto same = pushout(identity_map(b1), identity_map(b1));
    CHECK(isomorphic(same.object, b1));
    // C_cyl(Delta^0): Delta^0 x Delta^1 with its ends glued to the boundary of Delta^1.
    auto p = product(delta(0), d1);
    auto ends = product(delta(0), b1);
    auto into = product_map(ends, p, identity_map(delta(0)), inclusion_by_ids(b1, d1));
    auto cyl = pushout(into, ends.pr2);
    CHECK(isomorphic(cyl.object, d1));
    auto v0 = enumerate_maps(delta(0), d1).front();
    CHECK(d1->id(0, v0(0, 0)) == "0");
    auto pb = pullback(v0, v0);
    CHECK(isomorphic(pb.object, delta(0)));
  }

  TEST_CASE("skeleta and coskeleta") {
    auto sk = skeleton(e_space({"0", "1"}, 5), 2).sub;
    CHECK(sk->nondegenerate_count(1) == 2);
    CHECK(sk->nondegenerate_count(2) == 2);
    for (int n = 3; n <= 5; ++n) CHECK(sk->nondegenerate_count(n) == 0);
    CHECK(is_coskeletal(e_space({"0", "1", "2"}, 4), 0));
    CHECK(is_coskeletal(nerve(poset_category(2)), 2));
    auto c = coskeleton(boundary(2, 4), 1);
    CHECK(is_coskeletal(c, 1));
    CHECK(isomorphic(c, delta(2, 4)));
    CHECK_FALSE(is_coskeletal(boundary(2, 4), 1));
  }

  TEST_CASE("map enumeration") {
    CHECK(enumerate_maps(delta(1), delta(1)).size() == 3);
    const auto monotone_triples = oracle::count_sequences(2, 2, [](const std::vector<int>& v) {
      return v[0] <= v[1] && v[1] <= v[2];
    });
    CHECK(static_cast<long long>(enumerate_maps(boundary(2), delta(1)).size()) == monotone_triples);
    CHECK(enumerate_maps(boundary(2), delta(1)).size() == 4);
    CHECK(enumerate_maps(delta(1), delta(2)).size() == 6);
    auto Y = nerve(bz2_category(), 5);
    for (int n = 0; n <= 3; ++n) CHECK(static_cast<Index>(enumerate_maps(delta(n, 5), Y).size()) == Y->size(n));
    // Canonical order is deterministic and duplicate-free.
    auto a = enumerate_maps(delta(2, 5), Y), b = enumerate_maps(delta(2, 5), Y);
    CHECK(a == b);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK_FALSE(a[i] == a[i - 1]);
    // Neither supported case: an unstable source into a non-coskeletal target.
    CHECK_THROWS_AS(enumerate_maps(e_space({"0", "1"}, 4), boundary(2, 4)), UnsupportedEnumeration);
  }

  TEST_CASE("every corpus object passes the identity audit") {
    for (const auto& f : corpus_files()) {
      if (!f.content.contains("levels")) continue;
      auto X = sset_from_json(f.content, f.path);
      CHECK_MESSAGE(audit(*X).empty(), f.path);
      CHECK_MESSAGE(oracle::nondegenerate_counts(*X) == nondeg(*X), f.path);
    }
  }
}
