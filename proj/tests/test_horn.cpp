#include <doctest.h>

#include "oracles.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/horn.hpp"
#include "qcat/mapping.hpp"

using namespace qcat;

namespace {

// The horn (n, k) in X with the given faces, by identifier (entry k ignored).
HornInstance horn_at(const SSetPtr& X, int n, int k, const std::vector<std::string>& faces) {
  auto H = horn(n, k, n);
  std::vector<MapConstraint> cons;
  for (int i = 0; i <= n; ++i) {
    if (i == k) continue;
    std::string label;
    for (int j = 0; j <= n; ++j)
      if (j != i) label += std::to_string(j);
    cons.push_back({H->at(label), X->at(faces[i]).index});
  }
  auto maps = enumerate_maps(H, X, cons);
  REQUIRE(maps.size() == 1);
  return {n, k, maps.front()};
}

std::vector<HornInstance> all_horns(const SSetPtr& X, int n, int k) {
  std::vector<HornInstance> out;
  for (auto& f : enumerate_maps(horn(n, k, n), X)) out.push_back({n, k, f});
  return out;
}

}  // namespace

TEST_SUITE("horn") {
  TEST_CASE("fillers in nerves are unique") {
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 4);
      for (int n = 2; n <= 3; ++n)
        for (int k = 1; k < n; ++k)
          for (const auto& h : all_horns(N, n, k)) CHECK_MESSAGE(find_fillers(N, h).size() == 1, name);
    }
    auto P = nerve(poset_category(2));
    auto h = horn_at(P, 2, 0, {"", "0->2", "0->1"});
    CHECK(find_fillers(P, h).size() == 1);
    // f : a -> b and k : a -> c admit no g with g.f = k (g.f = h instead).
    auto Q = nerve(noninvertible3_category());
    CHECK(find_fillers(Q, horn_at(Q, 2, 0, {"", "k", "f"})).empty());
    CHECK(find_fillers(Q, horn_at(Q, 2, 0, {"", "h", "f"})).size() == 1);
  }

  TEST_CASE("inner fibrancy") {
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 6);
      const int d = C.morphism_count() <= 4 ? 5 : 4;
      auto v = is_inner_fibrant_up_to(N, d);
      CHECK_MESSAGE(v.verified, name);
      CHECK_FALSE(oracle::unfillable_horn(*N, 3, false).has_value());
    }
    auto v = is_inner_fibrant_up_to(boundary(2), 2);
    REQUIRE_FALSE(v.verified);
    CHECK(v.failure->n == 2);
    CHECK(v.failure->k == 1);
    CHECK(oracle::unfillable_horn(*boundary(2), 2, false).has_value());
    CHECK(is_inner_fibrant_up_to(delta(0), 3).verified);
    CHECK(is_kan_up_to(e_space({"0", "1"}, 5), 4).verified);
    CHECK_FALSE(is_kan_up_to(delta(1), 2).verified);
  }

  TEST_CASE("quasi-isomorphisms") {
    auto Z = nerve(bz2_category(), 5);
    auto qz = verify_quasi_category(Z, 3);
    REQUIRE(qz);
    for (Index e = 0; e < Z->size(1); ++e)
      for (auto mode : {QuasiIsoMode::providers, QuasiIsoMode::sk2e1, QuasiIsoMode::ho})
        CHECK(quasi_iso(Z, e, mode, &*qz).answer == Tri::yes);
    auto P = nerve(poset_category(1), 5);
    auto qp = verify_quasi_category(P, 3);
    REQUIRE(qp);
    CHECK(quasi_iso(P, P->at("0->1").index, QuasiIsoMode::ho, &*qp).answer == Tri::no);
    CHECK(quasi_iso(P, P->at("0->1").index, QuasiIsoMode::providers, &*qp).answer == Tri::no);
    // Without verification, missing witnesses give "unknown".
    CHECK(quasi_iso(P, P->at("0->1").index, QuasiIsoMode::providers).answer == Tri::unknown);
    CHECK_THROWS_AS(quasi_iso(P, 0, QuasiIsoMode::ho), NotVerifiedQuasiCategory);
    for (const SSetPtr& X : {delta(2), boundary(2), e_space({"0", "1"}, 4)}) {
      for (Index v = 0; v < X->size(0); ++v) {
        auto r = quasi_iso(X, X->degen(0, 0, v), QuasiIsoMode::providers);
        CHECK(r.answer == Tri::yes);
        REQUIRE(r.witness.left_provider);
        CHECK(X->face(2, 2, *r.witness.left_provider) == X->degen(0, 0, v));
      }
    }
    CHECK(sk2_e1()->nondegenerate_count(2) == 2);
    CHECK(sk2_e1()->nondegenerate_count(3) == 0);
  }

  TEST_CASE("special outer horns lift") {
    auto Z = nerve(bz2_category(), 5);
    auto qz = verify_quasi_category(Z, 3);
    auto h = horn_at(Z, 2, 0, {"", "e", "g"});
    auto r = special_horn_lift(Z, h, std::nullopt, &*qz);
    REQUIRE(r.filler);
    CHECK(Z->id(2, *r.filler) == "g|g");

    auto E = e_space({"0", "1", "2"}, 4);
    for (const auto& h3 : all_horns(E, 3, 0)) CHECK(special_horn_lift(E, h3).filler.has_value());

    auto P = nerve(poset_category(2));
    auto qp = verify_quasi_category(P, 3);
    CHECK_THROWS_AS(special_horn_lift(P, horn_at(P, 2, 0, {"", "0->2", "0->1"}), std::nullopt, &*qp),
                    PreconditionNotQuasiIso);
  }

  TEST_CASE("the maximal Kan subcomplex") {
    auto Z = nerve(bz2_category(), 5);
    auto J = j_subcomplex(*verify_quasi_category(Z, 3));
    CHECK(find_isomorphism(J.sub, Z).has_value());
    auto D = delta(3, 5);
    auto JD = j_subcomplex(*verify_quasi_category(D, 3));
    CHECK(JD.sub->size(0) == 4);
    for (int n = 1; n <= JD.sub->trunc_dim(); ++n) CHECK(JD.sub->nondegenerate_count(n) == 0);
    for (const auto& [name, C] : corpus_categories()) {
      auto N = nerve(C, 5);
      auto JC = j_subcomplex(*verify_quasi_category(N, 3));
      CHECK_MESSAGE(find_isomorphism(JC.sub, nerve(core(C), 5)).has_value(), name);
      CHECK(is_kan_up_to(JC.sub, 3).verified);
    }
  }

  TEST_CASE("slices") {
    auto X = nerve(noninvertible3_category(), 6);
    auto empty = empty_sset(6);
    auto s0 = slice(X, SMap(empty, X, std::vector<std::vector<Index>>(7)));
    CHECK(find_isomorphism(s0, retruncate(X, s0->trunc_dim())).has_value());

    // Over a vertex v of Delta^2: simplices [w_0 .. w_n, v], so the slice is the cone {0..v}.
    auto D = delta(2, 6);
    for (Index v = 0; v < 3; ++v) {
      auto k = enumerate_maps(delta(0, 6), D)[v];
      auto S = slice(D, k);
      for (int n = 0; n <= S->trunc_dim(); ++n)
        CHECK(S->size(n) == oracle::count_sequences(3, n, [&](const std::vector<int>& w) {
                for (std::size_t i = 0; i < w.size(); ++i)
                  if (w[i] > static_cast<int>(v) || (i && w[i] < w[i - 1])) return false;
                return true;
              }));
      CHECK(find_isomorphism(S, delta(v, S->trunc_dim())).has_value());
    }

    // N(C)_{/c} = N(C/c): level n counts chains x_0 -> ... -> x_n -> c.
    auto C = noninvertible3_category();
    for (int c = 0; c < C.object_count(); ++c) {
      auto k = enumerate_maps(delta(0, 6), X)[c];
      auto S = slice(X, k);
      for (int n = 0; n <= S->trunc_dim(); ++n) {
        long long chains = 0;
        std::function<void(int, int)> rec = [&](int at, int left) {
          if (left == 0) {
            chains += at == c;
            return;
          }
          for (int f = 0; f < C.morphism_count(); ++f)
            if (C.morphism(f).src == at) rec(C.morphism(f).dst, left - 1);
        };
        for (int o = 0; o < C.object_count(); ++o) rec(o, n + 1);
        CHECK(S->size(n) == chains);
      }
      CHECK(is_inner_fibrant_up_to(S, 3).verified);
    }
  }
}
