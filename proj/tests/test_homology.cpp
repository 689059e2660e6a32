#include <doctest.h>

#include "oracles.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/mapping.hpp"
#include "qcat/homology.hpp"

using namespace qcat;

namespace {

HomologyGroup Z(long long b = 1) { return {b, {}}; }
HomologyGroup torsion(long long t) { return {0, {BigInt(t)}}; }

// B(Z/p): one object, morphisms r^0 .. r^{p-1}.
FinCat cyclic_group(int p) {
  FinCat C;
  C.add_object("x");
  for (int i = 0; i < p; ++i) C.add_morphism("r" + std::to_string(i), 0, 0);
  C.set_identity(0, 0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) C.set_composite(i, j, (i + j) % p);
  C.finalize();
  return C;
}

SparseMatrix dense(const std::vector<std::vector<long long>>& rows) {
  SparseMatrix M;
  M.rows = static_cast<int>(rows.size());
  M.cols = static_cast<int>(rows[0].size());
  M.columns.resize(M.cols);
  for (int c = 0; c < M.cols; ++c)
    for (int r = 0; r < M.rows; ++r)
      if (rows[r][c]) M.columns[c].push_back({r, rows[r][c]});
  return M;
}

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("chain complexes") {
    for (int n = 1; n <= 4; ++n) {
      auto C = chains(*delta(n), n);
      for (int d = 0; d <= n; ++d)
        CHECK(static_cast<long long>(C.basis[d].size()) == oracle::binom(n + 1, d + 1));
      CHECK(boundary_squares_zero(C));
    }
    auto P = product(delta(2), delta(1)).object;
    CHECK(boundary_squares_zero(chains(*P, 3)));
    auto B3 = chains(*boundary(3), 2);
    CHECK(B3.basis[2].size() == 4);
    CHECK(B3.boundary[2].cols == 4);
  }

  TEST_CASE("integral homology examples") {
    CHECK(homology(*boundary(3), 2).groups == std::vector<HomologyGroup>{Z(), Z(0), Z()});
    CHECK(homology(*boundary(2), 2).groups == std::vector<HomologyGroup>{Z(), Z(), Z(0)});
    for (int n = 0; n <= 3; ++n) CHECK(homology(*delta(n), 3).groups == std::vector<HomologyGroup>{Z(), Z(0), Z(0), Z(0)});
    auto d1 = delta(1);
    auto circle = quotient(d1, Subcomplex::generated(*d1, std::vector<Simplex>{d1->at("0"), d1->at("1")})).object;
    CHECK(homology(*circle, 1).groups == std::vector<HomologyGroup>{Z(), Z()});
    CHECK(homology(*boundary(1), 1).groups == std::vector<HomologyGroup>{Z(2), Z(0)});
    CHECK(to_string(torsion(2)) == "Z/2");
    CHECK(to_string(Z(0)) == "0");
  }

  TEST_CASE("torsion in classifying spaces") {
    // H_k(BZ/p) is Z/p in odd degrees, zero in positive even degrees.
    for (int p : {2, 3}) {
      auto N = nerve(cyclic_group(p), 6);
      auto h = homology(*N, 4);
      CHECK(h.trusted == 4);
      CHECK(h.groups == std::vector<HomologyGroup>{Z(), torsion(p), Z(0), torsion(p), Z(0)});
      // Rationally trivial, yet visible mod p.
      CHECK(oracle::betti_mod_p(*N, 4) == std::vector<long long>{1, 0, 0, 0, 0});
      CHECK(oracle::betti_mod_p(*N, 4, p) == std::vector<long long>{1, 1, 1, 1, 1});
    }
  }

  TEST_CASE("invariant factors") {
    CHECK(invariant_factors(dense({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
    CHECK(invariant_factors(dense({{2, 4}, {6, 8}})) == std::vector<BigInt>{2, 4});
    CHECK(invariant_factors(dense({{0, 0}, {0, 0}})).empty());
    CHECK(invariant_factors(dense({{1, 1, 1}})) == std::vector<BigInt>{1});
  }

  TEST_CASE("truncation is tagged") {
    auto e = e_space({"0", "1"}, 4);
    auto h = homology(*e, 5);
    CHECK(h.trusted == 3);
    CHECK(chains(*e, 5).trusted == 3);
    CHECK(homology(*delta(2), 5).trusted == 5);
  }

  TEST_CASE("homology agrees with a mod p rank oracle") {
    for (const auto& f : corpus_files()) {
      if (!f.content.contains("levels")) continue;
      auto X = sset_from_json(f.content, f.path);
      const int m = std::min(3, X->trunc_dim() - 1);
      auto h = homology(*X, m);
      auto b = oracle::betti_mod_p(*X, m);
      for (int d = 0; d <= std::min(m, h.trusted); ++d) CHECK_MESSAGE(h.groups[d].betti == b[d], f.path);
      CHECK(h.groups[0].betti == pi0(*X).count);
      CHECK(pi0(*X).count == oracle::components(*X));
    }
  }

  TEST_CASE("homology is invariant under isomorphism") {
    auto J = join(delta(2, 6), delta(1, 6), 6).object;
    CHECK(homology(*J, 4).groups == homology(*delta(4, 6), 4).groups);
  }

  TEST_CASE("path components") {
    CHECK(pi0(*boundary(1)).count == 2);
    CHECK(pi0(*e_space({"0", "1"}, 3)).count == 1);
    for (const auto& [name, C] : corpus_categories()) CHECK(pi0(*nerve(C, 3)).count == oracle::components(*nerve(C, 3)));
    auto two = boundary(1);
    auto c = pi0(*two);
    auto piece = component(two, c, c.of_vertex[1]);
    CHECK(piece.sub->size(0) == 1);
    CHECK(componentwise_acyclic(two, 2).empty());
    CHECK_FALSE(componentwise_acyclic(boundary(2), 2).empty());
  }

  TEST_CASE("homology isomorphisms") {
    auto d2 = delta(2);
    auto pt = delta(0);
    auto crush = enumerate_maps(d2, pt).front();
    CHECK(homology_iso(crush, 3).iso);
    auto b2 = boundary(2);
    auto crush_circle = enumerate_maps(b2, delta(0)).front();
    auto ev = homology_iso(crush_circle, 2);
    CHECK_FALSE(ev.iso);
    CHECK(ev.pi0_bijective);
    CHECK_FALSE(ev.witness.empty());
    auto into = inclusion_by_ids(b2, d2);
    CHECK_FALSE(homology_iso(into, 2).iso);
    auto b1 = boundary(1);
    CHECK_FALSE(homology_iso(enumerate_maps(b1, pt).front(), 1).pi0_bijective);
  }
}
