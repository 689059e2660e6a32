#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qcat/anodyne.hpp"
#include "qcat/build.hpp"
#include "qcat/corpus.hpp"
#include "qcat/enumerate.hpp"
#include "qcat/homology.hpp"
#include "qcat/io.hpp"

using namespace qcat;

namespace {

const std::filesystem::path kCorpus = QCAT_CORPUS_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The message of the MalformedInput thrown by fn, or "" if none.
template <class F>
std::string malformed(F&& fn) {
  try {
    fn();
  } catch (const MalformedInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("simplicial sets round-trip bit-exactly") {
    for (const SSetPtr& X : {delta(2), boundary(3), e_space({"0", "1"}, 4), nerve(bz2_category(), 4),
                             product(delta(1), delta(1)).object, coskeleton(boundary(2, 4), 1)}) {
      const std::string text = emit(qcat::to_json(*X));
      auto Y = sset_from_json(parse_text(text, "t"), "t");
      CHECK(emit(qcat::to_json(*Y)) == text);
      CHECK(Y->stable() == X->stable());
      CHECK(Y->coskeletal_hint() == X->coskeletal_hint());
      CHECK(find_isomorphism(X, Y).has_value());
    }
    for (const char* f : {"delta2.json", "nerve-z2.json", "circle.json", "interval-cyl1.json"}) {
      const std::string text = slurp(kCorpus / f);
      CHECK_MESSAGE(emit(qcat::to_json(*sset_from_json(parse_text(text, f), f))) == text, f);
    }
  }

  TEST_CASE("maps round-trip") {
    const std::string text = slurp(kCorpus / "map-groupoid2-to-point.json");
    auto f = smap_from_json(parse_text(text, "m"), kCorpus);
    CHECK(is_simplicial(f));
    CHECK(emit(qcat::to_json(f, "nerve-groupoid2.json", "nerve-point.json")) == text);
    auto g = enumerate_maps(delta(1, 3), delta(2, 3))[2];
    auto j = qcat::to_json(g, qcat::to_json(*g.source()), qcat::to_json(*g.target()));
    CHECK(smap_from_json(parse_text(emit(j), "m"), ".") == g);
  }

  TEST_CASE("categories round-trip") {
    for (const auto& [name, C] : corpus_categories()) {
      const std::string text = emit(qcat::to_json(C));
      auto D = fincat_from_json(parse_text(text, name), name);
      CHECK_MESSAGE(emit(qcat::to_json(D)) == text, name);
      CHECK(D.morphism_count() == C.morphism_count());
    }
  }

  TEST_CASE("certificates round-trip") {
    for (const auto& c : {gen_box_inner(2, 1, 1), gen_spine_simplex(2), gen_box_special(1, 3), gen_squash(3, 1)}) {
      const std::string text = emit(qcat::to_json(c, qcat::to_json(*c.ambient)));
      auto d = certificate_from_json(parse_text(text, "c"), ".");
      CHECK(emit(qcat::to_json(d, qcat::to_json(*d.ambient))) == text);
      CHECK(d.steps == c.steps);
      CHECK(d.partial == c.partial);
      CHECK(verify(d).valid);
    }
  }

  TEST_CASE("malformed input names its location") {
    auto X = qcat::to_json(*delta(1, 2));
    auto broken = X;
    broken["face"]["1,0"].erase("01");
    CHECK(malformed([&] { sset_from_json(broken, "$"); }).starts_with("$.face[\"1,0\"]"));

    broken = X;
    broken["levels"][0].push_back("0");
    CHECK(malformed([&] { sset_from_json(broken, "$"); }).find("duplicate identifier") != std::string::npos);

    broken = X;
    broken["face"]["1,0"]["01"] = "0";  // d_0 of 01 must be 1
    CHECK_FALSE(malformed([&] { sset_from_json(broken, "$"); }).empty());

    CHECK(malformed([&] { sset_from_json(Json{{"trunc_dim", 0}}, "$"); }) == "$: missing field 'levels'");
    CHECK(malformed([&] { parse_text("{not json", "in.json"); }).starts_with("in.json"));

    auto C = qcat::to_json(bz2_category());
    C["compose"].erase(C["compose"].begin());
    CHECK_FALSE(malformed([&] { fincat_from_json(C, "cat"); }).empty());

    auto cert = qcat::to_json(gen_spine_simplex(1), qcat::to_json(*delta(2)));
    cert["steps"][0]["simplex"] = "0123";
    // Unknown step targets parse; replay reports them.
    auto v = verify(certificate_from_json(cert, "."));
    CHECK(v.step == 0);
    CHECK(v.reason.starts_with("malformed"));
    cert["steps"][0]["k"] = "one";
    CHECK(malformed([&] { certificate_from_json(cert, "."); }).starts_with("$.steps[0]"));
  }

  TEST_CASE("recipes") {
    auto r = build_recipe(Json{{"op", "horn"}, {"n", 3}, {"k", 1}}, ".");
    CHECK(find_isomorphism(r, horn(3, 1)).has_value());
    auto p = build_recipe(Json{{"op", "product"}, {"left", {{"op", "delta"}, {"n", 1}}}, {"right", {{"op", "delta"}, {"n", 1}}}},
                          ".");
    CHECK(p->nondegenerate_count(2) == 2);
    auto n = build_recipe(Json{{"op", "nerve"}, {"category", "bz2"}, {"trunc", 4}}, ".");
    CHECK(n->trunc_dim() == 4);
    auto f = build_recipe(Json{{"op", "file"}, {"path", "circle.json"}}, kCorpus);
    CHECK(f->size(0) == 1);
    CHECK(malformed([&] { build_recipe(Json{{"op", "tesseract"}}, "."); }).starts_with("$"));
    CHECK_FALSE(malformed([&] { build_recipe(Json{{"op", "horn"}, {"n", 2}, {"k", 5}}, "."); }).empty());

    // The shipped index replays to the shipped files.
    for (const auto& e : parse_text(slurp(kCorpus / "recipes.json"), "recipes.json")) {
      auto X = build_recipe(e["recipe"], kCorpus);
      CHECK_MESSAGE(emit(qcat::to_json(*X)) == slurp(kCorpus / e["file"].get<std::string>()), e["name"]);
    }
  }

  TEST_CASE("corpus matches the independent golden values") {
    auto expected = parse_text(slurp(kCorpus / "expected.json"), "expected.json");
    REQUIRE(expected.contains("origin"));
    int seen = 0;
    for (const auto& [file, want] : expected["files"].items()) {
      auto X = read_sset(kCorpus / file);
      std::vector<long long> nd;
      for (int n = 0; n <= X->trunc_dim(); ++n) nd.push_back(static_cast<long long>(X->nondegenerate_count(n)));
      CHECK_MESSAGE(nd == want["nondegenerate"].get<std::vector<long long>>(), file);
      const int m = want["degrees"].get<int>();
      auto h = homology(*X, m);
      const auto betti = want["betti"].get<std::vector<long long>>();
      const auto mod2 = want["betti_mod2"].get<std::vector<long long>>();
      auto even = [&](int d) {
        long long c = 0;
        if (d >= 0)
          for (const auto& t : h.groups[d].torsion) c += t % 2 == 0;
        return c;
      };
      for (int d = 0; d <= m; ++d) {
        CHECK_MESSAGE(h.groups[d].betti == betti[d], file);
        // Universal coefficients: dim H_d(X; F_2) = b_d + t_d + t_{d-1}, t counting even torsion.
        CHECK_MESSAGE(h.groups[d].betti + even(d) + even(d - 1) == mod2[d], file);
      }
      ++seen;
    }
    CHECK(seen >= 40);
  }
}
