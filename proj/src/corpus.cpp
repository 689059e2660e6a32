#include "qcat/corpus.hpp"

#include <algorithm>

#include "qcat/anodyne.hpp"
#include "qcat/build.hpp"
#include "qcat/mapping.hpp"
#include "qcat/necklace.hpp"

namespace qcat {

namespace {

// Fills the composition table by a rule on (g, f) that returns a morphism index.
template <class Rule>
void compose_all(FinCat& C, Rule rule) {
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int g = 0; g < C.morphism_count(); ++g)
      if (C.morphism(g).src == C.morphism(f).dst) C.set_composite(g, f, rule(g, f));
}

}  // namespace

FinCat poset_category(int n) {
  if (n < 0) throw InvalidArgument("poset_category: negative n");
  FinCat C;
  for (int i = 0; i <= n; ++i) C.add_object(std::to_string(i));
  std::vector<std::vector<int>> arrow(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      arrow[i][j] = C.add_morphism(i == j ? "id_" + std::to_string(i) : std::to_string(i) + "->" + std::to_string(j), i, j);
  for (int i = 0; i <= n; ++i) C.set_identity(i, arrow[i][i]);
  compose_all(C, [&](int g, int f) { return arrow[C.morphism(f).src][C.morphism(g).dst]; });
  C.finalize();
  return C;
}

FinCat bz2_category() {
  FinCat C;
  C.add_object("x");
  const int e = C.add_morphism("e", 0, 0), g = C.add_morphism("g", 0, 0);
  C.set_identity(0, e);
  compose_all(C, [&](int a, int b) { return (a == g) != (b == g) ? g : e; });
  C.finalize();
  return C;
}

FinCat groupoid2_category() {
  FinCat C;
  const int p = C.add_object("p"), q = C.add_object("q");
  const int ip = C.add_morphism("id_p", p, p), iq = C.add_morphism("id_q", q, q);
  const int u = C.add_morphism("u", p, q), v = C.add_morphism("v", q, p);
  C.set_identity(p, ip);
  C.set_identity(q, iq);
  // Codiscrete: exactly one morphism between any two objects.
  const int between[2][2] = {{ip, u}, {v, iq}};
  compose_all(C, [&](int g, int f) { return between[C.morphism(f).src][C.morphism(g).dst]; });
  C.finalize();
  return C;
}

FinCat noninvertible3_category() {
  FinCat C;
  const int a = C.add_object("a"), b = C.add_object("b"), c = C.add_object("c");
  const int ia = C.add_morphism("id_a", a, a), ib = C.add_morphism("id_b", b, b), ic = C.add_morphism("id_c", c, c);
  const int f = C.add_morphism("f", a, b), g = C.add_morphism("g", b, c), h = C.add_morphism("h", a, c);
  C.add_morphism("k", a, c);
  C.set_identity(a, ia);
  C.set_identity(b, ib);
  C.set_identity(c, ic);
  compose_all(C, [&](int x, int y) {
    if (x == C.identity(C.morphism(x).src)) return y;
    if (y == C.identity(C.morphism(y).src)) return x;
    if (x == g && y == f) return h;
    throw InvalidArgument("noninvertible3_category: unexpected composable pair");
  });
  C.finalize();
  return C;
}

FinCat point_category() {
  FinCat C;
  C.add_object("*");
  C.set_identity(0, C.add_morphism("id_*", 0, 0));
  compose_all(C, [](int, int) { return 0; });
  C.finalize();
  return C;
}

std::vector<NamedCategory> corpus_categories() {
  std::vector<NamedCategory> out;
  for (int n = 0; n <= 3; ++n) out.push_back({"poset" + std::to_string(n), poset_category(n)});
  out.push_back({"bz2", bz2_category()});
  out.push_back({"groupoid2", groupoid2_category()});
  out.push_back({"noninv3", noninvertible3_category()});
  out.push_back({"point", point_category()});
  return out;
}

FinCat category_by_name(const std::string& name) {
  for (auto& c : corpus_categories())
    if (c.name == name) return std::move(c.category);
  throw InvalidArgument("unknown corpus category '" + name + "'");
}

FinCat core(const FinCat& C) {
  FinCat K;
  for (int o = 0; o < C.object_count(); ++o) K.add_object(C.object(o));
  std::vector<int> to(C.morphism_count(), -1);
  for (int f = 0; f < C.morphism_count(); ++f)
    if (C.invertible(f)) to[f] = K.add_morphism(C.morphism(f).name, C.morphism(f).src, C.morphism(f).dst);
  for (int o = 0; o < C.object_count(); ++o) K.set_identity(o, to[C.identity(o)]);
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int g = 0; g < C.morphism_count(); ++g)
      if (to[f] >= 0 && to[g] >= 0 && C.morphism(g).src == C.morphism(f).dst)
        K.set_composite(to[g], to[f], to[C.compose(g, f)]);
  K.finalize();
  return K;
}

SMap nerve_map(const FinCat& C, const FinCat& D, const SSetPtr& NC, const SSetPtr& ND,
               const std::vector<int>& on_morphisms) {
  if (static_cast<int>(on_morphisms.size()) != C.morphism_count())
    throw InvalidArgument("nerve_map: one image per morphism required");
  const int L = std::min(NC->trunc_dim(), ND->trunc_dim()) + 1;
  std::vector<std::vector<Index>> img(L);
  for (int o = 0; o < C.object_count(); ++o) img[0].push_back(D.morphism(on_morphisms[C.identity(o)]).src);
  for (int n = 1; n < L; ++n)
    for (Index x = 0; x < NC->size(n); ++x) {
      std::string id;
      const std::string& src = NC->id(n, x);
      std::size_t start = 0;
      while (true) {
        const auto bar = src.find('|', start);
        auto f = C.find_morphism(src.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
        if (!f) throw InvalidArgument("nerve_map: simplex '" + src + "' is not a chain of C");
        if (!id.empty()) id += '|';
        id += D.morphism(on_morphisms[*f]).name;
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      auto t = ND->find(id);
      if (!t) throw InvalidArgument("nerve_map: the assignment is not a functor (no chain '" + id + "')");
      img[n].push_back(t->index);
    }
  SMap F(NC, ND, std::move(img));
  if (!is_simplicial(F)) throw InvalidArgument("nerve_map: the assignment is not a functor");
  return F;
}

// ---------------------------------------------------------------------------

namespace {

const Json* opt(const Json& j, const char* name) {
  auto it = j.find(name);
  return it == j.end() ? nullptr : &*it;
}

int int_arg(const Json& j, const char* name, const std::string& where, std::optional<int> fallback = std::nullopt) {
  const Json* v = opt(j, name);
  if (!v) {
    if (fallback) return *fallback;
    throw MalformedInput(where, std::string("missing field '") + name + "'");
  }
  if (!v->is_number_integer()) throw MalformedInput(where + "." + name, "expected an integer");
  return v->get<int>();
}

const Json& sub(const Json& j, const char* name, const std::string& where) {
  const Json* v = opt(j, name);
  if (!v) throw MalformedInput(where, std::string("missing field '") + name + "'");
  return *v;
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw MalformedInput(where, "expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

SSetPtr build_op(const Json& r, const std::filesystem::path& base, const std::string& w, int D) {
  const Json& opv = sub(r, "op", w);
  if (!opv.is_string()) throw MalformedInput(w + ".op", "expected a string");
  const std::string op = opv.get<std::string>();
  if (op == "delta") return delta(int_arg(r, "n", w), D);
  if (op == "boundary") return boundary(int_arg(r, "n", w), D);
  if (op == "horn") return horn(int_arg(r, "n", w), int_arg(r, "k", w), D);
  if (op == "e_space") return e_space(strings(sub(r, "points", w), w + ".points"), D < 0 ? kDefaultTrunc : D);
  if (op == "nerve") {
    const Json& c = sub(r, "category", w);
    FinCat C = c.is_string() ? category_by_name(c.get<std::string>()) : fincat_from_json(c, w + ".category");
    return nerve(C, D < 0 ? kDefaultTrunc : D);
  }
  if (op == "product")
    return product(build_recipe(sub(r, "left", w), base, w + ".left"), build_recipe(sub(r, "right", w), base, w + ".right"))
        .object;
  if (op == "join") {
    auto J = join(build_recipe(sub(r, "left", w), base, w + ".left"), build_recipe(sub(r, "right", w), base, w + ".right"),
                  D < 0 ? std::nullopt : std::optional<int>(D));
    return J.object;
  }
  if (op == "skeleton") return skeleton(build_recipe(sub(r, "of", w), base, w + ".of"), int_arg(r, "k", w)).sub;
  if (op == "interval") {
    const int n = int_arg(r, "n", w);
    const int m = std::max(n, int_arg(r, "m", w, n));
    const Json& kind = sub(r, "kind", w);
    if (!kind.is_string()) throw MalformedInput(w + ".kind", "expected a string");
    return cosimplicial_interval(interval_kind_from_string(kind.get<std::string>()), m, D).at[n];
  }
  if (op == "squash") return squashed_simplex(int_arg(r, "n", w), int_arg(r, "k", w));
  if (op == "necklace") {
    const Json& beads = sub(r, "beads", w);
    if (!beads.is_array()) throw MalformedInput(w + ".beads", "expected an array of bead dimensions");
    Necklace T;
    for (const auto& b : beads) {
      if (!b.is_number_integer() || b.get<int>() < 1) throw MalformedInput(w + ".beads", "bead dimensions must be positive");
      T.beads.push_back(b.get<int>());
    }
    return T.realize(D).sub;
  }
  if (op == "quotient") {
    auto X = build_recipe(sub(r, "of", w), base, w + ".of");
    std::vector<Simplex> gens;
    for (const auto& id : strings(sub(r, "collapse", w), w + ".collapse")) {
      auto s = X->find(id);
      if (!s) throw MalformedInput(w + ".collapse", "unknown simplex '" + id + "'");
      gens.push_back(*s);
    }
    const Json* label = opt(r, "label");
    return quotient(X, Subcomplex::generated(*X, gens), label && label->is_string() ? label->get<std::string>() : "*")
        .object;
  }
  if (op == "file") {
    const Json& p = sub(r, "path", w);
    if (!p.is_string()) throw MalformedInput(w + ".path", "expected a string");
    return resolve_sset(p, base, w + ".path");
  }
  throw MalformedInput(w + ".op", "unknown operation '" + op + "'");
}

}  // namespace

SSetPtr build_recipe(const Json& recipe, const std::filesystem::path& base_dir, const std::string& where) {
  if (!recipe.is_object()) throw MalformedInput(where, "expected a recipe object");
  const int D = int_arg(recipe, "trunc", where, -1);
  SSetPtr X;
  try {
    X = build_op(recipe, base_dir, where, D);
  } catch (const InvalidArgument& e) {
    throw MalformedInput(where, e.what());
  }
  if (D >= 0 && X->trunc_dim() != D) X = retruncate(X, D);
  return X;
}

// ---------------------------------------------------------------------------

std::vector<CorpusFile> corpus_files() {
  std::vector<std::pair<std::string, Json>> recipes;
  for (int n = 0; n <= 4; ++n) recipes.push_back({"delta" + std::to_string(n), {{"op", "delta"}, {"n", n}}});
  for (int n = 1; n <= 4; ++n) recipes.push_back({"boundary" + std::to_string(n), {{"op", "boundary"}, {"n", n}}});
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
      recipes.push_back({"horn" + std::to_string(n) + "-" + std::to_string(k), {{"op", "horn"}, {"n", n}, {"k", k}}});
  recipes.push_back({"e1", {{"op", "e_space"}, {"points", {"0", "1"}}, {"trunc", 8}}});
  recipes.push_back({"e2", {{"op", "e_space"}, {"points", {"0", "1", "2"}}, {"trunc", 5}}});
  recipes.push_back({"e3", {{"op", "e_space"}, {"points", {"0", "1", "2", "3"}}, {"trunc", 4}}});
  for (int n = 0; n <= 3; ++n)
    recipes.push_back({"nerve-poset" + std::to_string(n), {{"op", "nerve"}, {"category", "poset" + std::to_string(n)}}});
  recipes.push_back({"nerve-z2", {{"op", "nerve"}, {"category", "bz2"}}});
  recipes.push_back({"nerve-groupoid2", {{"op", "nerve"}, {"category", "groupoid2"}}});
  recipes.push_back({"nerve-noninv3", {{"op", "nerve"}, {"category", "noninv3"}}});
  recipes.push_back({"nerve-point", {{"op", "nerve"}, {"category", "point"}}});
  for (int n = 1; n <= 3; ++n)
    recipes.push_back({"delta" + std::to_string(n) + "-x-delta1",
                       {{"op", "product"},
                        {"left", {{"op", "delta"}, {"n", n}, {"trunc", 6}}},
                        {"right", {{"op", "delta"}, {"n", 1}, {"trunc", 6}}}}});
  for (const char* kind : {"R", "L", "cyl", "E"})
    for (int n = 0; n <= 2; ++n)
      recipes.push_back({std::string("interval-") + kind + std::to_string(n),
                         {{"op", "interval"}, {"kind", kind}, {"n", n}, {"m", 2}}});
  recipes.push_back({"circle", {{"op", "quotient"}, {"of", {{"op", "delta"}, {"n", 1}}}, {"collapse", {"0", "1"}}}});
  recipes.push_back({"necklace-2-1", {{"op", "necklace"}, {"beads", {2, 1}}}});
  recipes.push_back({"squash-3-1", {{"op", "squash"}, {"n", 3}, {"k", 1}}});

  std::vector<CorpusFile> out;
  Json index = Json::array();
  for (const auto& [name, r] : recipes) {
    auto X = build_recipe(r, ".", name);
    out.push_back({name + ".json", r, to_json(*X)});
    index.push_back({{"name", name}, {"file", name + ".json"}, {"recipe", r}});
  }
  out.push_back({"recipes.json", Json(), index});

  // Functor maps between nerves, referencing the files above.
  auto functor_file = [&](const std::string& file, const std::string& from, const std::string& to,
                          const std::vector<int>& on_morphisms) {
    FinCat C = category_by_name(from), D = category_by_name(to);
    auto NC = nerve(C), ND = nerve(D);
    auto F = nerve_map(C, D, NC, ND, on_morphisms);
    out.push_back({file, Json(), to_json(F, "nerve-" + from + ".json", "nerve-" + to + ".json")});
  };
  functor_file("map-poset1-to-point.json", "poset1", "point", {0, 0, 0});
  functor_file("map-groupoid2-to-point.json", "groupoid2", "point", {0, 0, 0, 0});
  return out;
}

}  // namespace qcat
