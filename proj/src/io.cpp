#include "qcat/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace qcat {

namespace {

std::string key(int n, int i) { return std::to_string(n) + "," + std::to_string(i); }

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw MalformedInput(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw MalformedInput(where, std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_number_integer()) throw MalformedInput(where + "." + name, "expected an integer");
  return v.get<int>();
}

bool bool_field(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_boolean()) throw MalformedInput(where + "." + name, "expected a boolean");
  return v.get<bool>();
}

std::string str(const Json& v, const std::string& where) {
  if (!v.is_string()) throw MalformedInput(where, "expected a string");
  return v.get<std::string>();
}

Simplex lookup(const SSet& X, const std::string& id, int dim, const std::string& where) {
  auto s = X.find(id);
  if (!s) throw MalformedInput(where, "unknown simplex '" + id + "'");
  if (dim >= 0 && s->dim != dim)
    throw MalformedInput(where, "simplex '" + id + "' has dimension " + std::to_string(s->dim) + ", expected " +
                                    std::to_string(dim));
  return *s;
}

Json ids_of(const SSet& X, const Subcomplex& A) {
  Json out = Json::array();
  for (int n = 0; n <= X.trunc_dim(); ++n)
    for (Index x : X.nondegenerate_simplices(n))
      if (A.contains(n, x)) out.push_back(X.id(n, x));
  return out;
}

Subcomplex subcomplex_from_ids(const SSet& X, const Json& ids, const std::string& where) {
  if (!ids.is_array()) throw MalformedInput(where, "expected an array of identifiers");
  std::vector<Simplex> gens;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    gens.push_back(lookup(X, str(ids[i], w), -1, w));
  }
  return Subcomplex::generated(X, gens);
}

}  // namespace

Json to_json(const SSet& X) {
  Json j;
  j["trunc_dim"] = X.trunc_dim();
  Json levels = Json::array();
  for (int n = 0; n <= X.trunc_dim(); ++n) {
    Json lv = Json::array();
    for (Index x = 0; x < X.size(n); ++x) lv.push_back(X.id(n, x));
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  Json face = Json::object(), degen = Json::object();
  for (int n = 0; n <= X.trunc_dim(); ++n)
    for (int i = 0; i <= n; ++i) {
      if (n > 0) {
        Json t = Json::object();
        for (Index x = 0; x < X.size(n); ++x) t[X.id(n, x)] = X.id(n - 1, X.face(n, i, x));
        face[key(n, i)] = std::move(t);
      }
      if (n < X.trunc_dim()) {
        Json t = Json::object();
        for (Index x = 0; x < X.size(n); ++x) t[X.id(n, x)] = X.id(n + 1, X.degen(n, i, x));
        degen[key(n, i)] = std::move(t);
      }
    }
  j["face"] = std::move(face);
  j["degen"] = std::move(degen);
  j["stable"] = X.stable();
  if (auto k = X.coskeletal_hint()) j["coskeletal"] = *k;
  return j;
}

SSetPtr sset_from_json(const Json& j, const std::string& where) {
  const int D = int_field(j, "trunc_dim", where);
  if (D < 0) throw MalformedInput(where + ".trunc_dim", "must be non-negative");
  const auto& levels = field(j, "levels", where);
  if (!levels.is_array() || static_cast<int>(levels.size()) != D + 1)
    throw MalformedInput(where + ".levels", "expected trunc_dim + 1 levels");
  SSetBuilder b(D);
  std::vector<std::unordered_map<std::string, Index>> index(D + 1);
  for (int n = 0; n <= D; ++n) {
    const std::string w = where + ".levels[" + std::to_string(n) + "]";
    if (!levels[n].is_array()) throw MalformedInput(w, "expected an array");
    for (std::size_t x = 0; x < levels[n].size(); ++x) {
      auto id = str(levels[n][x], w + "[" + std::to_string(x) + "]");
      if (!index[n].emplace(id, static_cast<Index>(x)).second) throw MalformedInput(w, "duplicate identifier '" + id + "'");
      b.add(n, id);
    }
  }
  auto table = [&](const char* name, int n, int i, int to) {
    const std::string w = where + "." + name + "[\"" + key(n, i) + "\"]";
    const auto& all = field(j, name, where);
    auto it = all.find(key(n, i));
    if (it == all.end() || !it->is_object()) throw MalformedInput(w, "missing table");
    if (it->size() != index[n].size()) throw MalformedInput(w, "table is not total");
    std::vector<Index> out(index[n].size(), -1);
    for (auto e = it->begin(); e != it->end(); ++e) {
      auto s = index[n].find(e.key());
      if (s == index[n].end()) throw MalformedInput(w, "unknown simplex '" + e.key() + "'");
      auto t = index[to].find(str(e.value(), w + "." + e.key()));
      if (t == index[to].end()) throw MalformedInput(w, "unknown image '" + e.value().get<std::string>() + "'");
      out[s->second] = t->second;
    }
    return out;
  };
  for (int n = 0; n <= D; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n > 0) {
        auto t = table("face", n, i, n - 1);
        for (Index x = 0; x < static_cast<Index>(t.size()); ++x) b.set_face(n, i, x, t[x]);
      }
      if (n < D) {
        auto t = table("degen", n, i, n + 1);
        for (Index x = 0; x < static_cast<Index>(t.size()); ++x) b.set_degen(n, i, x, t[x]);
      }
    }
  std::optional<int> cosk;
  if (j.contains("coskeletal")) cosk = int_field(j, "coskeletal", where);
  SSetPtr X;
  try {
    X = b.finish(bool_field(j, "stable", where), cosk);
  } catch (const InvalidArgument& e) {
    throw MalformedInput(where, e.what());
  }
  auto problems = audit(*X);
  if (!problems.empty()) throw MalformedInput(where, problems.front());
  return X;
}

Json to_json(const SMap& f, const Json& source_ref, const Json& target_ref) {
  Json j;
  j["source"] = source_ref;
  j["target"] = target_ref;
  Json a = Json::array();
  for (int n = 0; n < f.levels(); ++n) {
    Json lv = Json::object();
    for (Index x = 0; x < f.source()->size(n); ++x) lv[f.source()->id(n, x)] = f.target()->id(n, f(n, x));
    a.push_back(std::move(lv));
  }
  j["assignment"] = std::move(a);
  return j;
}

SSetPtr resolve_sset(const Json& ref, const std::filesystem::path& base_dir, const std::string& where) {
  if (ref.is_object()) return sset_from_json(ref, where);
  if (!ref.is_string()) throw MalformedInput(where, "expected a file reference or an inline simplicial set");
  auto p = std::filesystem::path(ref.get<std::string>());
  if (p.is_relative()) p = base_dir / p;
  return read_sset(p);
}

SMap smap_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  auto S = resolve_sset(field(j, "source", where), base_dir, where + ".source");
  auto T = resolve_sset(field(j, "target", where), base_dir, where + ".target");
  const auto& a = field(j, "assignment", where);
  if (!a.is_array()) throw MalformedInput(where + ".assignment", "expected an array of levels");
  const int L = static_cast<int>(a.size());
  if (L != std::min(S->trunc_dim(), T->trunc_dim()) + 1)
    throw MalformedInput(where + ".assignment", "expected one level per common truncation level");
  std::vector<std::vector<Index>> img(L);
  for (int n = 0; n < L; ++n) {
    const std::string w = where + ".assignment[" + std::to_string(n) + "]";
    if (!a[n].is_object() || static_cast<Index>(a[n].size()) != S->size(n)) throw MalformedInput(w, "level is not total");
    img[n].assign(S->size(n), -1);
    for (auto e = a[n].begin(); e != a[n].end(); ++e) {
      auto s = lookup(*S, e.key(), n, w);
      img[n][s.index] = lookup(*T, str(e.value(), w + "." + e.key()), n, w).index;
    }
  }
  SMap f(S, T, std::move(img));
  if (!is_simplicial(f)) throw MalformedInput(where, "assignment is not simplicial");
  return f;
}

Json to_json(const FinCat& C) {
  Json j;
  Json objs = Json::array();
  for (int o = 0; o < C.object_count(); ++o) objs.push_back(C.object(o));
  j["objects"] = std::move(objs);
  Json mors = Json::array();
  for (int f = 0; f < C.morphism_count(); ++f)
    mors.push_back({{"name", C.morphism(f).name}, {"src", C.object(C.morphism(f).src)}, {"dst", C.object(C.morphism(f).dst)}});
  j["morphisms"] = std::move(mors);
  Json ids = Json::object();
  for (int o = 0; o < C.object_count(); ++o) ids[C.object(o)] = C.morphism(C.identity(o)).name;
  j["identities"] = std::move(ids);
  Json comp = Json::array();
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int g : C.out(C.morphism(f).dst))
      comp.push_back({C.morphism(g).name, C.morphism(f).name, C.morphism(C.compose(g, f)).name});
  j["compose"] = std::move(comp);
  return j;
}

FinCat fincat_from_json(const Json& j, const std::string& where) {
  FinCat C;
  const auto& objs = field(j, "objects", where);
  if (!objs.is_array()) throw MalformedInput(where + ".objects", "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) C.add_object(str(objs[i], where + ".objects[" + std::to_string(i) + "]"));
  auto obj = [&](const Json& v, const std::string& w) {
    auto o = C.find_object(str(v, w));
    if (!o) throw MalformedInput(w, "unknown object");
    return *o;
  };
  std::unordered_map<std::string, int> mor;
  const auto& mors = field(j, "morphisms", where);
  if (!mors.is_array()) throw MalformedInput(where + ".morphisms", "expected an array");
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string w = where + ".morphisms[" + std::to_string(i) + "]";
    auto name = str(field(mors[i], "name", w), w + ".name");
    const int f = C.add_morphism(name, obj(field(mors[i], "src", w), w + ".src"), obj(field(mors[i], "dst", w), w + ".dst"));
    if (!mor.emplace(name, f).second) throw MalformedInput(w, "duplicate morphism '" + name + "'");
  }
  auto m = [&](const Json& v, const std::string& w) {
    auto it = mor.find(str(v, w));
    if (it == mor.end()) throw MalformedInput(w, "unknown morphism");
    return it->second;
  };
  const auto& ids = field(j, "identities", where);
  if (!ids.is_object()) throw MalformedInput(where + ".identities", "expected an object");
  for (auto e = ids.begin(); e != ids.end(); ++e) {
    const std::string w = where + ".identities." + e.key();
    C.set_identity(obj(Json(e.key()), w), m(e.value(), w));
  }
  const auto& comp = field(j, "compose", where);
  if (!comp.is_array()) throw MalformedInput(where + ".compose", "expected an array");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string w = where + ".compose[" + std::to_string(i) + "]";
    if (!comp[i].is_array() || comp[i].size() != 3) throw MalformedInput(w, "expected a triple [g, f, g.f]");
    try {
      C.set_composite(m(comp[i][0], w), m(comp[i][1], w), m(comp[i][2], w));
    } catch (const InvalidArgument& e) {
      throw MalformedInput(w, e.what());
    }
  }
  try {
    C.finalize();
  } catch (const InvalidArgument& e) {
    throw MalformedInput(where, e.what());
  }
  return C;
}

Json to_json(const AnodyneCertificate& c, const Json& ambient_ref) {
  Json j;
  j["ambient"] = ambient_ref;
  j["start"] = ids_of(*c.ambient, c.start);
  j["end"] = ids_of(*c.ambient, c.end);
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back({{"simplex", s.simplex}, {"k", s.k}, {"class", to_string(s.cls)}});
  j["steps"] = std::move(steps);
  j["partial"] = c.partial;
  j["verified_dim"] = c.verified_dim;
  return j;
}

AnodyneCertificate certificate_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  AnodyneCertificate c;
  c.ambient = resolve_sset(field(j, "ambient", where), base_dir, where + ".ambient");
  c.start = subcomplex_from_ids(*c.ambient, field(j, "start", where), where + ".start");
  c.end = subcomplex_from_ids(*c.ambient, field(j, "end", where), where + ".end");
  const auto& steps = field(j, "steps", where);
  if (!steps.is_array()) throw MalformedInput(where + ".steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string w = where + ".steps[" + std::to_string(i) + "]";
    CertStep s;
    s.simplex = str(field(steps[i], "simplex", w), w + ".simplex");
    s.k = int_field(steps[i], "k", w);
    try {
      s.cls = horn_class_from_string(str(field(steps[i], "class", w), w + ".class"));
    } catch (const InvalidArgument& e) {
      throw MalformedInput(w + ".class", e.what());
    }
    c.steps.push_back(s);
  }
  c.partial = bool_field(j, "partial", where);
  c.verified_dim = int_field(j, "verified_dim", where);
  return c;
}

Json to_json(const HomologyReport& h) {
  Json out = Json::array();
  for (std::size_t d = 0; d < h.groups.size(); ++d) {
    Json t = Json::array();
    for (const auto& x : h.groups[d].torsion) t.push_back(x.str());
    out.push_back({{"degree", d}, {"betti", h.groups[d].betti}, {"torsion", t}, {"trusted", static_cast<int>(d) <= h.trusted}});
  }
  return out;
}

std::string emit(const Json& j) { return j.dump(1) + "\n"; }

Json parse_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(where, std::string("invalid JSON (") + e.what() + ")");
  }
}

Json read_json_file(const std::filesystem::path& p) {
  std::stringstream ss;
  if (p == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(p);
    if (!in) throw MalformedInput(p.string(), "cannot open file");
    ss << in.rdbuf();
  }
  return parse_text(ss.str(), p.string());
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw InvalidArgument("cannot write '" + p.string() + "'");
  out << text;
}

SSetPtr read_sset(const std::filesystem::path& p) { return sset_from_json(read_json_file(p), p.string()); }

}  // namespace qcat
