// qc: command-line front end for the qcat library.
//
// Exit status: 0 success / verified / consistent, 1 refuted or invalid,
// 2 unsupported, 3 malformed input.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "qcat/anodyne.hpp"
#include "qcat/build.hpp"
#include "qcat/category.hpp"
#include "qcat/corpus.hpp"
#include "qcat/equivalence.hpp"
#include "qcat/homology.hpp"
#include "qcat/horn.hpp"
#include "qcat/io.hpp"
#include "qcat/mapping.hpp"
#include "qcat/necklace.hpp"

using namespace qcat;
namespace fs = std::filesystem;

namespace {

struct Globals {
  int trunc = -1;
  int max_dim = 4;
  std::string out;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

Globals G;

enum Exit { ok = 0, refuted = 1, unsupported = 2, malformed = 3 };

fs::path base_of(const std::string& path) {
  if (path == "-") return fs::current_path();
  auto p = fs::path(path).parent_path();
  return p.empty() ? fs::path(".") : p;
}

// Reads an SSet file; a file holding a recipe object is built on the fly.
SSetPtr load_sset(const std::string& path) {
  auto j = read_json_file(path);
  auto X = j.contains("op") ? build_recipe(j, base_of(path), path) : sset_from_json(j, path);
  if (G.trunc >= 0 && G.trunc != X->trunc_dim()) X = retruncate(X, G.trunc);
  return X;
}

Index vertex(const SSetPtr& X, const std::string& id, const char* flag) {
  auto s = X->find(id);
  if (!s || s->dim != 0) throw InvalidArgument(std::string(flag) + ": '" + id + "' is not a vertex");
  return s->index;
}

// Writes the artifact to --out when given; the summary goes to stdout.
void artifact(const Json& j) {
  if (!G.out.empty()) write_text_file(G.out, emit(j));
}

void print(const Json& summary, const std::string& text) {
  if (G.json())
    std::cout << emit(summary);
  else
    std::cout << text;
}

std::string sizes_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::size_t> level_sizes(const SSet& X) {
  std::vector<std::size_t> v;
  for (int n = 0; n <= X.trunc_dim(); ++n) v.push_back(static_cast<std::size_t>(X.size(n)));
  return v;
}

Json space_summary(const SSetPtr& X, int m, std::string& text) {
  auto sizes = level_sizes(*X);
  auto c = pi0(*X);
  auto h = homology(*X, std::max(0, std::min(m, X->trunc_dim())));
  std::vector<long long> betti;
  for (const auto& g : h.groups) betti.push_back(g.betti);
  std::ostringstream os;
  os << "level sizes: " << sizes_text(sizes) << "\npi0: " << c.count << "\nhomology:";
  for (std::size_t k = 0; k < h.groups.size(); ++k)
    os << " H_" << k << " = " << to_string(h.groups[k]) << (static_cast<int>(k) > h.trusted ? " (untrusted)" : "") << ";";
  os << "\n";
  text = os.str();
  return {{"level_sizes", sizes}, {"pi0", c.count}, {"betti", betti}, {"homology", qcat::to_json(h)}};
}

std::string horn_text(const SSetPtr& X, const HornInstance& h) {
  std::string s = "horn Lambda^" + std::to_string(h.n) + "_" + std::to_string(h.k) + " with faces [";
  auto faces = horn_face_images(h);
  for (int i = 0; i <= h.n; ++i) s += (i ? ", " : "") + (i == h.k ? std::string("-") : X->id(h.n - 1, faces[i]));
  return s + "]";
}

// ---------------------------------------------------------------------------

int cmd_build(const std::string& recipe, const std::string& corpus_dir) {
  if (!corpus_dir.empty()) {
    fs::create_directories(corpus_dir);
    for (const auto& f : corpus_files()) write_text_file(fs::path(corpus_dir) / f.path, emit(f.content));
    std::cout << "corpus written to " << corpus_dir << "\n";
    return ok;
  }
  if (recipe.empty()) throw InvalidArgument("build: a recipe file or --corpus is required");
  Json r;
  if (!recipe.empty() && recipe.front() == '{')
    r = parse_text(recipe, "recipe");
  else
    r = read_json_file(recipe);
  auto X = build_recipe(r, recipe.front() == '{' ? fs::current_path() : base_of(recipe), "recipe");
  if (G.trunc >= 0 && G.trunc != X->trunc_dim()) X = retruncate(X, G.trunc);
  const auto text = emit(qcat::to_json(*X));
  if (G.out.empty())
    std::cout << text;
  else
    write_text_file(G.out, text);
  return ok;
}

int cmd_check_fibrant(const std::string& file, int dim, bool kan) {
  auto X = load_sset(file);
  auto v = kan ? is_kan_up_to(X, dim) : is_inner_fibrant_up_to(X, dim);
  Json j = {{"verified", v.verified}, {"bound", v.bound}, {"kind", kan ? "kan" : "inner"}};
  std::string text;
  if (v.verified) {
    text = std::string(kan ? "all" : "inner") + " horns fill up to dimension " + std::to_string(v.bound) + "\n";
  } else {
    const auto& h = *v.failure;
    j["failure"] = {{"n", h.n}, {"k", h.k}};
    auto faces = horn_face_images(h);
    Json fj = Json::array();
    for (int i = 0; i <= h.n; ++i) fj.push_back(i == h.k ? Json() : Json(X->id(h.n - 1, faces[i])));
    j["failure"]["faces"] = fj;
    text = "unfillable " + horn_text(X, h) + "\n";
  }
  print(j, text);
  return v.verified ? ok : refuted;
}

int cmd_quasi_iso(const std::string& file, const std::string& edge, const std::string& mode_s) {
  auto X = load_sset(file);
  auto e = X->find(edge);
  if (!e || e->dim != 1) throw InvalidArgument("--edge: '" + edge + "' is not a 1-simplex");
  QuasiIsoMode mode = mode_s == "providers" ? QuasiIsoMode::providers
                      : mode_s == "sk2e1"   ? QuasiIsoMode::sk2e1
                                            : QuasiIsoMode::ho;
  auto q = verify_quasi_category(X, 3);
  if (mode == QuasiIsoMode::ho && !q) throw NotVerifiedQuasiCategory("quasi-iso: mode ho needs a verified quasi-category");
  auto v = quasi_iso(X, e->index, mode, q ? &*q : nullptr);
  const char* ans = v.answer == Tri::yes ? "yes" : v.answer == Tri::no ? "no" : "unknown";
  Json j = {{"edge", edge}, {"mode", mode_s}, {"answer", ans}};
  if (v.witness.left_provider) j["left_provider"] = X->id(2, *v.witness.left_provider);
  if (v.witness.right_provider) j["right_provider"] = X->id(2, *v.witness.right_provider);
  std::string text = edge + ": " + ans + "\n";
  print(j, text);
  return v.answer == Tri::yes ? ok : v.answer == Tri::no ? refuted : unsupported;
}

int cmd_j(const std::string& file) {
  auto X = load_sset(file);
  auto q = verify_quasi_category(X, 3);
  if (!q) throw NotVerifiedQuasiCategory("j: the input is not an inner-fibrant complex up to dimension 3");
  auto J = j_subcomplex(*q);
  auto sj = qcat::to_json(*J.sub);
  artifact(sj);
  std::string text;
  auto s = space_summary(J.sub, G.max_dim, text);
  if (G.out.empty() && !G.json()) {
    std::cout << emit(sj);
    return ok;
  }
  print(s, text);
  return ok;
}

int cmd_ho_cat(const std::string& file) {
  auto X = load_sset(file);
  auto q = verify_quasi_category(X, 3);
  if (!q) throw NotVerifiedQuasiCategory("ho-cat: the input is not an inner-fibrant complex up to dimension 3");
  auto H = ho_category(*q);
  auto j = qcat::to_json(H.base);
  if (G.out.empty())
    std::cout << emit(j);
  else
    write_text_file(G.out, emit(j));
  return ok;
}

int cmd_hom(const std::string& file, const std::string& a, const std::string& b, const std::string& model) {
  auto X = load_sset(file);
  BiPointed S{X, vertex(X, a, "--a"), vertex(X, b, "--b")};
  auto M = hom_model(interval_kind_from_string(model), S, G.max_dim, G.trunc);
  artifact(qcat::to_json(*M.space));
  std::string text;
  auto s = space_summary(M.space, G.max_dim, text);
  s["model"] = model;
  print(s, "model: " + model + "\n" + text);
  return ok;
}

int cmd_relmap(const std::string& inc_file, const std::string& f_file) {
  auto i = smap_from_json(read_json_file(inc_file), base_of(inc_file), inc_file);
  auto f = smap_from_json(read_json_file(f_file), base_of(f_file), f_file);
  auto R = rel_map_space(i, f, G.max_dim, G.trunc);
  artifact(qcat::to_json(*R.space));
  std::string text;
  print(space_summary(R.space, G.max_dim, text), text);
  return ok;
}

int cmd_necklace(const std::string& file, const std::string& a, const std::string& b, int V) {
  auto X = load_sset(file);
  auto M = necklace_model({X, vertex(X, a, "--a"), vertex(X, b, "--b")}, V, G.max_dim);
  artifact(qcat::to_json(*M.nerve));
  std::string text;
  auto s = space_summary(M.nerve, G.max_dim, text);
  s["objects"] = M.category.object_count();
  s["morphisms"] = M.category.morphism_count();
  s["max_vertices"] = V;
  print(s, "necklaces with at most " + std::to_string(V) + " vertices: " + std::to_string(M.category.object_count()) +
               " objects, " + std::to_string(M.category.morphism_count()) + " morphisms\n" + text);
  return ok;
}

int cmd_homology(const std::string& file) {
  auto X = load_sset(file);
  auto h = homology(*X, G.max_dim);
  std::ostringstream os;
  os << "degree  betti  torsion\n";
  for (std::size_t k = 0; k < h.groups.size(); ++k) {
    os << k << "  " << h.groups[k].betti << "  ";
    if (h.groups[k].torsion.empty()) os << "-";
    for (std::size_t t = 0; t < h.groups[k].torsion.size(); ++t) os << (t ? "," : "") << h.groups[k].torsion[t];
    if (static_cast<int>(k) > h.trusted) os << "  (untrusted: truncation)";
    os << "\n";
  }
  print(qcat::to_json(h), os.str());
  return ok;
}

int cmd_cert_gen(const std::string& family, const std::vector<int>& p) {
  auto need = [&](std::size_t n, const char* usage) {
    if (p.size() != n) throw InvalidArgument(std::string("cert gen ") + family + ": expected " + usage);
  };
  std::vector<AnodyneCertificate> certs;
  bool many = false;
  if (family == "box-inner") {
    need(3, "n k r");
    certs.push_back(gen_box_inner(p[0], p[1], p[2]));
  } else if (family == "box-special") {
    need(2, "r D");
    certs.push_back(gen_box_special(p[0], p[1]));
  } else if (family == "spine-simplex") {
    need(1, "n");
    certs.push_back(gen_spine_simplex(p[0]));
  } else if (family == "spine") {
    need(1, "r");
    certs.push_back(gen_spine(p[0]));
  } else if (family == "squash") {
    need(2, "n k");
    certs.push_back(gen_squash(p[0], p[1]));
  } else if (family == "cyl-squash") {
    need(1, "n");
    certs = gen_cyl_squash(p[0]);
    many = true;
  } else {
    throw InvalidArgument("cert gen: unknown family '" + family + "'");
  }
  Json out = Json::array();
  for (const auto& c : certs) out.push_back(qcat::to_json(c, qcat::to_json(*c.ambient)));
  const auto text = emit(many ? out : out[0]);
  if (G.out.empty())
    std::cout << text;
  else
    write_text_file(G.out, text);
  return ok;
}

int cmd_cert_verify(const std::string& file) {
  auto j = read_json_file(file);
  std::vector<Json> items;
  if (j.is_array())
    items.assign(j.begin(), j.end());
  else
    items.push_back(j);
  Json report = Json::array();
  std::ostringstream os;
  bool all = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string where = items.size() > 1 ? file + "[" + std::to_string(i) + "]" : file;
    auto c = certificate_from_json(items[i], base_of(file), where);
    auto v = verify(c);
    all = all && v.valid;
    report.push_back({{"valid", v.valid}, {"step", v.step}, {"reason", v.reason}, {"verified_dim", v.verified_dim},
                      {"steps", c.steps.size()}, {"partial", c.partial}});
    os << where << ": ";
    if (v.valid)
      os << "valid (" << c.steps.size() << " steps" << (c.partial ? ", partial through dimension " + std::to_string(v.verified_dim) : "")
         << ")\n";
    else
      os << "invalid at step " << v.step << ": " << v.reason << "\n";
  }
  print(items.size() > 1 ? report : report[0], os.str());
  return all ? ok : refuted;
}

Bounds bounds_from(int V) {
  Bounds b;
  b.m = G.max_dim;
  b.D = G.trunc;
  b.V = V;
  return b;
}

Json bounds_json(const Bounds& b) { return {{"m", b.m}, {"D", b.D < 0 ? b.m + 2 : b.D}, {"V", b.V}}; }

int cmd_dk_check(const std::string& file, int V) {
  auto f = smap_from_json(read_json_file(file), base_of(file), file);
  auto v = dk_check(f, bounds_from(V));
  Json pairs = Json::array();
  for (const auto& p : v.pairs)
    pairs.push_back({{"a", p.a}, {"b", p.b}, {"model", p.model}, {"pi0_source", p.pi0_source}, {"pi0_target", p.pi0_target},
                     {"pi0_bijective", p.pi0_bijective}, {"homology_iso", p.homology_iso},
                     {"checked_up_to", p.checked_up_to}, {"witness", p.witness}});
  Json j = {{"verdict", v.refuted ? "refuted" : "consistent"},
            {"witness", v.witness},
            {"bounds", bounds_json(v.bounds)},
            {"source_classes", v.source_classes},
            {"target_classes", v.target_classes},
            {"class_map", v.class_map},
            {"pairs", pairs}};
  std::string text = v.refuted ? "refuted: " + v.witness + "\n"
                               : "consistent (evidence only): " + std::to_string(v.source_classes.size()) +
                                     " iso classes matched, " + std::to_string(v.pairs.size()) + " vertex pairs checked\n";
  print(j, text);
  return v.refuted ? refuted : ok;
}

int cmd_compare(const std::string& file, const std::string& a, const std::string& b, int V) {
  auto X = load_sset(file);
  auto rep = model_agreement({X, vertex(X, a, "--a"), vertex(X, b, "--b")}, bounds_from(V));
  Json models = Json::array();
  std::ostringstream os;
  for (const auto& s : rep.models) {
    std::vector<std::string> h;
    for (const auto& g : s.homology) h.push_back(to_string(g));
    models.push_back({{"model", s.model}, {"computed", s.computed}, {"notice", s.notice}, {"level_sizes", s.level_sizes},
                      {"pi0", s.pi0}, {"homology", h}, {"acyclic_failure", s.acyclic_failure}});
    os << s.model << ": ";
    if (!s.computed) {
      os << s.notice << "\n";
      continue;
    }
    os << "sizes " << sizes_text(s.level_sizes) << ", pi0 " << s.pi0;
    if (!s.notice.empty()) os << " [" << s.notice << "]";
    os << "\n";
  }
  for (const auto& c : rep.comparison_checks) os << c << "\n";
  for (const auto& d : rep.disagreements) os << "disagreement: " << d << "\n";
  os << (rep.agree() ? "models agree\n" : "models disagree\n");
  Json j = {{"bounds", bounds_json(rep.bounds)},
            {"models", models},
            {"comparison_checks", rep.comparison_checks},
            {"disagreements", rep.disagreements},
            {"agree", rep.agree()}};
  print(j, os.str());
  return rep.agree() ? ok : refuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qc: executable quasi-category combinatorics"};
  app.require_subcommand(1);
  app.add_option("--trunc", G.trunc, "Truncation dimension override");
  app.add_option("--max-dim", G.max_dim, "Mapping-space / homology dimension bound")->capture_default_str();
  app.add_option("--out", G.out, "Write the artifact to this file");
  app.add_option("--format", G.format, "Summary format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.fallthrough();

  std::string file, file2, a, b, model = "cyl", edge, mode = "providers", family, corpus_dir;
  int dim = 3, V = 3;
  bool kan = false;
  std::vector<int> params;
  std::function<int()> run;

  auto* build = app.add_subcommand("build", "Build an SSet from a recipe (file or inline JSON), or the corpus");
  build->add_option("recipe", file, "Recipe file or inline JSON object");
  build->add_option("--corpus", corpus_dir, "Write every corpus file into this directory");
  build->callback([&] { run = [&] { return cmd_build(file, corpus_dir); }; });

  auto* fib = app.add_subcommand("check-fibrant", "Exhaustive inner (or Kan) horn check");
  fib->add_option("sset", file)->required();
  fib->add_option("--dim", dim, "Horn dimension bound")->capture_default_str();
  fib->add_flag("--kan", kan, "Include outer horns");
  fib->callback([&] { run = [&] { return cmd_check_fibrant(file, dim, kan); }; });

  auto* qi = app.add_subcommand("quasi-iso", "Decide whether an edge is a quasi-isomorphism");
  qi->add_option("sset", file)->required();
  qi->add_option("--edge", edge)->required();
  qi->add_option("--mode", mode)->check(CLI::IsMember({"providers", "sk2e1", "ho"}))->capture_default_str();
  qi->callback([&] { run = [&] { return cmd_quasi_iso(file, edge, mode); }; });

  auto* j = app.add_subcommand("j", "Maximal Kan subcomplex of a verified quasi-category");
  j->add_option("sset", file)->required();
  j->callback([&] { run = [&] { return cmd_j(file); }; });

  auto* ho = app.add_subcommand("ho-cat", "Homotopy category as a category file");
  ho->add_option("sset", file)->required();
  ho->callback([&] { run = [&] { return cmd_ho_cat(file); }; });

  auto* hom = app.add_subcommand("hom", "Mapping-space model between two vertices");
  hom->add_option("sset", file)->required();
  hom->add_option("--a", a)->required();
  hom->add_option("--b", b)->required();
  hom->add_option("--model", model)->check(CLI::IsMember({"R", "L", "cyl", "E"}))->capture_default_str();
  hom->callback([&] { run = [&] { return cmd_hom(file, a, b, model); }; });

  auto* rel = app.add_subcommand("relmap", "Relative mapping space Hom_A(B, X)");
  rel->add_option("inclusion", file, "Map file A -> B")->required();
  rel->add_option("map", file2, "Map file A -> X")->required();
  rel->callback([&] { run = [&] { return cmd_relmap(file, file2); }; });

  auto* nk = app.add_subcommand("necklace", "Finite necklace model between two vertices");
  nk->add_option("sset", file)->required();
  nk->add_option("--a", a)->required();
  nk->add_option("--b", b)->required();
  nk->add_option("--max-vertices", V)->capture_default_str();
  nk->callback([&] { run = [&] { return cmd_necklace(file, a, b, V); }; });

  auto* hg = app.add_subcommand("homology", "Integral homology table");
  hg->add_option("sset", file)->required();
  hg->callback([&] { run = [&] { return cmd_homology(file); }; });

  auto* cert = app.add_subcommand("cert", "Anodyne certificates");
  cert->require_subcommand(1);
  auto* gen = cert->add_subcommand("gen", "Generate: box-inner n k r | box-special r D | spine-simplex n | spine r | "
                                          "squash n k | cyl-squash n");
  gen->add_option("family", family)->required();
  gen->add_option("params", params);
  gen->callback([&] { run = [&] { return cmd_cert_gen(family, params); }; });
  auto* ver = cert->add_subcommand("verify", "Replay a certificate file ('-' reads standard input)");
  ver->add_option("file", file)->required();
  ver->callback([&] { run = [&] { return cmd_cert_verify(file); }; });

  auto* dk = app.add_subcommand("dk-check", "Desk-scale DK-equivalence check of a map");
  dk->add_option("map", file)->required();
  dk->add_option("--max-vertices", V)->capture_default_str();
  dk->callback([&] { run = [&] { return cmd_dk_check(file, V); }; });

  auto* cmp = app.add_subcommand("compare", "Cross-model agreement report");
  cmp->add_option("sset", file)->required();
  cmp->add_option("--a", a)->required();
  cmp->add_option("--b", b)->required();
  cmp->add_option("--max-vertices", V)->capture_default_str();
  cmp->callback([&] { run = [&] { return cmd_compare(file, a, b, V); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : malformed;
  }
  try {
    return run();
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return malformed;
  } catch (const UnsupportedEnumeration& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return unsupported;
  } catch (const NotVerifiedQuasiCategory& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return unsupported;
  } catch (const PreconditionNotQuasiIso& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return refuted;
  } catch (const FillerNotFound& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return refuted;
  } catch (const InvalidArgument& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return malformed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return refuted;
  }
}
