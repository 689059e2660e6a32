#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcat/category.hpp"
#include "qcat/io.hpp"
#include "qcat/sset.hpp"

namespace qcat {

// The poset [n] = {0 < 1 < ... < n}; morphisms "i->j", identities "id_i".
FinCat poset_category(int n);
// B(Z/2): one object x, morphisms e (identity) and g with g.g = e.
FinCat bz2_category();
// The codiscrete groupoid on p, q.
FinCat groupoid2_category();
// a -f-> b -g-> c with h = g.f and a second parallel k : a -> c; nothing invertible
// except identities.
FinCat noninvertible3_category();
FinCat point_category();

struct NamedCategory {
  std::string name;
  FinCat category;
};
// Every category the corpus is built from, in a fixed order.
std::vector<NamedCategory> corpus_categories();
FinCat category_by_name(const std::string& name);

// The maximal subgroupoid.
FinCat core(const FinCat& C);

// N(F) for a functor given by its action on morphisms (objects follow identities).
SMap nerve_map(const FinCat& C, const FinCat& D, const SSetPtr& NC, const SSetPtr& ND,
               const std::vector<int>& on_morphisms);

// Builds an SSet from a recipe object {"op": ..., ...}. Ops: delta, boundary,
// horn, e_space, nerve, product, join, skeleton, interval, squash, necklace,
// quotient, file. An optional "trunc" retruncates the result.
SSetPtr build_recipe(const Json& recipe, const std::filesystem::path& base_dir, const std::string& where = "$");

struct CorpusFile {
  std::string path;  // relative to the corpus directory
  Json recipe;       // empty for map files
  Json content;      // the emitted object
};
// Every SSet and map file the corpus ships with.
std::vector<CorpusFile> corpus_files();

}  // namespace qcat
