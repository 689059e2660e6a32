#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qcat/anodyne.hpp"
#include "qcat/category.hpp"
#include "qcat/homology.hpp"
#include "qcat/sset.hpp"

namespace qcat {

using Json = nlohmann::json;

// { "trunc_dim", "levels": [[id..]..], "face": {"n,i": {id: id}}, "degen": {"n,i": {id: id}},
//   "stable", optional "coskeletal" }
Json to_json(const SSet& X);
SSetPtr sset_from_json(const Json& j, const std::string& where = "$");

// { "source": ref, "target": ref, "assignment": [{id: id}, ...] } where a ref is
// a file path (relative to the map file) or an inline SSet object.
Json to_json(const SMap& f, const Json& source_ref, const Json& target_ref);
SMap smap_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where = "$");

// { "objects": [..], "morphisms": [{"name","src","dst"}], "identities": {obj: mor},
//   "compose": [[g, f, g.f], ..] }
Json to_json(const FinCat& C);
FinCat fincat_from_json(const Json& j, const std::string& where = "$");

// { "ambient": ref, "start": [ids], "end": [ids], "steps": [{"simplex","k","class"}],
//   "partial", "verified_dim" }; start and end list nondegenerate simplices.
Json to_json(const AnodyneCertificate& c, const Json& ambient_ref);
AnodyneCertificate certificate_from_json(const Json& j, const std::filesystem::path& base_dir,
                                         const std::string& where = "$");

Json to_json(const HomologyReport& h);

// Deterministic text form used for files (bit-exact round trips).
std::string emit(const Json& j);
Json parse_text(const std::string& text, const std::string& where);
Json read_json_file(const std::filesystem::path& p);  // "-" reads standard input
void write_text_file(const std::filesystem::path& p, const std::string& text);

SSetPtr read_sset(const std::filesystem::path& p);
// Resolves a reference: a path string relative to base_dir, or an inline object.
SSetPtr resolve_sset(const Json& ref, const std::filesystem::path& base_dir, const std::string& where);

}  // namespace qcat
