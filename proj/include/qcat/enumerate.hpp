#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat {

// Pins a source simplex (possibly degenerate) to a target simplex of the same level.
struct MapConstraint {
  Simplex source;
  Index target;
};

struct EnumerateOptions {
  bool injective = false;  // nondegenerate simplices go to distinct nondegenerate simplices
  std::size_t limit = 0;   // 0 = no limit; with a limit the first maps in search order are kept
};

enum class EnumerationCase { stable_source, coskeletal_target };

// Which supported case applies to maps X -> Y; throws UnsupportedEnumeration otherwise.
EnumerationCase enumeration_case(const SSet& X, const SSet& Y);

// All simplicial maps X -> Y (levels 0..min(X.D, Y.D)) satisfying the
// constraints, sorted lexicographically by the target identifiers of the
// source's nondegenerate simplices.
std::vector<SMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y,
                                 std::span<const MapConstraint> constraints = {},
                                 EnumerateOptions options = {});

// Streaming form: fn receives the images of the nondegenerate simplices
// (indexed [n][x], -1 on degenerate x) and returns false to stop. Search order,
// not canonical order.
void visit_maps(const SSetPtr& X, const SSetPtr& Y, std::span<const MapConstraint> constraints,
                EnumerateOptions options,
                const std::function<bool(const std::vector<std::vector<Index>>&)>& fn);

std::size_t count_maps(const SSetPtr& X, const SSetPtr& Y, std::span<const MapConstraint> constraints = {});

// An isomorphism X -> Y on all stored levels, if one exists.
std::optional<SMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y);

}  // namespace qcat
