#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat {

inline constexpr int kDefaultTrunc = 8;

// Standard simplex; default truncation max(8, n+1) keeps it stable.
SSetPtr delta(int n, int D = -1);
SSetPtr boundary(int n, int D = -1);
SSetPtr horn(int n, int k, int D = -1);
SSetPtr empty_sset(int D);
// Subcomplex of a standard simplex generated by the faces on the given vertex sets.
Subcomplex simplex_faces(const SSet& delta_n, const std::vector<std::vector<int>>& vertex_sets);
std::string simplex_label(const std::vector<int>& vertices);

// The 0-coskeleton E S of a finite set, truncated at D.
SSetPtr e_space(const std::vector<std::string>& S, int D = kDefaultTrunc);

struct ProductResult {
  SSetPtr object;
  SMap pr1, pr2;
  Index pair(int n, Index x, Index y) const { return x * ysize[n] + y; }
  std::vector<Index> ysize;
};
ProductResult product(const SSetPtr& X, const SSetPtr& Y);
// f x g between two products built by product().
SMap product_map(const ProductResult& from, const ProductResult& to, const SMap& f, const SMap& g);

struct JoinResult {
  SSetPtr object;
  SMap left, right;  // M -> M*N, N -> M*N
  SSetPtr M, N;      // the factors as used (possibly extended)
  // Index of the simplex (x in M_i, y in N_{n-i-1}) at level n; i = -1 or i = n
  // denote the empty side.
  Index part(int n, int i, Index x, Index y) const;
  struct Parts {
    int i;
    Index x, y;
  };
  Parts parts(int n, Index s) const;
  std::vector<std::vector<Index>> offsets;
};
// Truncation defaults to M.D + N.D + 1 when both are stable, else min(M.D, N.D).
JoinResult join(const SSetPtr& M, const SSetPtr& N, std::optional<int> trunc = std::nullopt);
SMap join_map(const JoinResult& from, const JoinResult& to, const SMap& f, const SMap& g);

struct QuotientResult {
  SSetPtr object;
  SMap projection;
  std::vector<std::vector<Index>> section;  // preimage of non-collapsed simplices, -1 on the collapsed one
  std::vector<Index> collapsed;             // collapsed simplex per level, -1 when A is empty
};
QuotientResult quotient(const SSetPtr& X, const Subcomplex& A, const std::string& label = "*");
// Induced map X/A -> X'/A' from f : X -> X' carrying A into A'.
SMap quotient_map(const QuotientResult& from, const QuotientResult& to, const SMap& f);

struct PushoutResult {
  SSetPtr object;
  SMap from_b, from_c;
  struct Rep {
    bool c_side;
    Index index;
  };
  std::vector<std::vector<Rep>> reps;
};
// Pushout of B <-f- A -g-> C. Class identifiers prefer members from C.
PushoutResult pushout(const SMap& f, const SMap& g);
SMap pushout_map(const PushoutResult& from, const PushoutResult& to, const SMap& fb, const SMap& fc);

struct PullbackResult {
  SSetPtr object;
  SMap pr1, pr2;
};
PullbackResult pullback(const SMap& f, const SMap& g);

Inclusion skeleton(const SSetPtr& X, int k);
SSetPtr coskeleton(const SSetPtr& X, int k);
bool is_coskeletal(const SSetPtr& X, int k);

// Restricts to a lower truncation, or freely extends a stable object upward.
SSetPtr retruncate(const SSetPtr& X, int D);
SMap retruncate_map(const SMap& f, const SSetPtr& source, const SSetPtr& target);

}  // namespace qcat
