#pragma once

// Brute-force reference computations used to pin derived expectations. They
// read only raw face/degeneracy tables and composition tables, never the
// library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcat/category.hpp"
#include "qcat/sset.hpp"

namespace oracle {

using qcat::FinCat;
using qcat::Index;
using qcat::SSet;

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Counts sequences v_0 .. v_k over {0..n} accepted by `keep`.
inline long long count_sequences(int alphabet, int k, const std::function<bool(const std::vector<int>&)>& keep) {
  std::vector<int> v(k + 1, 0);
  long long c = 0;
  while (true) {
    if (keep(v)) ++c;
    int i = k;
    while (i >= 0 && v[i] == alphabet - 1) v[i--] = 0;
    if (i < 0) return c;
    ++v[i];
  }
}

// Nondegenerate k-simplices of Delta^n: strictly increasing vertex sequences.
inline long long simplex_nondegenerate(int n, int k) {
  return count_sequences(n + 1, k, [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) return false;
    return true;
  });
}

// All k-simplices of Delta^n: monotone vertex sequences.
inline long long simplex_all(int n, int k) {
  return count_sequences(n + 1, k, [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] < v[i - 1]) return false;
    return true;
  });
}

// Nondegenerate k-simplices of E(S): no two neighbouring vertices equal.
inline long long e_space_nondegenerate(int s, int k) {
  return count_sequences(s, k, [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] == v[i - 1]) return false;
    return true;
  });
}

inline bool is_identity(const FinCat& C, int f) { return C.identity(C.morphism(f).src) == f; }

// Composable chains of n morphisms, optionally without identities.
inline long long nerve_chains(const FinCat& C, int n, bool nondegenerate) {
  long long total = 0;
  std::function<void(int, int)> rec = [&](int at, int left) {
    if (left == 0) {
      ++total;
      return;
    }
    for (int f = 0; f < C.morphism_count(); ++f)
      if (C.morphism(f).src == at && !(nondegenerate && is_identity(C, f))) rec(C.morphism(f).dst, left - 1);
  };
  if (n == 0) return C.object_count();
  for (int o = 0; o < C.object_count(); ++o) rec(o, n);
  return total;
}

inline std::vector<int> hom(const FinCat& C, int a, int b) {
  std::vector<int> out;
  for (int f = 0; f < C.morphism_count(); ++f)
    if (C.morphism(f).src == a && C.morphism(f).dst == b) out.push_back(f);
  return out;
}

inline bool invertible(const FinCat& C, int f) {
  const auto& m = C.morphism(f);
  for (int g : hom(C, m.dst, m.src))
    if (C.compose(g, f) == C.identity(m.src) && C.compose(f, g) == C.identity(m.dst)) return true;
  return false;
}

inline std::vector<int> class_labels(const FinCat& C) {
  std::vector<int> p(C.object_count());
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (int f = 0; f < C.morphism_count(); ++f)
    if (invertible(C, f)) p[find(C.morphism(f).src)] = find(C.morphism(f).dst);
  std::vector<int> out(C.object_count());
  for (int o = 0; o < C.object_count(); ++o) out[o] = find(o);
  return out;
}

inline int iso_class_count(const FinCat& C) {
  auto l = class_labels(C);
  return static_cast<int>(std::set<int>(l.begin(), l.end()).size());
}

// Degenerate means "in the image of some s_i", read straight off the tables.
inline std::vector<std::vector<char>> degenerate_flags(const SSet& X) {
  std::vector<std::vector<char>> deg(X.trunc_dim() + 1);
  for (int n = 0; n <= X.trunc_dim(); ++n) deg[n].assign(X.size(n), 0);
  for (int n = 0; n < X.trunc_dim(); ++n)
    for (Index x = 0; x < X.size(n); ++x)
      for (int i = 0; i <= n; ++i) deg[n + 1][X.degen(n, i, x)] = 1;
  return deg;
}

inline std::vector<long long> nondegenerate_counts(const SSet& X) {
  auto deg = degenerate_flags(X);
  std::vector<long long> out;
  for (int n = 0; n <= X.trunc_dim(); ++n)
    out.push_back(static_cast<long long>(std::count(deg[n].begin(), deg[n].end(), 0)));
  return out;
}

inline int components(const SSet& X) {
  std::vector<int> p(X.size(0));
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  if (X.trunc_dim() >= 1)
    for (Index e = 0; e < X.size(1); ++e) p[find(X.face(1, 0, e))] = find(X.face(1, 1, e));
  std::set<int> roots;
  for (Index v = 0; v < X.size(0); ++v) roots.insert(find(v));
  return static_cast<int>(roots.size());
}

// Rank of a dense matrix over GF(p).
inline int rank_mod_p(std::vector<std::vector<long long>> A, long long p) {
  const int rows = static_cast<int>(A.size()), cols = rows ? static_cast<int>(A[0].size()) : 0;
  auto inv = [&](long long a) {
    long long r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if ((A[r][c] % p + p) % p) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[rank]);
    const long long iv = inv((A[rank][c] % p + p) % p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const long long f = (A[r][c] % p + p) % p * iv % p;
      if (!f) continue;
      for (int j = 0; j < cols; ++j) A[r][j] = ((A[r][j] - f * A[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Betti numbers over GF(p) in degrees 0..m from the normalized chain complex.
inline std::vector<long long> betti_mod_p(const SSet& X, int m, long long p = 1000003) {
  auto deg = degenerate_flags(X);
  std::vector<std::vector<Index>> basis(m + 2);
  std::vector<std::vector<int>> pos(m + 2);
  for (int n = 0; n <= m + 1 && n <= X.trunc_dim(); ++n) {
    pos[n].assign(X.size(n), -1);
    for (Index x = 0; x < X.size(n); ++x)
      if (!deg[n][x]) {
        pos[n][x] = static_cast<int>(basis[n].size());
        basis[n].push_back(x);
      }
  }
  auto rank_of = [&](int n) -> int {  // rank of the boundary C_n -> C_{n-1}
    if (n <= 0 || n > X.trunc_dim() || basis[n].empty() || basis[n - 1].empty()) return 0;
    std::vector<std::vector<long long>> A(basis[n - 1].size(), std::vector<long long>(basis[n].size(), 0));
    for (std::size_t j = 0; j < basis[n].size(); ++j)
      for (int i = 0; i <= n; ++i) {
        const int r = pos[n - 1][X.face(n, i, basis[n][j])];
        if (r >= 0) A[r][j] += i % 2 ? -1 : 1;
      }
    return rank_mod_p(std::move(A), p);
  };
  std::vector<long long> out;
  for (int n = 0; n <= m; ++n)
    out.push_back(static_cast<long long>(basis[n].size()) - rank_of(n) - rank_of(n + 1));
  return out;
}

// The first horn (n, k) of dimension <= d without a filler, found by trying
// every compatible tuple of faces: y_i, y_j with d_i y_j = d_{j-1} y_i for i < j.
struct HornFailure {
  int n = 0, k = 0;
};
inline std::optional<HornFailure> unfillable_horn(const SSet& X, int d, bool outer) {
  for (int n = outer ? 1 : 2; n <= d; ++n)
    for (int k = outer ? 0 : 1; k <= (outer ? n : n - 1); ++k) {
      std::set<std::vector<Index>> filled;
      for (Index x = 0; x < X.size(n); ++x) {
        std::vector<Index> f(n + 1);
        for (int i = 0; i <= n; ++i) f[i] = i == k ? -1 : X.face(n, i, x);
        filled.insert(f);
      }
      std::vector<Index> y(n + 1, -1);
      bool failed = false;
      std::function<void(int)> rec = [&](int i) {
        if (failed) return;
        if (i > n) {
          if (!filled.count(y)) failed = true;
          return;
        }
        if (i == k) {
          rec(i + 1);
          return;
        }
        for (Index c = 0; c < X.size(n - 1) && !failed; ++c) {
          bool ok = true;
          if (n >= 2)
            for (int j = 0; j < i && ok; ++j)
              if (j != k) ok = X.face(n - 1, j, c) == X.face(n - 1, i - 1, y[j]);
          if (!ok) continue;
          y[i] = c;
          rec(i + 1);
        }
        y[i] = -1;
      };
      rec(0);
      if (failed) return HornFailure{n, k};
    }
  return std::nullopt;
}

}  // namespace oracle
