#pragma once

#include <string>
#include <vector>

#include "qcat/sset.hpp"

namespace qcat {

// Calls fn(theta) for every surjective monotone theta : [n] -> [p],
// in lexicographic order of the set of repeat positions.
template <class Fn>
void for_each_surjection(int n, int p, Fn&& fn) {
  if (p > n || p < 0) return;
  const int r = n - p;  // number of positions j with theta(j) = theta(j+1)
  std::vector<int> pos(r);
  for (int i = 0; i < r; ++i) pos[i] = i;
  std::vector<int> theta(n + 1);
  while (true) {
    int v = 0, k = 0;
    theta[0] = 0;
    for (int j = 0; j < n; ++j) {
      if (k < r && pos[k] == j) {
        ++k;
      } else {
        ++v;
      }
      theta[j + 1] = v;
    }
    fn(static_cast<const std::vector<int>&>(theta));
    int i = r - 1;
    while (i >= 0 && pos[i] == n - r + i) --i;
    if (i < 0) return;
    ++pos[i];
    for (int j = i + 1; j < r; ++j) pos[j] = pos[j - 1] + 1;
  }
}

// Calls fn(subset) for every size-k subset of {0..n-1}, lexicographically.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(s));
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Vertex sequence label: digits when every entry is < 10, dot-separated otherwise.
inline std::string sequence_label(const std::vector<int>& seq) {
  bool small = true;
  for (int v : seq) small = small && v < 10;
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!small && i) out += '.';
    out += std::to_string(seq[i]);
  }
  return out;
}

}  // namespace qcat
