#include "qcat/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace qcat {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using FaceIndex = std::unordered_map<std::vector<Index>, std::vector<Index>, VecHash>;

struct FaceRef {
  Simplex base;
  bool nondeg;
  std::vector<int> theta;
};

struct Check {
  std::vector<int> theta;
  Index target;
};

}  // namespace

EnumerationCase enumeration_case(const SSet& X, const SSet& Y) {
  const int L = std::min(X.trunc_dim(), Y.trunc_dim());
  const int md = X.max_nondegenerate_dim();
  if (X.stable() && md <= X.trunc_dim() - 1 && md <= L) return EnumerationCase::stable_source;
  if (auto k = Y.coskeletal_hint(); k && *k <= Y.trunc_dim() - 1 && *k <= X.trunc_dim())
    return EnumerationCase::coskeletal_target;
  throw UnsupportedEnumeration(
      "maps are not determined by finite data: the source is not stable below its truncation "
      "and the target is not known to be coskeletal below its truncation");
}

void visit_maps(const SSetPtr& Xp, const SSetPtr& Yp, std::span<const MapConstraint> constraints,
                EnumerateOptions opt, const std::function<bool(const std::vector<std::vector<Index>>&)>& fn) {
  const SSet& X = *Xp;
  const SSet& Y = *Yp;
  enumeration_case(X, Y);
  const int L = std::min(X.trunc_dim(), Y.trunc_dim());
  const int top = std::min(L, X.max_nondegenerate_dim());

  // Constraints are pushed down to the nondegenerate base simplices.
  std::vector<std::vector<Index>> fixed(L + 1);
  std::vector<std::vector<std::vector<Check>>> checks(L + 1);
  for (int n = 0; n <= L; ++n) {
    fixed[n].assign(X.size(n), -1);
    checks[n].resize(X.size(n));
  }
  for (const auto& c : constraints) {
    if (c.source.dim > L) throw InvalidArgument("constraint above the levels of the maps");
    if (c.target < 0 || c.target >= Y.size(c.source.dim)) throw InvalidArgument("constraint target out of range");
    auto b = X.base(c.source.dim, c.source.index);
    if (b.dim == c.source.dim) {
      Index& slot = fixed[b.dim][b.index];
      if (slot >= 0 && slot != c.target) return;  // contradictory constraints: no maps
      slot = c.target;
    } else {
      auto s = X.ez_surjection(c.source.dim, c.source.index);
      checks[b.dim][b.index].push_back({std::vector<int>(s.begin(), s.end()), c.target});
    }
  }

  // Search order: always place the highest-dimensional simplex whose faces are placed.
  std::vector<Simplex> order;
  {
    std::vector<std::vector<int>> missing(top + 1);
    std::vector<std::vector<std::vector<Simplex>>> dependents(top + 1);
    using Item = std::pair<int, Index>;  // (-dim, index)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
    for (int n = 0; n <= top; ++n) {
      missing[n].assign(X.size(n), 0);
      dependents[n].resize(X.size(n));
    }
    for (int n = 0; n <= top; ++n)
      for (Index x : X.nondegenerate_simplices(n)) {
        std::vector<Simplex> deps;
        if (n > 0)
          for (int i = 0; i <= n; ++i) deps.push_back(X.base(n - 1, X.face(n, i, x)));
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        missing[n][x] = static_cast<int>(deps.size());
        for (auto d : deps) dependents[d.dim][d.index].push_back({n, x});
        if (deps.empty()) ready.push({-n, x});
      }
    while (!ready.empty()) {
      auto [negd, x] = ready.top();
      ready.pop();
      const int n = -negd;
      order.push_back({n, x});
      for (auto d : dependents[n][x])
        if (--missing[d.dim][d.index] == 0) ready.push({-d.dim, d.index});
    }
  }
  const std::size_t P = order.size();

  std::vector<std::vector<FaceRef>> faces(P);
  for (std::size_t p = 0; p < P; ++p) {
    auto [n, x] = order[p];
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      Index f = X.face(n, i, x);
      auto b = X.base(n - 1, f);
      auto s = X.ez_surjection(n - 1, f);
      faces[p].push_back({b, b.dim == n - 1, std::vector<int>(s.begin(), s.end())});
    }
  }

  std::vector<FaceIndex> index(top + 1);
  std::vector<char> indexed(top + 1, 0);
  auto face_index = [&](int n) -> const FaceIndex& {
    if (!indexed[n]) {
      std::vector<Index> key(n + 1);
      for (Index y = 0; y < Y.size(n); ++y) {
        for (int i = 0; i <= n; ++i) key[i] = Y.face(n, i, y);
        index[n][key].push_back(y);
      }
      indexed[n] = 1;
    }
    return index[n];
  };
  std::vector<Index> all_vertices(Y.size(0));
  std::iota(all_vertices.begin(), all_vertices.end(), 0);

  std::vector<std::vector<Index>> img(L + 1);
  for (int n = 0; n <= L; ++n) img[n].assign(X.size(n), -1);
  std::vector<std::vector<char>> used;
  if (opt.injective) {
    used.resize(L + 1);
    for (int n = 0; n <= L; ++n) used[n].assign(Y.size(n), 0);
  }

  static const std::vector<Index> kNone;
  std::vector<std::vector<Index>> cand(P);
  std::vector<std::size_t> next(P, 0);
  std::vector<Index> cur(P, -1);
  std::vector<Index> key;

  auto prepare = [&](std::size_t p) {
    auto [n, x] = order[p];
    next[p] = 0;
    cur[p] = -1;
    const std::vector<Index>* list;
    if (n == 0) {
      list = &all_vertices;
    } else {
      key.resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        const auto& fr = faces[p][i];
        Index bi = img[fr.base.dim][fr.base.index];
        key[i] = fr.nondeg ? bi : Y.apply(fr.base.dim, bi, fr.theta);
      }
      const auto& idx = face_index(n);
      auto it = idx.find(key);
      list = it == idx.end() ? &kNone : &it->second;
    }
    if (fixed[n][x] >= 0) {
      cand[p].clear();
      if (std::find(list->begin(), list->end(), fixed[n][x]) != list->end()) cand[p].push_back(fixed[n][x]);
    } else {
      cand[p] = *list;
    }
  };
  auto accept = [&](std::size_t p, Index y) {
    auto [n, x] = order[p];
    if (opt.injective && (used[n][y] || !Y.nondegenerate(n, y))) return false;
    for (const auto& c : checks[n][x])
      if (Y.apply(n, y, c.theta) != c.target) return false;
    return true;
  };

  std::size_t emitted = 0;
  if (P == 0) {
    fn(img);
    return;
  }
  std::ptrdiff_t p = 0;
  prepare(0);
  while (p >= 0) {
    if (static_cast<std::size_t>(p) == P) {
      ++emitted;
      if (!fn(img) || (opt.limit && emitted >= opt.limit)) return;
      --p;
      continue;
    }
    auto [n, x] = order[p];
    if (cur[p] >= 0) {
      if (opt.injective) used[n][cur[p]] = 0;
      cur[p] = -1;
    }
    bool advanced = false;
    while (next[p] < cand[p].size()) {
      Index y = cand[p][next[p]++];
      if (accept(p, y)) {
        img[n][x] = y;
        cur[p] = y;
        if (opt.injective) used[n][y] = 1;
        advanced = true;
        break;
      }
    }
    if (advanced) {
      ++p;
      if (static_cast<std::size_t>(p) < P) prepare(p);
    } else {
      img[n][x] = -1;
      --p;
    }
  }
}

std::vector<SMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y, std::span<const MapConstraint> constraints,
                                 EnumerateOptions opt) {
  std::vector<std::vector<std::vector<Index>>> found;
  visit_maps(X, Y, constraints, opt, [&](const std::vector<std::vector<Index>>& img) {
    found.push_back(img);
    return true;
  });
  // Canonical order: lexicographic on target identifiers along the source's
  // nondegenerate simplices, by level then storage order.
  const int L = std::min(X->trunc_dim(), Y->trunc_dim());
  std::vector<std::vector<Index>> rank(L + 1);
  for (int n = 0; n <= L; ++n) {
    std::vector<Index> ord(Y->size(n));
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](Index a, Index b) { return Y->id(n, a) < Y->id(n, b); });
    rank[n].resize(Y->size(n));
    for (Index r = 0; r < static_cast<Index>(ord.size()); ++r) rank[n][ord[r]] = r;
  }
  std::vector<std::pair<std::vector<Index>, std::size_t>> keyed;
  for (std::size_t m = 0; m < found.size(); ++m) {
    std::vector<Index> k;
    for (int n = 0; n <= L; ++n)
      for (Index x : X->nondegenerate_simplices(n)) k.push_back(rank[n][found[m][n][x]]);
    keyed.emplace_back(std::move(k), m);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<SMap> out;
  out.reserve(found.size());
  for (auto& [k, m] : keyed) out.push_back(extend_from_nondegenerate(X, Y, found[m]));
  return out;
}

std::size_t count_maps(const SSetPtr& X, const SSetPtr& Y, std::span<const MapConstraint> constraints) {
  std::size_t c = 0;
  visit_maps(X, Y, constraints, {}, [&](const std::vector<std::vector<Index>>&) {
    ++c;
    return true;
  });
  return c;
}

std::optional<SMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y) {
  if (X->trunc_dim() != Y->trunc_dim()) return std::nullopt;
  for (int n = 0; n <= X->trunc_dim(); ++n)
    if (X->size(n) != Y->size(n) || X->nondegenerate_count(n) != Y->nondegenerate_count(n)) return std::nullopt;
  std::optional<SMap> iso;
  visit_maps(X, Y, {}, {true, 0}, [&](const std::vector<std::vector<Index>>& img) {
    SMap f = extend_from_nondegenerate(X, Y, img);
    if (is_bijective(f)) {
      iso = std::move(f);
      return false;
    }
    return true;
  });
  return iso;
}

}  // namespace qcat
