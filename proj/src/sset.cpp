#include "qcat/sset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "combinatorics.hpp"

namespace qcat {

std::optional<Simplex> SSet::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Simplex SSet::at(std::string_view id) const {
  auto s = find(id);
  if (!s) throw InvalidArgument("unknown simplex id '" + std::string(id) + "'");
  return *s;
}

int SSet::max_nondegenerate_dim() const {
  for (int n = trunc_dim(); n >= 0; --n)
    if (!levels_[n].nondeg_list.empty()) return n;
  return -1;
}

std::vector<Index> SSet::vertices(int n, Index x) const {
  const auto* p = levels_[n].verts.data() + static_cast<std::size_t>(x) * (n + 1);
  return {p, p + n + 1};
}

Index SSet::apply(int n, Index x, std::span<const int> theta) const {
  const int p = static_cast<int>(theta.size()) - 1;
  if (p < 0) throw InvalidArgument("apply: empty operator");
  for (int j = 0; j <= p; ++j) {
    if (theta[j] < 0 || theta[j] > n || (j > 0 && theta[j] < theta[j - 1]))
      throw InvalidArgument("apply: operator is not monotone into [n]");
  }
  if (p > trunc_dim()) throw InvalidArgument("apply: result above truncation");
  std::vector<char> hit(n + 1, 0);
  for (int v : theta) hit[v] = 1;
  int cur = n;
  Index y = x;
  for (int j = n; j >= 0; --j) {
    if (!hit[j]) y = face(cur--, j, y);
  }
  for (int j = 0; j < p; ++j) {
    if (theta[j] == theta[j + 1]) {
      y = degen(cur, j, y);
      ++cur;
    }
  }
  return y;
}

// ---------------------------------------------------------------------------

SSetBuilder::SSetBuilder(int trunc_dim) : trunc_(trunc_dim) {
  if (trunc_dim < 0) throw InvalidArgument("truncation must be non-negative");
  levels_.resize(trunc_dim + 1);
}

Index SSetBuilder::add(int n, std::string id) {
  auto& L = levels_.at(n);
  L.ids.push_back(std::move(id));
  L.face.resize(L.ids.size() * (n + 1), -1);
  if (n < trunc_) L.degen.resize(L.ids.size() * (n + 1), -1);
  return static_cast<Index>(L.ids.size() - 1);
}

void SSetBuilder::set_face(int n, int i, Index x, Index y) {
  levels_[n].face[static_cast<std::size_t>(x) * (n + 1) + i] = y;
}

void SSetBuilder::set_degen(int n, int i, Index x, Index y) {
  levels_[n].degen[static_cast<std::size_t>(x) * (n + 1) + i] = y;
}

SSetPtr SSetBuilder::finish(bool stable, std::optional<int> coskeletal) {
  auto X = std::shared_ptr<SSet>(new SSet());
  X->levels_ = std::move(levels_);
  auto& lv = X->levels_;
  const int D = trunc_;
  for (int n = 0; n <= D; ++n) {
    auto& L = lv[n];
    const Index N = static_cast<Index>(L.ids.size());
    if (n >= 1) {
      const Index below = static_cast<Index>(lv[n - 1].ids.size());
      for (std::size_t k = 0; k < L.face.size(); ++k)
        if (L.face[k] < 0 || L.face[k] >= below)
          throw InvalidArgument("face table incomplete at level " + std::to_string(n) + " for '" +
                                L.ids[k / (n + 1)] + "'");
    }
    if (n < D) {
      const Index above = static_cast<Index>(lv[n + 1].ids.size());
      for (std::size_t k = 0; k < L.degen.size(); ++k)
        if (L.degen[k] < 0 || L.degen[k] >= above)
          throw InvalidArgument("degeneracy table incomplete at level " + std::to_string(n) +
                                " for '" + L.ids[k / (n + 1)] + "'");
    }
    L.nondeg.assign(N, 1);
    L.base.resize(N);
    L.base_dim.resize(N);
    L.surj.resize(static_cast<std::size_t>(N) * (n + 1));
    L.verts.resize(static_cast<std::size_t>(N) * (n + 1));
    for (Index x = 0; x < N; ++x) {
      auto* vx = &L.verts[static_cast<std::size_t>(x) * (n + 1)];
      auto* sx = &L.surj[static_cast<std::size_t>(x) * (n + 1)];
      if (n == 0) {
        vx[0] = x;
      } else {
        const auto& P = lv[n - 1];
        Index last = X->face(n, n, x), first = X->face(n, 0, x);
        for (int j = 0; j < n; ++j) vx[j] = P.verts[static_cast<std::size_t>(last) * n + j];
        vx[n] = P.verts[static_cast<std::size_t>(first) * n + (n - 1)];
      }
      int via = -1;
      for (int i = 0; i < n && via < 0; ++i) {
        Index y = X->face(n, i, x);
        if (X->degen(n - 1, i, y) == x) via = i;
      }
      if (via < 0) {
        L.base[x] = x;
        L.base_dim[x] = static_cast<std::int8_t>(n);
        for (int j = 0; j <= n; ++j) sx[j] = static_cast<std::int8_t>(j);
        L.nondeg_list.push_back(x);
      } else {
        L.nondeg[x] = 0;
        Index y = X->face(n, via, x);
        const auto& P = lv[n - 1];
        L.base[x] = P.base[y];
        L.base_dim[x] = P.base_dim[y];
        for (int j = 0; j <= n; ++j) {
          int s = j <= via ? j : j - 1;
          sx[j] = P.surj[static_cast<std::size_t>(y) * n + s];
        }
      }
    }
    for (Index x = 0; x < N; ++x) {
      auto [it, fresh] = X->by_id_.emplace(L.ids[x], Simplex{n, x});
      if (!fresh) throw InvalidArgument("duplicate simplex id '" + L.ids[x] + "'");
    }
  }
  X->stable_ = stable && (D < 0 || lv[D].nondeg_list.empty());
  X->cosk_ = coskeletal;
  return X;
}

// ---------------------------------------------------------------------------

std::vector<std::string> audit(const SSet& X) {
  std::vector<std::string> bad;
  const int D = X.trunc_dim();
  auto report = [&](const std::string& what, int n, Index x) {
    if (bad.size() < 50) bad.push_back(what + " at level " + std::to_string(n) + " on '" + X.id(n, x) + "'");
  };
  for (int n = 2; n <= D; ++n)
    for (Index x = 0; x < X.size(n); ++x)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (X.face(n - 1, i, X.face(n, j, x)) != X.face(n - 1, j - 1, X.face(n, i, x)))
            report("d_i d_j != d_{j-1} d_i", n, x);
  for (int n = 0; n < D; ++n) {
    for (Index x = 0; x < X.size(n); ++x) {
      std::set<Index> images;
      for (int i = 0; i <= n; ++i) {
        Index y = X.degen(n, i, x);
        images.insert(y);
        for (int j = 0; j <= n + 1; ++j) {
          Index dj = X.face(n + 1, j, y);
          if (j == i || j == i + 1) {
            if (dj != x) report("d_j s_j != id", n, x);
          } else if (j < i) {
            if (dj != X.degen(n - 1, i - 1, X.face(n, j, x))) report("d_j s_i != s_{i-1} d_j", n, x);
          } else {
            if (dj != X.degen(n - 1, i, X.face(n, j - 1, x))) report("d_j s_i != s_i d_{j-1}", n, x);
          }
        }
        if (n + 1 < D)
          for (int j = i; j <= n; ++j)
            if (X.degen(n + 1, i, X.degen(n, j, x)) != X.degen(n + 1, j + 1, X.degen(n, i, x)))
              report("s_i s_j != s_{j+1} s_i", n, x);
      }
      if (images.size() != static_cast<std::size_t>(n + 1) && n > 0) {
        // distinct s_i may coincide only if x itself is degenerate
        if (X.nondegenerate(n, x)) report("degeneracies of a nondegenerate simplex coincide", n, x);
      }
    }
  }
  // Levelwise injectivity of each degeneracy operator.
  for (int n = 0; n < D; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<char> seen(X.size(n + 1), 0);
      for (Index x = 0; x < X.size(n); ++x) {
        Index y = X.degen(n, i, x);
        if (seen[y]) report("degeneracy not injective", n, x);
        seen[y] = 1;
      }
    }
  // Eilenberg-Zilber: every simplex is theta^*(y) for exactly one pair.
  for (int n = 0; n <= D; ++n) {
    std::vector<int> hits(X.size(n), 0);
    for (int p = 0; p <= n; ++p) {
      for (Index y : X.nondegenerate_simplices(p)) {
        for_each_surjection(n, p, [&](const std::vector<int>& theta) {
          Index x = X.apply(p, y, theta);
          ++hits[x];
          auto b = X.base(n, x);
          auto s = X.ez_surjection(n, x);
          bool same = b.dim == p && b.index == y;
          for (int j = 0; j <= n && same; ++j) same = s[j] == theta[j];
          if (!same) report("normal form table disagrees", n, x);
          if ((p == n) != X.nondegenerate(n, x)) report("nondegeneracy flag disagrees", n, x);
        });
      }
    }
    for (Index x = 0; x < X.size(n); ++x)
      if (hits[x] != 1) report("normal form not unique (" + std::to_string(hits[x]) + " representations)", n, x);
  }
  return bad;
}

// ---------------------------------------------------------------------------

SMap::SMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Index>> assignment)
    : src_(std::move(source)), dst_(std::move(target)), assign_(std::move(assignment)) {
  const int L = std::min(src_->trunc_dim(), dst_->trunc_dim());
  if (static_cast<int>(assign_.size()) != L + 1)
    throw InvalidArgument("map assignment must cover levels 0.." + std::to_string(L));
  for (int n = 0; n <= L; ++n) {
    if (static_cast<Index>(assign_[n].size()) != src_->size(n))
      throw InvalidArgument("map assignment incomplete at level " + std::to_string(n));
    for (Index y : assign_[n])
      if (y < 0 || y >= dst_->size(n)) throw InvalidArgument("map assignment out of range at level " + std::to_string(n));
  }
}

bool is_simplicial(const SMap& f) {
  const SSet& X = *f.source();
  const SSet& Y = *f.target();
  const int L = f.levels() - 1;
  for (int n = 0; n <= L; ++n)
    for (Index x = 0; x < X.size(n); ++x) {
      Index fx = f(n, x);
      if (n > 0)
        for (int i = 0; i <= n; ++i)
          if (f(n - 1, X.face(n, i, x)) != Y.face(n, i, fx)) return false;
      if (n < L)
        for (int i = 0; i <= n; ++i)
          if (f(n + 1, X.degen(n, i, x)) != Y.degen(n, i, fx)) return false;
    }
  return true;
}

SMap compose(const SMap& g, const SMap& f) {
  const int L = std::min(f.source()->trunc_dim(), g.target()->trunc_dim());
  if (f.levels() <= L || g.levels() <= L)
    throw InvalidArgument("compose: middle object truncated below the composite's levels");
  std::vector<std::vector<Index>> a(L + 1);
  for (int n = 0; n <= L; ++n) {
    a[n].resize(f.level(n).size());
    for (std::size_t x = 0; x < a[n].size(); ++x) a[n][x] = g(n, f(n, static_cast<Index>(x)));
  }
  return SMap(f.source(), g.target(), std::move(a));
}

SMap identity_map(const SSetPtr& X) {
  std::vector<std::vector<Index>> a(X->trunc_dim() + 1);
  for (int n = 0; n <= X->trunc_dim(); ++n) {
    a[n].resize(X->size(n));
    std::iota(a[n].begin(), a[n].end(), 0);
  }
  return SMap(X, X, std::move(a));
}

bool is_injective(const SMap& f) {
  for (int n = 0; n < f.levels(); ++n) {
    std::vector<char> seen(f.target()->size(n), 0);
    for (Index y : f.level(n)) {
      if (seen[y]) return false;
      seen[y] = 1;
    }
  }
  return true;
}

bool is_surjective(const SMap& f) {
  for (int n = 0; n < f.levels(); ++n) {
    std::vector<char> seen(f.target()->size(n), 0);
    for (Index y : f.level(n)) seen[y] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
  }
  return true;
}

bool is_bijective(const SMap& f) { return is_injective(f) && is_surjective(f); }

SMap extend_from_nondegenerate(const SSetPtr& source, const SSetPtr& target,
                               const std::vector<std::vector<Index>>& img) {
  const int L = std::min(source->trunc_dim(), target->trunc_dim());
  std::vector<std::vector<Index>> a(L + 1);
  std::vector<int> theta;
  for (int n = 0; n <= L; ++n) {
    a[n].resize(source->size(n));
    for (Index x = 0; x < source->size(n); ++x) {
      auto b = source->base(n, x);
      if (b.dim == n) {
        a[n][x] = img[n][x];
      } else {
        auto s = source->ez_surjection(n, x);
        theta.assign(s.begin(), s.end());
        a[n][x] = target->apply(b.dim, a[b.dim][b.index], theta);
      }
    }
  }
  return SMap(source, target, std::move(a));
}

// ---------------------------------------------------------------------------

Subcomplex Subcomplex::empty(const SSet& X) {
  Subcomplex A;
  A.mask_.resize(X.trunc_dim() + 1);
  for (int n = 0; n <= X.trunc_dim(); ++n) A.mask_[n].assign(X.size(n), 0);
  return A;
}

Subcomplex Subcomplex::full(const SSet& X) {
  Subcomplex A;
  A.mask_.resize(X.trunc_dim() + 1);
  for (int n = 0; n <= X.trunc_dim(); ++n) A.mask_[n].assign(X.size(n), 1);
  return A;
}

static void close_mask(const SSet& X, std::vector<std::vector<char>>& m) {
  const int D = X.trunc_dim();
  for (int n = D; n >= 1; --n)
    for (Index x = 0; x < X.size(n); ++x)
      if (m[n][x])
        for (int i = 0; i <= n; ++i) m[n - 1][X.face(n, i, x)] = 1;
  for (int n = 0; n < D; ++n)
    for (Index x = 0; x < X.size(n); ++x)
      if (m[n][x])
        for (int i = 0; i <= n; ++i) m[n + 1][X.degen(n, i, x)] = 1;
}

Subcomplex Subcomplex::generated(const SSet& X, std::span<const Simplex> gens) {
  Subcomplex A = empty(X);
  for (auto s : gens) A.mask_.at(s.dim).at(s.index) = 1;
  close_mask(X, A.mask_);
  return A;
}

Subcomplex Subcomplex::image(const SMap& f) {
  const SSet& Y = *f.target();
  Subcomplex A = empty(Y);
  for (int n = 0; n < f.levels(); ++n)
    for (Index y : f.level(n)) A.mask_[n][y] = 1;
  close_mask(Y, A.mask_);
  return A;
}

Subcomplex Subcomplex::from_mask(const SSet& X, std::vector<std::vector<char>> mask) {
  if (static_cast<int>(mask.size()) != X.trunc_dim() + 1)
    throw InvalidArgument("subcomplex mask has wrong number of levels");
  for (int n = 0; n <= X.trunc_dim(); ++n)
    if (static_cast<Index>(mask[n].size()) != X.size(n)) throw InvalidArgument("subcomplex mask has wrong level size");
  auto closed = mask;
  close_mask(X, closed);
  if (closed != mask) throw InvalidArgument("subset is not closed under faces and degeneracies");
  Subcomplex A;
  A.mask_ = std::move(mask);
  return A;
}

std::size_t Subcomplex::count(int n) const {
  return static_cast<std::size_t>(std::count(mask_[n].begin(), mask_[n].end(), 1));
}

Subcomplex Subcomplex::unite(const Subcomplex& o) const {
  Subcomplex A = *this;
  for (std::size_t n = 0; n < A.mask_.size(); ++n)
    for (std::size_t x = 0; x < A.mask_[n].size(); ++x) A.mask_[n][x] = A.mask_[n][x] | o.mask_[n][x];
  return A;
}

Subcomplex Subcomplex::intersect(const Subcomplex& o) const {
  Subcomplex A = *this;
  for (std::size_t n = 0; n < A.mask_.size(); ++n)
    for (std::size_t x = 0; x < A.mask_[n].size(); ++x) A.mask_[n][x] = A.mask_[n][x] & o.mask_[n][x];
  return A;
}

Inclusion materialize(const SSetPtr& X, const Subcomplex& A, std::optional<bool> stable) {
  const int D = X->trunc_dim();
  SSetBuilder b(D);
  std::vector<std::vector<Index>> local(D + 1), incl(D + 1);
  for (int n = 0; n <= D; ++n) {
    local[n].assign(X->size(n), -1);
    for (Index x = 0; x < X->size(n); ++x)
      if (A.contains(n, x)) {
        local[n][x] = b.add(n, X->id(n, x));
        incl[n].push_back(x);
      }
  }
  for (int n = 0; n <= D; ++n)
    for (Index y = 0; y < static_cast<Index>(incl[n].size()); ++y) {
      Index x = incl[n][y];
      for (int i = 0; i <= n; ++i) {
        if (n > 0) b.set_face(n, i, y, local[n - 1][X->face(n, i, x)]);
        if (n < D) b.set_degen(n, i, y, local[n + 1][X->degen(n, i, x)]);
      }
    }
  auto S = b.finish(stable.value_or(X->stable()));
  return {S, SMap(S, X, std::move(incl))};
}

BiPointed BiPointed::of(SSetPtr space, std::string_view a, std::string_view b) {
  auto sa = space->at(a), sb = space->at(b);
  if (sa.dim != 0 || sb.dim != 0) throw InvalidArgument("basepoints must be vertices");
  return {std::move(space), sa.index, sb.index};
}

}  // namespace qcat
