#include "qcat/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace qcat {

namespace {

using Column = std::vector<std::pair<int, long long>>;

struct Overflow {};

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
  return static_cast<long long>(v);
}

// a - f * b on sorted sparse columns.
Column axpy(const Column& a, long long f, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, checked(-static_cast<__int128>(f) * b[j].second)});
      ++j;
    } else {
      long long v = checked(static_cast<__int128>(a[i].second) - static_cast<__int128>(f) * b[j].second);
      if (v != 0) out.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return out;
}

long long entry(const Column& c, int row) {
  auto it = std::lower_bound(c.begin(), c.end(), std::pair<int, long long>{row, INT64_MIN});
  return it != c.end() && it->first == row ? it->second : 0;
}

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Diagonal of the Smith normal form of a dense matrix.
std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> A) {
  std::vector<BigInt> diag;
  const std::size_t R = A.size(), C = R ? A[0].size() : 0;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    auto find_min = [&](std::size_t& pi, std::size_t& pj) {
      bool found = false;
      BigInt best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (A[i][j] != 0 && (!found || babs(A[i][j]) < best)) {
            best = babs(A[i][j]);
            pi = i, pj = j;
            found = true;
          }
      return found;
    };
    std::size_t pi = 0, pj = 0;
    if (!find_min(pi, pj)) break;
    while (true) {
      std::swap(A[t], A[pi]);
      for (std::size_t i = 0; i < R; ++i) std::swap(A[i][t], A[i][pj]);
      bool clean = true;
      const BigInt p = A[t][t];
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A[i][t] == 0) continue;
        BigInt q = A[i][t] / p;
        for (std::size_t j = t; j < C; ++j) A[i][j] -= q * A[t][j];
        clean = clean && A[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A[t][j] == 0) continue;
        BigInt q = A[t][j] / p;
        for (std::size_t i = t; i < R; ++i) A[i][j] -= q * A[i][t];
        clean = clean && A[t][j] == 0;
      }
      if (clean) {
        // Divisibility: fold a offending row into row t and continue.
        std::size_t bad = R;
        for (std::size_t i = t + 1; i < R && bad == R; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (A[i][j] % p != 0) {
              bad = i;
              break;
            }
        if (bad == R) break;
        for (std::size_t j = t; j < C; ++j) A[t][j] += A[bad][j];
      }
      find_min(pi, pj);
    }
    diag.push_back(babs(A[t][t]));
  }
  return diag;
}

}  // namespace

std::vector<BigInt> invariant_factors(const SparseMatrix& M) {
  std::vector<Column> cols = M.columns;
  std::vector<std::vector<int>> rows(M.rows);
  for (int c = 0; c < M.cols; ++c)
    for (auto [r, v] : cols[c]) rows[r].push_back(c);
  std::vector<char> col_dead(M.cols, 0);
  std::size_t units = 0;
  try {
    // Eliminate unit pivots sparsely; what remains is reduced densely.
    bool progress = true;
    while (progress) {
      progress = false;
      for (int c = 0; c < M.cols; ++c) {
        if (col_dead[c] || cols[c].empty()) continue;
        auto piv = std::find_if(cols[c].begin(), cols[c].end(), [](auto& e) { return e.second == 1 || e.second == -1; });
        if (piv == cols[c].end()) continue;
        const int r = piv->first;
        const long long v = piv->second;
        std::sort(rows[r].begin(), rows[r].end());
        rows[r].erase(std::unique(rows[r].begin(), rows[r].end()), rows[r].end());
        const std::vector<int> touched = rows[r];  // rows[r] grows below
        for (int c2 : touched) {
          if (c2 == c || col_dead[c2]) continue;
          const long long v2 = entry(cols[c2], r);
          if (v2 == 0) continue;
          cols[c2] = axpy(cols[c2], v2 * v, cols[c]);
          for (auto [r2, x] : cols[c]) rows[r2].push_back(c2);
        }
        col_dead[c] = 1;
        rows[r].clear();
        ++units;
        progress = true;
      }
    }
  } catch (const Overflow&) {
    // Fall back to exact dense reduction of the original matrix.
    std::vector<std::vector<BigInt>> A(M.rows, std::vector<BigInt>(M.cols));
    for (int c = 0; c < M.cols; ++c)
      for (auto [r, v] : M.columns[c]) A[r][c] = v;
    return dense_snf(std::move(A));
  }
  std::vector<int> live_cols;
  std::vector<int> row_pos(M.rows, -1);
  int nrows = 0;
  for (int c = 0; c < M.cols; ++c) {
    if (col_dead[c] || cols[c].empty()) continue;
    live_cols.push_back(c);
    for (auto [r, v] : cols[c])
      if (row_pos[r] < 0) row_pos[r] = nrows++;
  }
  std::vector<std::vector<BigInt>> A(nrows, std::vector<BigInt>(live_cols.size()));
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (auto [r, v] : cols[live_cols[j]]) A[row_pos[r]][j] = v;
  std::vector<BigInt> out(units, BigInt(1));
  for (auto& d : dense_snf(std::move(A))) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

ChainComplex chains(const SSet& X, int m) {
  if (m < 0) throw InvalidArgument("chains: negative degree");
  ChainComplex C;
  C.top = std::min(m, X.trunc_dim());
  C.trusted = X.stable() ? m : std::min(m, X.trunc_dim() - 1);
  std::vector<std::vector<int>> pos(C.top + 1);
  for (int d = 0; d <= C.top; ++d) {
    C.basis.push_back(X.nondegenerate_simplices(d));
    pos[d].assign(X.size(d), -1);
    for (std::size_t i = 0; i < C.basis[d].size(); ++i) pos[d][C.basis[d][i]] = static_cast<int>(i);
  }
  for (int d = 0; d <= C.top; ++d) {
    SparseMatrix B;
    B.rows = d ? static_cast<int>(C.basis[d - 1].size()) : 0;
    B.cols = static_cast<int>(C.basis[d].size());
    B.columns.resize(B.cols);
    if (d > 0)
      for (int j = 0; j < B.cols; ++j) {
        std::map<int, long long> acc;
        for (int i = 0; i <= d; ++i) {
          const int p = pos[d - 1][X.face(d, i, C.basis[d][j])];
          if (p >= 0) acc[p] += (i % 2 ? -1 : 1);
        }
        for (auto [r, v] : acc)
          if (v) B.columns[j].push_back({r, v});
      }
    C.boundary.push_back(std::move(B));
  }
  return C;
}

bool boundary_squares_zero(const ChainComplex& C) {
  for (int d = 2; d <= C.top; ++d) {
    const auto& hi = C.boundary[d];
    const auto& lo = C.boundary[d - 1];
    for (const auto& col : hi.columns) {
      std::map<int, long long> acc;
      for (auto [r, v] : col)
        for (auto [r2, w] : lo.columns[r]) acc[r2] += v * w;
      for (auto [r, v] : acc)
        if (v) return false;
    }
  }
  return true;
}

HomologyReport homology(const ChainComplex& C) {
  HomologyReport h;
  h.trusted = C.trusted;
  std::vector<std::vector<BigInt>> factors(C.top + 2);
  for (int d = 1; d <= C.top; ++d) factors[d] = invariant_factors(C.boundary[d]);
  for (int d = 0; d <= C.top; ++d) {
    HomologyGroup g;
    const long long rank_out = static_cast<long long>(factors[d].size());
    const long long rank_in = static_cast<long long>(factors[d + 1].size());
    g.betti = static_cast<long long>(C.basis[d].size()) - rank_out - rank_in;
    for (const auto& f : factors[d + 1])
      if (f > 1) g.torsion.push_back(f);
    h.groups.push_back(std::move(g));
  }
  return h;
}

HomologyReport homology(const SSet& X, int m) {
  auto C = chains(X, m + 1);
  auto h = homology(C);
  if (static_cast<int>(h.groups.size()) > m + 1) h.groups.resize(m + 1);
  h.trusted = X.stable() ? m : std::min(m, X.trunc_dim() - 1);
  return h;
}

std::string to_string(const HomologyGroup& g) {
  std::string s;
  if (g.betti == 0 && g.torsion.empty()) return "0";
  if (g.betti == 1) s = "Z";
  if (g.betti > 1) s = "Z^" + std::to_string(g.betti);
  for (const auto& t : g.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
  return s;
}

Components pi0(const SSet& X) {
  Components c;
  const Index n = X.empty() ? 0 : X.size(0);
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (X.trunc_dim() >= 1)
    for (Index e = 0; e < X.size(1); ++e) {
      Index a = find(X.face(1, 0, e)), b = find(X.face(1, 1, e));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  c.of_vertex.assign(n, -1);
  std::unordered_map<Index, int> label;
  for (Index v = 0; v < n; ++v) {
    auto [it, fresh] = label.emplace(find(v), c.count);
    if (fresh) ++c.count;
    c.of_vertex[v] = it->second;
  }
  return c;
}

Inclusion component(const SSetPtr& Xp, const Components& c, int lbl) {
  const SSet& X = *Xp;
  auto mask = Subcomplex::empty(X).mask();
  for (int n = 0; n <= X.trunc_dim(); ++n)
    for (Index x = 0; x < X.size(n); ++x) mask[n][x] = c.of_vertex[X.vertex(n, x, 0)] == lbl;
  return materialize(Xp, Subcomplex::from_mask(X, std::move(mask)));
}

std::string componentwise_acyclic(const SSetPtr& Xp, int m) {
  const SSet& X = *Xp;
  auto c = pi0(X);
  for (int l = 0; l < c.count; ++l) {
    auto part = component(Xp, c, l);
    auto h = homology(*part.sub, m);
    const HomologyGroup point{1, {}}, zero{0, {}};
    for (int k = 0; k < static_cast<int>(h.groups.size()); ++k)
      if (h.groups[k] != (k == 0 ? point : zero))
        return "component of '" + part.sub->id(0, 0) + "': H_" + std::to_string(k) + " = " + to_string(h.groups[k]);
  }
  return {};
}

std::vector<int> pi0_map(const SMap& f, const Components& src, const Components& dst) {
  std::vector<int> m(src.count, -1);
  for (Index v = 0; v < static_cast<Index>(src.of_vertex.size()); ++v) m[src.of_vertex[v]] = dst.of_vertex[f(0, v)];
  return m;
}

namespace {

int effective_top(const SSet& X, int want) { return X.stable() ? want : std::min(want, X.trunc_dim()); }

// Mapping cone of the chain map induced by f, in degrees 0..top.
ChainComplex mapping_cone(const SMap& f, int top) {
  const SSet& S = *f.source();
  const SSet& T = *f.target();
  auto Cs = chains(S, top);
  auto Cd = chains(T, top);
  auto size = [](const ChainComplex& C, int d) {
    return d < 0 || d > C.top ? 0 : static_cast<int>(C.basis[d].size());
  };
  std::vector<std::unordered_map<Index, int>> tpos(Cd.top + 1);
  for (int d = 0; d <= Cd.top; ++d)
    for (std::size_t i = 0; i < Cd.basis[d].size(); ++i) tpos[d][Cd.basis[d][i]] = static_cast<int>(i);
  ChainComplex K;
  K.top = top;
  K.trusted = top - 1;
  for (int k = 0; k <= top; ++k) {
    const int cs = size(Cs, k - 1), ds = size(Cd, k);
    K.basis.emplace_back(cs + ds, -1);
    SparseMatrix B;
    B.rows = k ? size(Cs, k - 2) + size(Cd, k - 1) : 0;
    B.cols = cs + ds;
    B.columns.resize(B.cols);
    if (k > 0) {
      const int off = size(Cs, k - 2);
      for (int j = 0; j < cs; ++j) {
        Column col;
        if (k - 1 >= 1)
          for (auto [r, v] : Cs.boundary[k - 1].columns[j]) col.push_back({r, -v});
        const Index img = f(k - 1, Cs.basis[k - 1][j]);
        if (T.nondegenerate(k - 1, img)) col.push_back({off + tpos[k - 1].at(img), 1});
        B.columns[j] = std::move(col);
      }
      for (int j = 0; j < ds; ++j)
        for (auto [r, v] : Cd.boundary[k].columns[j]) B.columns[cs + j].push_back({off + r, v});
    }
    K.boundary.push_back(std::move(B));
  }
  return K;
}

}  // namespace

HomologyIsoEvidence homology_iso(const SMap& f, int m) {
  HomologyIsoEvidence ev;
  const SSet& S = *f.source();
  const SSet& T = *f.target();
  auto cs = pi0(S), ct = pi0(T);
  auto pm = pi0_map(f, cs, ct);
  std::vector<int> hit(ct.count, 0);
  for (int l : pm) ++hit[l];
  ev.pi0_bijective = cs.count == ct.count && std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
  if (!ev.pi0_bijective) {
    ev.witness = "pi0: " + std::to_string(cs.count) + " components map to " + std::to_string(ct.count) +
                 " (not a bijection)";
    return ev;
  }
  const int trusted = std::min({m, S.stable() ? m : S.trunc_dim() - 1, T.stable() ? m : T.trunc_dim() - 1});
  if (trusted >= 0 && componentwise_acyclic(f.source(), trusted).empty() &&
      componentwise_acyclic(f.target(), trusted).empty()) {
    ev.iso = true;
    ev.checked_up_to = trusted;
    return ev;
  }
  // Cone degrees whose homology is exact: Cone_{j+1} needs levels j and j+1.
  const int top = std::min(effective_top(S, m + 1), effective_top(T, m + 2));
  auto K = mapping_cone(f, top);
  auto h = homology(K);
  int ok_through = -1;
  for (int j = 0; j < top && j <= m + 1; ++j) {
    if (h.groups[j].betti != 0 || !h.groups[j].torsion.empty()) {
      ev.witness = "mapping cone H_" + std::to_string(j) + " = " + to_string(h.groups[j]) + ": degree " +
                   std::to_string(j) + " not surjective or degree " + std::to_string(j - 1) + " not injective";
      ev.checked_up_to = std::max(-1, j - 2);
      return ev;
    }
    ok_through = j;
  }
  ev.checked_up_to = std::min(m, ok_through - 1);
  ev.iso = ev.checked_up_to >= m;
  if (!ev.iso) ev.witness = "bounded: isomorphism verified only through degree " + std::to_string(ev.checked_up_to);
  return ev;
}

}  // namespace qcat
