#pragma once

// Determinantal ideals I_t(P). Minors are enumerated column by column: for
// each increasing column set C the nonzero minors det(R, C) are kept in a map
// keyed by the row set R, and extending C by one column is a Laplace step
// along that column. Only row sets reachable through nonzero entries are
// ever touched.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "jumploci/ideal.hpp"
#include "jumploci/matrix.hpp"

namespace jumploci {

namespace detail {

template <class Field>
struct PolyKeyLess {
  bool operator()(const Poly<Field>& a, const Poly<Field>& b) const {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      int c = grevlex_compare(a.terms()[i].mono, b.terms()[i].mono);
      if (c != 0) return c < 0;
      if (a.terms()[i].coef != b.terms()[i].coef) return less_scalar(a.terms()[i].coef, b.terms()[i].coef);
    }
    return a.size() < b.size();
  }
  static bool less_scalar(const Zp& x, const Zp& y) { return x.value() < y.value(); }
  static bool less_scalar(const mpq_class& x, const mpq_class& y) { return x < y; }
};

template <class Field>
void collect_minors(const PolyMatrix<Field>& P, int t, size_t col, int depth,
                    const std::unordered_map<uint64_t, Poly<Field>>& prev, std::vector<Poly<Field>>& out) {
  for (size_t c = col; c < P.cols(); ++c) {
    if (int(P.cols() - c) < t - depth) break;
    std::unordered_map<uint64_t, Poly<Field>> next;
    for (auto& [rows, det] : prev) {
      for (size_t r = 0; r < P.rows(); ++r) {
        if (rows & (uint64_t(1) << r)) continue;
        const auto& e = P(r, c);
        if (e.is_zero()) continue;
        // position of r within the enlarged row set, and of c within the
        // enlarged column set (which is `depth`)
        int k = std::popcount(rows & ((uint64_t(1) << r) - 1));
        Poly<Field> term = e * det;
        if ((k + depth) % 2 == 1) term = -term;
        uint64_t key = rows | (uint64_t(1) << r);
        auto it = next.find(key);
        if (it == next.end()) next.emplace(key, std::move(term));
        else it->second += term;
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.is_zero()) it = next.erase(it);
      else ++it;
    }
    if (next.empty()) continue;
    if (depth + 1 == t) {
      for (auto& [rows, det] : next) out.push_back(det);
    } else {
      collect_minors(P, t, c + 1, depth + 1, next, out);
    }
  }
}

}  // namespace detail

template <class Field>
typename Field::Scalar one_of(const PolyMatrix<Field>& P) {
  for (size_t i = 0; i < P.rows(); ++i)
    for (size_t j = 0; j < P.cols(); ++j)
      if (!P(i, j).is_zero()) {
        auto c = P(i, j).lead().coef;
        return c / c;
      }
  throw std::invalid_argument("zero matrix has no nonzero minors");
}

/// All nonzero t x t minors of P, made monic and deduplicated, in a
/// deterministic order. Empty when t exceeds the matrix size.
template <class Field>
std::vector<Poly<Field>> minors(const PolyMatrix<Field>& P, int t) {
  if (t < 1) throw std::invalid_argument("minor size must be positive");
  std::vector<Poly<Field>> out;
  if (size_t(t) > P.rows() || size_t(t) > P.cols()) return out;
  if (P.rows() > 64) throw std::invalid_argument("minor enumeration supports at most 64 rows per block");
  std::unordered_map<uint64_t, Poly<Field>> start;
  start.emplace(0, Poly<Field>::constant(P.tag(), one_of(P)));
  detail::collect_minors(P, t, 0, 0, start, out);
  for (auto& m : out) m = m.monic();
  std::sort(out.begin(), out.end(), detail::PolyKeyLess<Field>{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Keeps a k-basis of the span of the generators in each degree (inputs
/// homogeneous). Generators of the same ideal, usually far fewer.
template <class Field>
std::vector<Poly<Field>> echelon_reduce(std::vector<Poly<Field>> gens) {
  using P = Poly<Field>;
  std::map<int, std::vector<P>> byDeg;
  for (auto& g : gens)
    if (!g.is_zero()) byDeg[g.degree()].push_back(std::move(g));
  std::vector<P> out;
  for (auto& [deg, list] : byDeg) {
    std::vector<P> basis;  // leads pairwise distinct
    for (auto& g : list) {
      P r = g;
      bool changed = true;
      while (!r.is_zero() && changed) {
        changed = false;
        for (auto& b : basis) {
          // eliminate any term of r equal to the lead of b
          for (auto& t : r.terms())
            if (t.mono == b.lead().mono) {
              r = r - b.scaled(t.coef);
              changed = true;
              break;
            }
          if (r.is_zero()) break;
        }
      }
      if (!r.is_zero()) basis.push_back(r.monic());
    }
    out.insert(out.end(), basis.begin(), basis.end());
  }
  return out;
}

/// Connected components of the bipartite row/column incidence graph of P.
struct MatrixBlock {
  std::vector<size_t> rows;
  std::vector<size_t> cols;
};

template <class Field>
std::vector<MatrixBlock> blocks(const PolyMatrix<Field>& P) {
  size_t n = P.rows() + P.cols();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < P.rows(); ++i)
    for (size_t j = 0; j < P.cols(); ++j)
      if (!P(i, j).is_zero()) parent[find(i)] = find(P.rows() + j);
  std::map<size_t, MatrixBlock> comp;
  std::vector<bool> touched(n, false);
  for (size_t i = 0; i < P.rows(); ++i)
    for (size_t j = 0; j < P.cols(); ++j)
      if (!P(i, j).is_zero()) touched[i] = touched[P.rows() + j] = true;
  for (size_t i = 0; i < P.rows(); ++i)
    if (touched[i]) comp[find(i)].rows.push_back(i);
  for (size_t j = 0; j < P.cols(); ++j)
    if (touched[P.rows() + j]) comp[find(P.rows() + j)].cols.push_back(j);
  std::vector<MatrixBlock> out;
  for (auto& [k, b] : comp) out.push_back(std::move(b));
  return out;
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
template <class Field>
size_t generic_rank(const PolyMatrix<Field>& P) {
  using Pl = Poly<Field>;
  size_t m = P.rows(), n = P.cols();
  std::vector<std::vector<Pl>> a(m, std::vector<Pl>(n));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = P(i, j);
  std::vector<bool> colUsed(n, false);
  Pl prev;
  bool havePrev = false;
  size_t rank = 0;
  for (size_t r = 0; r < m; ++r) {
    // pivot: first nonzero entry among the remaining rows
    size_t pr = m, pc = n;
    for (size_t i = r; i < m && pr == m; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!colUsed[j] && !a[i][j].is_zero()) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m) break;
    std::swap(a[r], a[pr]);
    colUsed[pc] = true;
    const Pl piv = a[r][pc];
    for (size_t i = r + 1; i < m; ++i) {
      const Pl aip = a[i][pc];
      for (size_t j = 0; j < n; ++j) {
        if (colUsed[j] && j != pc) continue;
        Pl v = piv * a[i][j] - aip * a[r][j];
        if (havePrev && !v.is_zero()) {
          Pl q;
          if (!v.divide_exact(prev, q)) throw std::logic_error("Bareiss step is not exact");
          v = q;
        }
        a[i][j] = std::move(v);
      }
    }
    prev = piv;
    havePrev = true;
    ++rank;
  }
  return rank;
}

/// Generators of I_t(P) for a direct sum of blocks, via
/// I_t(+_k P_k) = sum over u_1 + ... = t of prod_k I_{u_k}(P_k),
/// reduced degree by degree.
template <class Field>
std::vector<Poly<Field>> blocked_minors_ideal(const RingPtr<Field>& ring, const std::vector<PolyMatrix<Field>>& parts,
                                              int t) {
  using Pl = Poly<Field>;
  if (t <= 0) return {ring->one()};
  // acc[s] = generators of the ideal of s-minors of the sum so far; empty
  // vector = zero ideal.
  std::vector<std::vector<Pl>> acc(size_t(t) + 1);
  acc[0] = {ring->one()};
  for (auto& part : parts) {
    int cap = int(std::min({part.rows(), part.cols(), size_t(t)}));
    std::vector<std::vector<Pl>> own(size_t(cap) + 1);
    own[0] = {ring->one()};
    for (int u = 1; u <= cap; ++u) {
      own[size_t(u)] = echelon_reduce(minors(part, u));
      if (own[size_t(u)].empty()) {
        cap = u - 1;
        break;
      }
    }
    std::vector<std::vector<Pl>> next(size_t(t) + 1);
    for (int s = 0; s <= t; ++s) {
      std::vector<Pl> gens;
      for (int u = 0; u <= std::min(s, cap); ++u) {
        auto& left = acc[size_t(s - u)];
        auto& right = own[size_t(u)];
        for (auto& x : left)
          for (auto& y : right) gens.push_back(x * y);
      }
      gens = echelon_reduce(std::move(gens));
      if (gens.size() > 8) gens = Ideal<Field>(ring, gens).minimalized().generators();
      next[size_t(s)] = std::move(gens);
    }
    acc = std::move(next);
  }
  return acc[size_t(t)];
}

template <class Field>
std::vector<PolyMatrix<Field>> block_parts(const PolyMatrix<Field>& P) {
  std::vector<PolyMatrix<Field>> parts;
  for (auto& b : blocks(P)) parts.push_back(P.submatrix(b.rows, b.cols));
  return parts;
}

}  // namespace jumploci
