#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// work in finite-dimensional algebras with plain modular linear algebra and
// never call the Groebner engine.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jumploci/jumploci.hpp"
#include "jumploci/session.hpp"

namespace testing_support {

using namespace jumploci;
using F = PrimeField;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string session_path(const std::string& name) { return std::string(JUMPLOCI_SESSIONS_DIR) + "/" + name; }

inline Session<F> load(const std::string& name) {
  return std::get<Session<F>>(parse_session(read_file(session_path(name))));
}

inline PolyMatrix<F> mat(const PolyRing<F>& A, std::vector<std::vector<const char*>> rows) {
  PolyMatrix<F> M(A.tag(), rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) M(i, j) = parse_poly(A, rows[i][j]);
  return M;
}

inline RingPtr<F> poly_ring(std::vector<std::string> names, uint32_t p = 101) {
  std::vector<int> w(names.size(), 1);
  return make_ring(F(p), RingKind::A, std::move(names), w);
}

inline RingPtr<F> chi_ring(size_t c, uint32_t p = 101) {
  std::vector<std::string> names;
  for (size_t i = 1; i <= c; ++i) names.push_back("chi" + std::to_string(i));
  return make_ring(F(p), RingKind::S, names, std::vector<int>(c, 1));
}

inline RingData<F> ci(const RingPtr<F>& A, std::initializer_list<const char*> fs) {
  std::vector<Poly<F>> f;
  for (auto s : fs) f.push_back(parse_poly(*A, s));
  return make_ring_data(A, f);
}

inline ModuleInput<F> cyclic(const PolyRing<F>& A, std::vector<const char*> gens) {
  ModuleInput<F> in;
  in.presentation = mat(A, {gens});
  in.presentation->setRowDegrees({{0, 0}});
  return in;
}

/// The non-regular dg fixture, entered directly rather than from its file.
inline ModuleInput<F> e_homotopies_input(const PolyRing<F>& A) {
  ModuleInput<F> in;
  in.differentials = {mat(A, {{"x^2*y", "x*y^2"}}), mat(A, {{"-y"}, {"x"}})};
  in.actions = {{mat(A, {{"1"}, {"0"}}), mat(A, {{"0", "x*y"}})}, {mat(A, {{"0"}, {"1"}}), mat(A, {{"-x*y", "0"}})}};
  in.baseDegrees = {0};
  return in;
}

// ---------------------------------------------------------------------------
// Dense modular linear algebra.

namespace dense {

using Vec = std::vector<uint64_t>;

inline uint64_t power(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Incremental echelon basis of a subspace of k^n.
class Span {
 public:
  Span(uint64_t p, size_t n) : p_(p), n_(n) {}

  size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }

  Vec reduce(Vec v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      uint64_t c = v[piv_[r]];
      if (c == 0) continue;
      for (size_t j = 0; j < n_; ++j) v[j] = (v[j] + (p_ - c) * rows_[r][j]) % p_;
    }
    return v;
  }

  /// True when v was independent of the current span.
  bool add(const Vec& v0) {
    Vec v = reduce(v0);
    size_t piv = 0;
    while (piv < n_ && v[piv] == 0) ++piv;
    if (piv == n_) return false;
    uint64_t inv = power(v[piv], p_ - 2, p_);
    for (auto& x : v) x = x * inv % p_;
    for (auto& row : rows_) {
      uint64_t c = row[piv];
      if (c == 0) continue;
      for (size_t j = 0; j < n_; ++j) row[j] = (row[j] + (p_ - c) * v[j]) % p_;
    }
    rows_.push_back(std::move(v));
    piv_.push_back(piv);
    return true;
  }

 private:
  uint64_t p_;
  size_t n_;
  std::vector<Vec> rows_;
  std::vector<size_t> piv_;
};

/// Basis of { a : sum_j a_j cols[j] = 0 }, cols of length m.
inline std::vector<Vec> nullspace(const std::vector<Vec>& cols, size_t m, uint64_t p) {
  size_t n = cols.size();
  std::vector<Vec> a(m, Vec(n, 0));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < m; ++i) a[i][j] = cols[j][i] % p;
  std::vector<long> pivotCol;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    uint64_t inv = power(a[r][c], p - 2, p);
    for (auto& x : a[r]) x = x * inv % p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      uint64_t f = a[i][c];
      for (size_t j = 0; j < n; ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    pivotCol.push_back(long(c));
    ++r;
  }
  std::vector<bool> isPivot(n, false);
  for (long c : pivotCol) isPivot[size_t(c)] = true;
  std::vector<Vec> out;
  for (size_t free = 0; free < n; ++free) {
    if (isPivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (size_t k = 0; k < pivotCol.size(); ++k) v[size_t(pivotCol[k])] = (p - a[k][free]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

inline size_t rank(const std::vector<Vec>& cols, size_t m, uint64_t p) { return cols.size() - nullspace(cols, m, p).size(); }

/// k[x_1..x_n]/I for an artinian monomial ideal I, with its standard
/// monomials as k-basis.
class MonomialAlgebra {
 public:
  MonomialAlgebra(size_t nvars, std::vector<std::vector<int>> gens) : n_(nvars), gens_(std::move(gens)) {
    std::vector<std::vector<int>> queue{std::vector<int>(n_, 0)};
    index_[queue.front()] = 0;
    for (size_t q = 0; q < queue.size(); ++q) {
      for (size_t j = 0; j < n_; ++j) {
        auto e = queue[q];
        ++e[j];
        if (in_ideal(e) || index_.count(e)) continue;
        index_[e] = queue.size();
        queue.push_back(e);
      }
    }
    basis_ = queue;
  }

  size_t dim() const { return basis_.size(); }
  size_t nvars() const { return n_; }
  const std::vector<std::vector<int>>& basis() const { return basis_; }

  bool in_ideal(const std::vector<int>& e) const {
    for (auto& g : gens_) {
      bool div = true;
      for (size_t j = 0; j < n_ && div; ++j) div = e[j] >= g[j];
      if (div) return true;
    }
    return false;
  }

  /// Index of basis element a times monomial b, or -1 when the product is in I.
  long times(size_t a, const std::vector<int>& b) const {
    auto e = basis_[a];
    for (size_t j = 0; j < n_; ++j) e[j] += b[j];
    auto it = index_.find(e);
    return it == index_.end() ? -1 : long(it->second);
  }

  /// v in (Q)^r times the monomial b.
  Vec times(const Vec& v, const std::vector<int>& b, size_t r, uint64_t p) const {
    Vec out(v.size(), 0);
    for (size_t comp = 0; comp < r; ++comp)
      for (size_t a = 0; a < dim(); ++a) {
        uint64_t c = v[comp * dim() + a];
        if (c == 0) continue;
        long t = times(a, b);
        if (t >= 0) out[comp * dim() + size_t(t)] = (out[comp * dim() + size_t(t)] + c) % p;
      }
    return out;
  }

  std::vector<int> variable(size_t j) const {
    std::vector<int> e(n_, 0);
    e[j] = 1;
    return e;
  }

 private:
  size_t n_;
  std::vector<std::vector<int>> gens_;
  std::map<std::vector<int>, size_t> index_;
  std::vector<std::vector<int>> basis_;
};

/// Minimal Betti numbers beta_0..beta_N of a submodule K of Q^r over the
/// local artinian algebra Q, K given by a k-basis.
inline std::vector<size_t> submodule_betti(const MonomialAlgebra& Q, std::vector<Vec> K, size_t r, int N, uint64_t p) {
  std::vector<size_t> out;
  size_t d = Q.dim();
  for (int i = 0; i <= N; ++i) {
    size_t len = r * d;
    Span mK(p, len);
    for (auto& v : K)
      for (size_t j = 0; j < Q.nvars(); ++j) mK.add(Q.times(v, Q.variable(j), r, p));
    std::vector<Vec> gens;
    for (auto& v : K)
      if (mK.add(v)) gens.push_back(v);
    out.push_back(gens.size());
    if (gens.empty()) {
      while (int(out.size()) <= N) out.push_back(0);
      break;
    }
    std::vector<Vec> cols;
    for (auto& g : gens)
      for (size_t m = 0; m < d; ++m) cols.push_back(Q.times(g, Q.basis()[m], r, p));
    K = nullspace(cols, len, p);
    r = gens.size();
  }
  return out;
}

/// Betti numbers over Q of Q/J for a monomial ideal J of Q.
inline std::vector<size_t> cyclic_betti(const MonomialAlgebra& Q, const std::vector<std::vector<int>>& J, int N,
                                        uint64_t p) {
  Span span(p, Q.dim());
  for (auto& g : J)
    for (size_t m = 0; m < Q.dim(); ++m) {
      Vec v(Q.dim(), 0);
      long t = Q.times(m, g);
      if (t < 0) continue;
      v[size_t(t)] = 1;
      span.add(v);
    }
  auto tail = submodule_betti(Q, span.rows(), 1, N - 1, p);
  std::vector<size_t> out{1};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

/// k-basis of the annihilator (0 : J) in Q, i.e. Hom_Q(Q/J, Q).
inline std::vector<Vec> annihilator(const MonomialAlgebra& Q, const std::vector<std::vector<int>>& J, uint64_t p) {
  std::vector<Vec> cols;
  for (size_t m = 0; m < Q.dim(); ++m) {
    Vec col(J.size() * Q.dim(), 0);
    for (size_t g = 0; g < J.size(); ++g) {
      long t = Q.times(m, J[g]);
      if (t >= 0) col[g * Q.dim() + size_t(t)] = 1;
    }
    cols.push_back(col);
  }
  auto ker = nullspace(cols, J.size() * Q.dim(), p);
  return ker;
}

/// Koszul homology dimensions dim H_i(x; M) = beta_i^A(M) for M = A/I
/// artinian monomial, A the polynomial ring in Q.nvars() variables.
inline std::vector<size_t> koszul_betti(const MonomialAlgebra& M, uint64_t p) {
  size_t n = M.nvars();
  size_t d = M.dim();
  auto subsets_of = [&](size_t k) {
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < (1u << n); ++s)
      if (size_t(std::popcount(s)) == k) out.push_back(s);
    return out;
  };
  // rank of d_k : K_k (x) M -> K_{k-1} (x) M
  std::vector<size_t> rk(n + 2, 0);
  for (size_t k = 1; k <= n; ++k) {
    auto src = subsets_of(k), dst = subsets_of(k - 1);
    std::map<uint32_t, size_t> at;
    for (size_t i = 0; i < dst.size(); ++i) at[dst[i]] = i;
    std::vector<Vec> cols;
    for (uint32_t s : src)
      for (size_t m = 0; m < d; ++m) {
        Vec col(dst.size() * d, 0);
        int pos = 0;
        for (size_t j = 0; j < n; ++j) {
          if (!(s >> j & 1)) continue;
          long t = M.times(m, M.variable(j));
          if (t >= 0) {
            uint64_t sign = pos % 2 == 0 ? 1 : p - 1;
            size_t row = at[s & ~(1u << j)] * d + size_t(t);
            col[row] = (col[row] + sign) % p;
          }
          ++pos;
        }
        cols.push_back(col);
      }
    rk[k] = rank(cols, dst.size() * d, p);
  }
  std::vector<size_t> out;
  for (size_t k = 0; k <= n; ++k) {
    size_t dimC = subsets_of(k).size() * d;
    out.push_back(dimC - rk[k] - rk[k + 1]);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace dense

}  // namespace testing_support
