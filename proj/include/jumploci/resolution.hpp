#pragma once

// Graded free resolutions over A = k[x] and over B = A/(f), and the A-dual
// of a finite free complex.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/groebner.hpp"
#include "jumploci/hilbert.hpp"
#include "jumploci/ideal.hpp"
#include "jumploci/matrix.hpp"
#include "jumploci/text.hpp"

namespace jumploci {

/// A = k[x_1..x_n] with weights, the sequence f, and S = k[chi_1..chi_c].
template <class Field>
struct RingData {
  using P = Poly<Field>;

  RingPtr<Field> A;
  std::vector<P> f;
  RingPtr<Field> S;
  std::vector<int> fdeg;

  size_t c() const { return f.size(); }
  size_t nu() const { return A->nvars(); }
  const Field& field() const { return A->field(); }
};

template <class Field>
RingData<Field> make_ring_data(RingPtr<Field> A, std::vector<Poly<Field>> f) {
  RingData<Field> r;
  if (f.empty()) throw std::invalid_argument("the sequence f must contain at least one element");
  for (size_t i = 0; i < f.size(); ++i) {
    const auto& g = f[i];
    std::string name = "f" + std::to_string(i + 1);
    if (g.is_zero()) throw std::invalid_argument(name + " is zero");
    if (!g.is_homogeneous(A->weights())) throw std::invalid_argument(name + " = " + to_string(g, *A) + " is not homogeneous");
    if (g.has_constant_term()) throw std::invalid_argument(name + " = " + to_string(g, *A) + " is not in the irrelevant ideal");
    r.fdeg.push_back(g.degree_in(A->weights()));
  }
  std::vector<std::string> names;
  for (size_t i = 0; i < f.size(); ++i) names.push_back("chi" + std::to_string(i + 1));
  r.S = make_ring(A->field(), RingKind::S, names, std::vector<int>(f.size(), 1));
  r.A = std::move(A);
  r.f = std::move(f);
  return r;
}

/// A module given either by a presentation over A or by an explicit finite
/// free complex, optionally with strict dg actions e_i.
template <class Field>
struct ModuleInput {
  /// M = coker(presentation); row degrees in rowDegrees()[r].internal.
  std::optional<PolyMatrix<Field>> presentation;
  /// d_1..d_L of an explicit complex F_L -> ... -> F_0.
  std::vector<PolyMatrix<Field>> differentials;
  /// actions[i][t] : F_t -> F_{t+1} for t = 0..L-1.
  std::vector<std::vector<PolyMatrix<Field>>> actions;
  /// Internal degrees of F_0 generators for explicit complexes (default 0).
  std::vector<int> baseDegrees;
  /// True when the complex was generated as the Koszul complex K^A.
  bool koszul = false;

  bool is_complex() const { return !presentation.has_value(); }
};

/// A finite (or truncated) graded free complex F_L -> ... -> F_0.
/// d[t] : F_t -> F_{t-1} for t >= 1; d[0] is an empty placeholder.
template <class Field>
struct FreeComplex {
  std::vector<std::vector<int>> degrees;
  std::vector<PolyMatrix<Field>> d;
  bool overB = false;
  bool minimal = false;
  /// Homological degree of the last computed module when the resolution is
  /// truncated; -1 when the complex is complete.
  int truncation = -1;

  size_t length() const { return degrees.empty() ? 0 : degrees.size() - 1; }
  size_t rank(size_t t) const { return t < degrees.size() ? degrees[t].size() : 0; }
  size_t total_rank() const {
    size_t s = 0;
    for (auto& g : degrees) s += g.size();
    return s;
  }
  std::vector<size_t> betti() const {
    std::vector<size_t> b;
    for (auto& g : degrees) b.push_back(g.size());
    return b;
  }
};

template <class Field>
using FreeResolution = FreeComplex<Field>;

struct BettiTable {
  std::vector<size_t> beta;
  /// graded[i][j] = number of degree-j generators of F_i
  std::vector<std::map<int, size_t>> graded;
  bool overB = false;

  template <class Field>
  static BettiTable of(const FreeComplex<Field>& F) {
    BettiTable t;
    t.overB = F.overB;
    for (auto& g : F.degrees) {
      t.beta.push_back(g.size());
      std::map<int, size_t> m;
      for (int d : g) ++m[d];
      t.graded.push_back(std::move(m));
    }
    return t;
  }
};

inline std::vector<Bidegree> bidegrees(int coh, const std::vector<int>& internal) {
  std::vector<Bidegree> out;
  for (int d : internal) out.push_back({coh, d});
  return out;
}

inline std::vector<int> internal_degrees(const std::vector<Bidegree>& b) {
  std::vector<int> out;
  for (auto& x : b) out.push_back(x.internal);
  return out;
}

namespace detail {

/// Degree of column j from its nonzero entries; nullopt for a zero column.
/// Throws if the column is not homogeneous.
template <class Field>
std::optional<int> column_degree(const PolyMatrix<Field>& P, size_t j, const std::vector<int>& rowDeg,
                                 const std::vector<int>& weights) {
  std::optional<int> deg;
  for (size_t i = 0; i < P.rows(); ++i) {
    const auto& e = P(i, j);
    if (e.is_zero()) continue;
    if (!e.is_homogeneous(weights)) throw std::invalid_argument("matrix entry is not homogeneous");
    int d = e.degree_in(weights) + rowDeg[i];
    if (deg && *deg != d) throw std::invalid_argument("matrix column " + std::to_string(j + 1) + " is not homogeneous");
    deg = d;
  }
  return deg;
}

/// Removes generator/relation pairs (r, c) with P(r, c) a nonzero constant.
template <class Field>
void prune_units(PolyMatrix<Field>& P, std::vector<int>& rowDeg) {
  for (;;) {
    size_t ur = P.rows(), uc = P.cols();
    for (size_t i = 0; i < P.rows() && ur == P.rows(); ++i)
      for (size_t j = 0; j < P.cols(); ++j)
        if (!P(i, j).is_zero() && P(i, j).is_constant()) {
          ur = i;
          uc = j;
          break;
        }
    if (ur == P.rows()) return;
    auto uinv = inverse(P(ur, uc).lead().coef);
    std::vector<size_t> keepR, keepC;
    for (size_t i = 0; i < P.rows(); ++i)
      if (i != ur) keepR.push_back(i);
    for (size_t j = 0; j < P.cols(); ++j)
      if (j != uc) keepC.push_back(j);
    PolyMatrix<Field> Q(P.tag(), keepR.size(), keepC.size());
    for (size_t a = 0; a < keepR.size(); ++a)
      for (size_t b = 0; b < keepC.size(); ++b) {
        size_t i = keepR[a], j = keepC[b];
        auto v = P(i, j);
        if (!P(i, uc).is_zero() && !P(ur, j).is_zero()) v -= (P(i, uc) * P(ur, j)).scaled(uinv);
        Q(a, b) = std::move(v);
      }
    std::vector<int> nd;
    for (auto i : keepR) nd.push_back(rowDeg[i]);
    P = std::move(Q);
    rowDeg = std::move(nd);
  }
}

template <class Field>
void reduce_entries(const PolyRing<Field>& ring, const std::vector<Poly<Field>>& gb, PolyMatrix<Field>& M) {
  if (gb.empty()) return;
  GroebnerEngine<Field> e(ring.field(), ring.weights(), ModuleOrder::rank_one(), true);
  for (auto& g : gb) e.add(poly_to_vec(g, 0));
  e.complete();
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) M(i, j) = vec_to_poly(e.normalForm(poly_to_vec(M(i, j), 0)), ring.tag());
}

}  // namespace detail

/// Checks f_i * M = 0 for M = coker(P); returns the index of the first f_i
/// that fails, or -1.
template <class Field>
int first_non_annihilating(const RingData<Field>& R, const PolyMatrix<Field>& P, const std::vector<int>& rowDeg) {
  std::vector<int> colDeg;
  for (size_t j = 0; j < P.cols(); ++j) colDeg.push_back(detail::column_degree(P, j, rowDeg, R.A->weights()).value_or(0));
  ImageBasis<Field> ib(*R.A, P, rowDeg, colDeg, 1, {}, false);
  for (size_t i = 0; i < R.c(); ++i)
    for (size_t r = 0; r < P.rows(); ++r)
      if (!ib.contains(poly_to_vec(R.f[i], int(r)))) return int(i);
  return -1;
}

/// Minimal graded free resolution of coker(P) over A (quotient empty) or
/// over A/(quotient), through homological degree maxLength.
template <class Field>
FreeResolution<Field> minimal_resolution(const PolyRing<Field>& ring, PolyMatrix<Field> P, std::vector<int> rowDeg,
                                         const std::vector<Poly<Field>>& quotient, int maxLength) {
  FreeResolution<Field> F;
  F.overB = !quotient.empty();
  F.minimal = true;
  std::vector<Poly<Field>> qgb;
  if (!quotient.empty()) qgb = groebner_basis(ring, quotient);
  detail::prune_units(P, rowDeg);
  F.degrees.push_back(rowDeg);
  F.d.emplace_back();
  if (P.rows() == 0) return F;

  std::vector<Vec<Field>> cols;
  for (size_t j = 0; j < P.cols(); ++j) cols.push_back(column_to_vec(P, j, 0));
  auto keep = minimal_generators(ring, cols, rowDeg, 1, qgb);
  PolyMatrix<Field> d1 = P.columns(keep);
  std::vector<int> deg1;
  for (size_t j = 0; j < d1.cols(); ++j) deg1.push_back(*detail::column_degree(d1, j, rowDeg, ring.weights()));
  detail::reduce_entries(ring, qgb, d1);

  PolyMatrix<Field> cur = std::move(d1);
  std::vector<int> curDeg = std::move(deg1);
  for (int t = 1; t <= maxLength; ++t) {
    if (cur.cols() == 0) break;
    cur.setRowDegrees(bidegrees(t - 1, F.degrees.back()));
    cur.setColDegrees(bidegrees(t, curDeg));
    F.degrees.push_back(curDeg);
    F.d.push_back(cur);
    if (t == maxLength) {
      F.truncation = F.overB ? t : -1;
      break;
    }
    std::vector<int> next;
    PolyMatrix<Field> syz = syzygy_matrix(ring, cur, F.degrees[size_t(t) - 1], curDeg, 1, qgb, next);
    detail::reduce_entries(ring, qgb, syz);
    cur = std::move(syz);
    curDeg = std::move(next);
  }
  if (!F.overB && F.length() > ring.nvars()) throw std::logic_error("resolution over A longer than the number of variables");
  return F;
}

template <class Field>
FreeResolution<Field> minimal_resolution_over_A(const RingData<Field>& R, const PolyMatrix<Field>& P) {
  return minimal_resolution(*R.A, P, internal_degrees(P.rowDegrees()), {}, int(R.nu()) + 1);
}

/// Resolution over B = A/(f) through homological degree N. Rejects inputs
/// with f_i M != 0.
template <class Field>
FreeResolution<Field> minimal_resolution_over_B(const RingData<Field>& R, const PolyMatrix<Field>& P, int N) {
  if (N < 1) throw std::invalid_argument("truncation bound must be at least 1");
  auto rowDeg = internal_degrees(P.rowDegrees());
  int bad = first_non_annihilating(R, P, rowDeg);
  if (bad >= 0)
    throw std::invalid_argument("f" + std::to_string(bad + 1) + " = " + to_string(R.f[size_t(bad)], *R.A) +
                                " does not annihilate the module");
  return minimal_resolution(*R.A, P, rowDeg, R.f, N);
}

/// Exact check that consecutive differentials compose to zero (modulo the
/// quotient for complexes over B).
template <class Field>
bool dd_zero(const PolyRing<Field>& ring, const FreeComplex<Field>& F, const std::vector<Poly<Field>>& quotient = {}) {
  auto gb = quotient.empty() ? quotient : groebner_basis(ring, quotient);
  for (size_t t = 2; t < F.d.size(); ++t) {
    auto prod = F.d[t - 1] * F.d[t];
    detail::reduce_entries(ring, gb, prod);
    if (!prod.is_zero()) return false;
  }
  return true;
}

/// Every differential entry lies in the irrelevant ideal.
template <class Field>
bool is_minimal(const FreeComplex<Field>& F) {
  for (size_t t = 1; t < F.d.size(); ++t)
    if (!F.d[t].entries_in_irrelevant_ideal()) return false;
  return true;
}

/// Euler characteristic check: sum_i (-1)^i HS(F_i) agrees with HS(coker P)
/// in degrees 0..upTo.
template <class Field>
bool euler_characteristic_matches(const PolyRing<Field>& ring, const FreeResolution<Field>& F,
                                  const PolyMatrix<Field>& P, int upTo = 30) {
  auto rowDeg = internal_degrees(P.rowDegrees());
  std::vector<int> colDeg;
  for (size_t j = 0; j < P.cols(); ++j) colDeg.push_back(detail::column_degree(P, j, rowDeg, ring.weights()).value_or(0));
  HilbertData hm = hilbert_of_cokernel(ring, P, rowDeg, colDeg, 1, rowDeg);
  Laurent num;
  for (size_t t = 0; t < F.degrees.size(); ++t)
    for (int d : F.degrees[t]) laurent_add(num, Laurent{{d, 1}}, 0, (t % 2 == 0) ? 1 : -1);
  HilbertData hf = hilbert_from_numerator(num, ring.weights());
  int lo = 0;
  for (auto& g : F.degrees)
    for (int d : g) lo = std::min(lo, d);
  for (int d = lo; d <= upTo; ++d)
    if (hm.at(d) != hf.at(d)) return false;
  return true;
}

/// dim A/(f) = n - c.
template <class Field>
bool is_regular_sequence(const RingData<Field>& R) {
  Ideal<Field> I(R.A, R.f);
  return I.dimension() == int(R.nu()) - int(R.c());
}

/// The complex Hom_A(F, A): G_j = F_{L-j}^*, d^G_j = (d^F_{L-j+1})^T, with
/// internal degrees negated. No signs are introduced. When the homology of
/// G is concentrated in degree 0 the module Ext^L_A(M, A) is coker(d^G_1).
template <class Field>
struct DualComplex {
  FreeComplex<Field> G;
  /// Homological position of G_0 in the convention M* = Sigma^c RHom_A(M, A).
  int offset = 0;
  std::optional<PolyMatrix<Field>> presentation;
};

template <class Field>
DualComplex<Field> dualize_over_A(const FreeComplex<Field>& F, size_t c) {
  DualComplex<Field> out;
  size_t L = F.length();
  for (size_t j = 0; j <= L; ++j) {
    std::vector<int> deg;
    for (int d : F.degrees[L - j]) deg.push_back(-d);
    out.G.degrees.push_back(deg);
  }
  out.G.d.emplace_back();
  for (size_t j = 1; j <= L; ++j) {
    auto m = F.d[L - j + 1].transpose();
    m.setRowDegrees(bidegrees(int(j) - 1, out.G.degrees[j - 1]));
    m.setColDegrees(bidegrees(int(j), out.G.degrees[j]));
    out.G.d.push_back(std::move(m));
  }
  out.G.minimal = F.minimal;
  out.offset = int(c) - int(L);
  if (L == c && L >= 1) out.presentation = out.G.d[1];
  return out;
}

}  // namespace jumploci
