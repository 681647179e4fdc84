#pragma once

// The twisted complex X = Hom_A(F, k) (x) S with differential
//   D = sum_J const(sigma_J)^T chi^J   (sigma_0 = d),
// written in the basis of duals of the generators of F. A basis vector dual
// to a generator of F_t of internal degree g has bidegree (t, g); the entry
// at (row a, column b) is c * chi^J with
//   2|J| = coh(b) - coh(a) + 1,   sum_i J_i deg(f_i) = int(b) - int(a).

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/homotopy.hpp"
#include "jumploci/minors.hpp"

namespace jumploci {

template <class Field>
struct TwistedComplex {
  RingPtr<Field> S;
  /// internal degree of chi_i (= deg f_i)
  std::vector<int> chiInternal;
  std::vector<Bidegree> basis;
  PolyMatrix<Field> D;

  size_t rank() const { return basis.size(); }
};

template <class Field>
TwistedComplex<Field> zero_complex(RingPtr<Field> S, std::vector<int> chiInternal) {
  TwistedComplex<Field> X;
  X.S = std::move(S);
  X.chiInternal = std::move(chiInternal);
  X.D = PolyMatrix<Field>(X.S->tag(), 0, 0);
  return X;
}

/// Free complex of rank r with D = 0 and the given basis degrees.
template <class Field>
TwistedComplex<Field> free_complex(RingPtr<Field> S, std::vector<int> chiInternal, std::vector<Bidegree> basis) {
  TwistedComplex<Field> X;
  X.S = std::move(S);
  X.chiInternal = std::move(chiInternal);
  X.basis = std::move(basis);
  X.D = PolyMatrix<Field>(X.S->tag(), X.basis, X.basis);
  return X;
}

/// Entry rule above, checked for every stored term. Empty string when all
/// entries conform.
template <class Field>
std::string bihomogeneity_violation(const TwistedComplex<Field>& X) {
  const auto& D = X.D;
  for (size_t a = 0; a < D.rows(); ++a)
    for (size_t b = 0; b < D.cols(); ++b) {
      const auto& e = D(a, b);
      for (auto& t : e.terms()) {
        int chi = 0, internal = 0;
        for (size_t i = 0; i < X.chiInternal.size(); ++i) {
          chi += t.mono.exp[i];
          internal += t.mono.exp[i] * X.chiInternal[i];
        }
        if (2 * chi != X.basis[b].coh - X.basis[a].coh + 1 || internal != X.basis[b].internal - X.basis[a].internal)
          return "entry (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ") = " + to_string(e, *X.S) +
                 " has the wrong bidegree";
      }
    }
  return "";
}

template <class Field>
void assert_valid(const TwistedComplex<Field>& X) {
  if (!(X.D * X.D).is_zero()) throw std::logic_error("twisted differential does not square to zero");
  auto err = bihomogeneity_violation(X);
  if (!err.empty()) throw std::logic_error("twisted differential: " + err);
}

template <class Field>
TwistedComplex<Field> build_twisted_complex(const RingData<Field>& R, const HomotopySystem<Field>& sys) {
  const auto& F = sys.F;
  const auto& S = *R.S;
  TwistedComplex<Field> X;
  X.S = R.S;
  X.chiInternal = R.fdeg;
  std::vector<size_t> offset;
  for (size_t t = 0; t < F.degrees.size(); ++t) {
    offset.push_back(X.basis.size());
    for (int g : F.degrees[t]) X.basis.push_back({int(t), g});
  }
  X.D = PolyMatrix<Field>(S.tag(), X.basis, X.basis);
  auto place = [&](const PolyMatrix<Field>& sigma, size_t from, size_t to, const Monomial& chi) {
    for (size_t p = 0; p < sigma.rows(); ++p)
      for (size_t q = 0; q < sigma.cols(); ++q) {
        const auto& e = sigma(p, q);
        if (e.is_zero() || !e.is_constant()) continue;
        X.D(offset[from] + q, offset[to] + p) += Poly<Field>::term(S.tag(), chi, e.lead().coef);
      }
  };
  for (size_t t = 1; t < F.d.size(); ++t) place(F.d[t], t, t - 1, Monomial{});
  for (auto& [J, list] : sys.sigma) {
    std::vector<int> e(J.begin(), J.end());
    Monomial chi = S.monomial(e);
    size_t s = 2 * size_t(weight(J)) - 1;
    for (size_t t = 0; t < list.size(); ++t) place(list[t], t, t + s, chi);
  }
  assert_valid(X);
  return X;
}

/// Splits off contractible pairs: while some entry u = D(a, b) is a nonzero
/// constant, replaces D by D - D(:, b) u^{-1} D(a, :) restricted to the other
/// basis vectors.
template <class Field>
TwistedComplex<Field> minimalize(TwistedComplex<Field> X) {
  for (;;) {
    size_t ua = X.rank(), ub = X.rank();
    for (size_t a = 0; a < X.rank() && ua == X.rank(); ++a)
      for (size_t b = 0; b < X.rank(); ++b)
        if (!X.D(a, b).is_zero() && X.D(a, b).is_constant()) {
          ua = a;
          ub = b;
          break;
        }
    if (ua == X.rank()) return X;
    auto uinv = inverse(X.D(ua, ub).lead().coef);
    std::vector<size_t> keep;
    for (size_t i = 0; i < X.rank(); ++i)
      if (i != ua && i != ub) keep.push_back(i);
    std::vector<Bidegree> nb;
    for (auto i : keep) nb.push_back(X.basis[i]);
    PolyMatrix<Field> ND(X.S->tag(), nb, nb);
    for (size_t r = 0; r < keep.size(); ++r)
      for (size_t c = 0; c < keep.size(); ++c) {
        auto v = X.D(keep[r], keep[c]);
        const auto& left = X.D(keep[r], ub);
        const auto& right = X.D(ua, keep[c]);
        if (!left.is_zero() && !right.is_zero()) v -= (left * right).scaled(uinv);
        ND(r, c) = std::move(v);
      }
    X.basis = std::move(nb);
    X.D = std::move(ND);
  }
}

template <class Field>
bool is_minimal(const TwistedComplex<Field>& X) {
  return X.D.entries_in_irrelevant_ideal();
}

template <class Field>
size_t tbetti(const TwistedComplex<Field>& X) {
  return minimalize(X).rank();
}

/// S-dual: D^T with both degrees negated. D^T obeys the same entry rule.
template <class Field>
TwistedComplex<Field> s_dual(const TwistedComplex<Field>& X) {
  TwistedComplex<Field> Y;
  Y.S = X.S;
  Y.chiInternal = X.chiInternal;
  for (auto& b : X.basis) Y.basis.push_back({-b.coh, -b.internal});
  Y.D = X.D.transpose();
  Y.D.setRowDegrees(Y.basis);
  Y.D.setColDegrees(Y.basis);
  assert_valid(Y);
  return Y;
}

template <class Field>
TwistedComplex<Field> direct_sum(const TwistedComplex<Field>& X, const TwistedComplex<Field>& Y) {
  TwistedComplex<Field> Z;
  Z.S = X.S;
  Z.chiInternal = X.chiInternal;
  Z.basis = X.basis;
  Z.basis.insert(Z.basis.end(), Y.basis.begin(), Y.basis.end());
  Z.D = PolyMatrix<Field>::block_diagonal(X.D, Y.D);
  Z.D.setRowDegrees(Z.basis);
  Z.D.setColDegrees(Z.basis);
  return Z;
}

template <class Field>
TwistedComplex<Field> shift(const TwistedComplex<Field>& X, int s, int internal = 0) {
  TwistedComplex<Field> Y = X;
  for (auto& b : Y.basis) {
    b.coh += s;
    b.internal += internal;
  }
  Y.D.setRowDegrees(Y.basis);
  Y.D.setColDegrees(Y.basis);
  return Y;
}

/// Kos(eta) (x) X: D' = [[D, eta I], [0, -D]]; the second copy sits in
/// bidegree (coh + 2 deg(eta) - 1, int + intdeg(eta)).
template <class Field>
TwistedComplex<Field> koszul_object(const TwistedComplex<Field>& X, const Poly<Field>& eta) {
  int chiDeg = 0, internal = 0;
  if (!eta.is_zero()) {
    if (!eta.is_homogeneous()) throw std::invalid_argument("eta = " + to_string(eta, *X.S) + " is not homogeneous");
    if (!eta.is_homogeneous(X.chiInternal))
      throw std::invalid_argument("eta = " + to_string(eta, *X.S) + " is not homogeneous in the internal grading");
    chiDeg = eta.degree();
    internal = eta.degree_in(X.chiInternal);
  }
  size_t r = X.rank();
  TwistedComplex<Field> Y;
  Y.S = X.S;
  Y.chiInternal = X.chiInternal;
  Y.basis = X.basis;
  for (auto& b : X.basis) Y.basis.push_back({b.coh + 2 * chiDeg - 1, b.internal + internal});
  Y.D = PolyMatrix<Field>(X.S->tag(), Y.basis, Y.basis);
  for (size_t a = 0; a < r; ++a)
    for (size_t b = 0; b < r; ++b)
      if (!X.D(a, b).is_zero()) {
        Y.D(a, b) = X.D(a, b);
        Y.D(r + a, r + b) = -X.D(a, b);
      }
  if (!eta.is_zero())
    for (size_t a = 0; a < r; ++a) Y.D(a, r + a) = eta;
  assert_valid(Y);
  return Y;
}

template <class Field>
TwistedComplex<Field> koszul_object(const TwistedComplex<Field>& X, const std::vector<Poly<Field>>& etas) {
  TwistedComplex<Field> Y = X;
  for (auto& e : etas) Y = koszul_object(Y, e);
  return Y;
}

/// Cohomological rank at a point: r - 2 rank D(a).
template <class Field>
size_t crk_at(const TwistedComplex<Field>& X, std::span<const typename Field::Scalar> point) {
  if (point.size() != X.S->nvars())
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                std::to_string(X.S->nvars()));
  if (X.rank() == 0) return 0;
  return X.rank() - 2 * X.D.evaluate(point, X.S->field()).rank();
}

/// Generic cohomological rank: r - 2 rank of D over Frac(S).
template <class Field>
size_t crk_generic(const TwistedComplex<Field>& X) {
  if (X.rank() == 0) return 0;
  return X.rank() - 2 * generic_rank(X.D);
}

// ---------------------------------------------------------------------------
// Homology over S.

template <class Field>
struct HomologyPresentation {
  /// Presentation of H(X) over S: rows = generators, columns = relations.
  PolyMatrix<Field> relations;
  /// Cohomological degree of each generator.
  std::vector<int> genDegrees;
  HilbertData even;
  HilbertData odd;

  /// dim_k H^i(X).
  long long dimension_at(int i) const;
  /// Krull dimension of H over S (-1 for H = 0).
  int krull_dimension() const { return std::max(even.dimension, odd.dimension); }
};

namespace detail {

inline int floor_half(int d) { return d >= 0 ? d / 2 : -((-d + 1) / 2); }

}  // namespace detail

template <class Field>
long long HomologyPresentation<Field>::dimension_at(int i) const {
  return (i % 2 == 0) ? even.at(detail::floor_half(i)) : odd.at(detail::floor_half(i - 1));
}

namespace detail {

template <class Field>
HilbertData hilbert_part(const PolyRing<Field>& S, const PolyMatrix<Field>& pres, const std::vector<int>& genDeg,
                         int parity) {
  std::vector<size_t> rows, cols;
  for (size_t i = 0; i < pres.rows(); ++i)
    if (((genDeg[i] % 2) + 2) % 2 == parity) rows.push_back(i);
  std::vector<int> rowShift, regraded, colShift;
  for (auto i : rows) {
    rowShift.push_back(genDeg[i]);
    regraded.push_back(floor_half(genDeg[i] - parity));
  }
  for (size_t j = 0; j < pres.cols(); ++j) {
    bool touches = false;
    for (auto i : rows) touches = touches || !pres(i, j).is_zero();
    if (touches) cols.push_back(j);
  }
  auto sub = pres.submatrix(rows, cols);
  for (size_t j = 0; j < cols.size(); ++j) {
    int d = 0;
    for (size_t a = 0; a < rows.size(); ++a)
      if (!sub(a, j).is_zero()) {
        d = 2 * sub(a, j).degree() + rowShift[a];
        break;
      }
    colShift.push_back(d);
  }
  if (rows.empty()) return hilbert_from_numerator(Laurent{}, S.weights());
  return hilbert_of_cokernel(S, sub, rowShift, colShift, 2, regraded);
}

}  // namespace detail

/// Generators: minimal cycles Z of D. Relations: the Z-part of the syzygies
/// of [Z | -D], then unit entries pruned.
template <class Field>
HomologyPresentation<Field> homology_presentation(const TwistedComplex<Field>& X) {
  const auto& S = *X.S;
  HomologyPresentation<Field> H;
  // D as a degree-0 map X -> X[1]: target shifts coh - 1, source shifts coh.
  std::vector<int> coh, cohPrev, cohNext;
  for (auto& b : X.basis) {
    coh.push_back(b.coh);
    cohPrev.push_back(b.coh - 1);
    cohNext.push_back(b.coh + 1);
  }
  std::vector<int> zdeg;
  PolyMatrix<Field> Z = syzygy_matrix(S, X.D, cohPrev, coh, 2, {}, zdeg);
  PolyMatrix<Field> big = PolyMatrix<Field>::hstack(Z, -X.D);
  std::vector<int> bigShift = zdeg;
  bigShift.insert(bigShift.end(), cohNext.begin(), cohNext.end());
  std::vector<int> reldeg;
  PolyMatrix<Field> syz = syzygy_matrix(S, big, coh, bigShift, 2, {}, reldeg);
  std::vector<size_t> top(Z.cols()), all(syz.cols());
  for (size_t i = 0; i < top.size(); ++i) top[i] = i;
  for (size_t j = 0; j < all.size(); ++j) all[j] = j;
  PolyMatrix<Field> rel = syz.submatrix(top, all);
  detail::prune_units(rel, zdeg);
  H.relations = std::move(rel);
  H.genDegrees = zdeg;
  H.even = detail::hilbert_part(S, H.relations, zdeg, 0);
  H.odd = detail::hilbert_part(S, H.relations, zdeg, 1);
  return H;
}

// ---------------------------------------------------------------------------
// Pipelines from module inputs.

template <class Field>
HomotopySystem<Field> homotopies_for(const RingData<Field>& R, const ModuleInput<Field>& in) {
  if (in.is_complex()) return ingest_dg_structure(R, in);
  auto F = minimal_resolution_over_A(R, *in.presentation);
  return compute_higher_homotopies(R, F);
}

template <class Field>
TwistedComplex<Field> twisted_complex_for(const RingData<Field>& R, const ModuleInput<Field>& in) {
  return build_twisted_complex(R, homotopies_for(R, in));
}

/// Twisted complex of M* built without S-duality: from a fresh resolution of
/// a presentation of M* when one is available (Ext_A(M, A) concentrated in
/// degree c), otherwise from the transposed homotopy system.
template <class Field>
TwistedComplex<Field> explicit_dual_complex(const RingData<Field>& R, const ModuleInput<Field>& in) {
  if (!in.is_complex()) {
    auto F = minimal_resolution_over_A(R, *in.presentation);
    auto dual = dualize_over_A(F, R.c());
    if (dual.presentation && dual.presentation->cols() > 0) {
      ModuleInput<Field> star;
      star.presentation = *dual.presentation;
      return twisted_complex_for(R, star);
    }
    return build_twisted_complex(R, dualize_homotopies(R, compute_higher_homotopies(R, F)));
  }
  return build_twisted_complex(R, dualize_homotopies(R, ingest_dg_structure(R, in)));
}

template <class Field>
std::optional<ModuleInput<Field>> dual_module_input(const RingData<Field>& R, const ModuleInput<Field>& in) {
  if (in.is_complex()) return std::nullopt;
  auto F = minimal_resolution_over_A(R, *in.presentation);
  auto dual = dualize_over_A(F, R.c());
  if (!dual.presentation) return std::nullopt;
  ModuleInput<Field> star;
  star.presentation = *dual.presentation;
  return star;
}

// ---------------------------------------------------------------------------
// Random complexes for property tests.

namespace detail {

template <class Field>
Poly<Field> random_form(const PolyRing<Field>& S, const std::vector<int>& chiInternal, int chiDeg, int internal,
                        std::mt19937_64& rng, bool allowZero = true) {
  // all monomials of the given chi-degree and internal degree
  std::vector<Monomial> monos;
  std::vector<int> e(S.nvars(), 0);
  auto rec = [&](auto&& self, size_t pos, int left) -> void {
    if (pos + 1 == S.nvars()) {
      e[pos] = left;
      int in = 0;
      for (size_t i = 0; i < e.size(); ++i) in += e[i] * chiInternal[i];
      if (in == internal) monos.push_back(S.monomial(e));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (chiDeg >= 0 && S.nvars() > 0) rec(rec, 0, chiDeg);
  Poly<Field> p = S.zero();
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (auto& m : monos)
      if (rng() % 2 == 0) p += Poly<Field>::term(S.tag(), m, S.field().random(rng));
    if (!p.is_zero() || allowZero || monos.empty()) break;
  }
  return p;
}

}  // namespace detail

/// Conjugates D by a random unipotent change of basis that respects the
/// bigrading: T = I + N with N strictly upper triangular in coh order.
template <class Field>
TwistedComplex<Field> random_conjugate(const TwistedComplex<Field>& X, std::mt19937_64& rng) {
  const auto& S = *X.S;
  size_t r = X.rank();
  std::vector<size_t> order(r);
  for (size_t i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return X.basis[a].coh < X.basis[b].coh; });
  PolyMatrix<Field> N(S.tag(), X.basis, X.basis);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      size_t a = order[i], b = order[j];
      int gap = X.basis[b].coh - X.basis[a].coh;
      if (gap % 2 != 0 || rng() % 3 != 0) continue;
      N(a, b) = detail::random_form(S, X.chiInternal, gap / 2, X.basis[b].internal - X.basis[a].internal, rng);
    }
  auto I = PolyMatrix<Field>::identity(S, X.basis);
  PolyMatrix<Field> T = I + N, Tinv = I, power = I;
  for (size_t k = 1; k <= r; ++k) {
    power = power * N;
    if (power.is_zero()) break;
    Tinv = (k % 2 == 1) ? Tinv - power : Tinv + power;
  }
  TwistedComplex<Field> Y = X;
  Y.D = T * X.D * Tinv;
  Y.D.setRowDegrees(Y.basis);
  Y.D.setColDegrees(Y.basis);
  assert_valid(Y);
  return Y;
}

/// Adds a contractible pair u -> v (D(v, u) = 1) of the given bidegree.
template <class Field>
TwistedComplex<Field> inflate(const TwistedComplex<Field>& X, Bidegree u) {
  auto P = free_complex(X.S, X.chiInternal, {u, {u.coh + 1, u.internal}});
  P.D(1, 0) = X.S->one();
  return direct_sum(X, P);
}

/// Random minimal-or-not complex: Koszul objects on random forms over free
/// pieces of ranks one even and one odd generator (the parity pattern of a
/// module's complex), summed, inflated by contractible pairs, and conjugated.
template <class Field>
TwistedComplex<Field> random_twisted_complex(RingPtr<Field> S, std::vector<int> chiInternal, std::mt19937_64& rng,
                                             int pieces = 2, int inflations = 2) {
  auto X = zero_complex(S, chiInternal);
  int unit = chiInternal.empty() ? 1 : chiInternal[0];
  for (int p = 0; p < pieces; ++p) {
    int coh = int(rng() % 3);
    auto Y = free_complex(S, chiInternal, {{coh, 0}, {coh + 1, unit}});
    int nk = 1 + int(rng() % 2);
    for (int k = 0; k < nk; ++k) {
      int deg = 1 + int(rng() % 2);
      auto eta = detail::random_form(*S, chiInternal, deg, deg * unit, rng, false);
      Y = koszul_object(Y, eta);
    }
    X = direct_sum(X, Y);
  }
  for (int k = 0; k < inflations; ++k) X = inflate(X, Bidegree{int(rng() % 4), int(rng() % 3) * unit});
  return random_conjugate(X, rng);
}

}  // namespace jumploci
