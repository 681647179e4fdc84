#pragma once

// Systems of higher homotopies {sigma_J} for f on a finite A-free complex F.
// Convention: with sigma_0 := d,
//   sum_{J' + J'' = J} sigma_{J'} sigma_{J''} = f_i * id  if J = e_i,
//                                             = 0         if |J| >= 2,
// and sigma_J maps F_t to F_{t + 2|J| - 1} with internal degree
// sum_i J_i deg f_i.

#include <bit>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/resolution.hpp"

namespace jumploci {

using MultiIndex = std::vector<int>;

inline int weight(const MultiIndex& J) {
  int s = 0;
  for (int j : J) s += j;
  return s;
}

/// All multi-indices of length c with |J| = n, in lexicographically
/// decreasing order (so e_1 comes first).
inline std::vector<MultiIndex> multi_indices(size_t c, int n) {
  std::vector<MultiIndex> out;
  MultiIndex J(c, 0);
  auto rec = [&](auto&& self, size_t pos, int left) -> void {
    if (pos + 1 == c) {
      J[pos] = left;
      out.push_back(J);
      return;
    }
    for (int v = left; v >= 0; --v) {
      J[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (c == 0) return out;
  rec(rec, 0, n);
  return out;
}

inline MultiIndex unit_index(size_t c, size_t i) {
  MultiIndex J(c, 0);
  J[i] = 1;
  return J;
}

/// All J'' with 0 < J'' < J componentwise (J'' != J).
inline std::vector<MultiIndex> proper_parts(const MultiIndex& J) {
  std::vector<MultiIndex> out;
  MultiIndex K(J.size(), 0);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == J.size()) {
      int w = weight(K);
      if (w > 0 && w < weight(J)) out.push_back(K);
      return;
    }
    for (int v = 0; v <= J[pos]; ++v) {
      K[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

class DgStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotRegularSequence : public std::invalid_argument {
 public:
  NotRegularSequence()
      : std::invalid_argument(
            "f is not a regular sequence; supply an explicit complex with dg actions (`complex ... action ...`)") {}
};

template <class Field>
struct HomotopySystem {
  FreeComplex<Field> F;
  size_t c = 0;
  /// sigma[J][t] : F_t -> F_{t+2|J|-1}, present for t + 2|J| - 1 <= length.
  std::map<MultiIndex, std::vector<PolyMatrix<Field>>> sigma;
  bool strict = false;

  /// Pointer to sigma_J on F_t, or nullptr when it is zero by range or absent.
  const PolyMatrix<Field>* get(const MultiIndex& J, size_t t) const {
    if (weight(J) == 0) return (t >= 1 && t < F.d.size()) ? &F.d[t] : nullptr;
    auto it = sigma.find(J);
    if (it == sigma.end() || t >= it->second.size()) return nullptr;
    return &it->second[t];
  }
};

namespace detail {

/// sigma_J target degree for source t, or -1 when out of range.
inline long target_of(const MultiIndex& J, long t) { return weight(J) == 0 ? t - 1 : t + 2 * weight(J) - 1; }

template <class Field>
PolyMatrix<Field> zero_map(const PolyRing<Field>& ring, const FreeComplex<Field>& F, size_t from, size_t to) {
  return PolyMatrix<Field>(ring.tag(), bidegrees(int(to), F.degrees[to]), bidegrees(int(from), F.degrees[from]));
}

/// Left-hand side of the relation for J on F_t, target F_{t + 2|J| - 2}:
/// sum over J' + J'' = J (including J' or J'' = 0) of sigma_{J'} sigma_{J''},
/// minus f_i id when J = e_i. Zero matrix when all terms vanish.
template <class Field>
PolyMatrix<Field> relation(const RingData<Field>& R, const HomotopySystem<Field>& sys, const MultiIndex& J, size_t t) {
  const auto& F = sys.F;
  size_t tgt = t + 2 * size_t(weight(J)) - 2;
  auto out = zero_map(*R.A, F, t, tgt);
  auto parts = proper_parts(J);
  parts.push_back(MultiIndex(J.size(), 0));
  parts.push_back(J);
  for (auto& J2 : parts) {
    MultiIndex J1(J.size());
    for (size_t k = 0; k < J.size(); ++k) J1[k] = J[k] - J2[k];
    long mid = target_of(J2, long(t));
    if (mid < 0 || size_t(mid) >= F.degrees.size()) continue;
    auto* b = sys.get(J2, t);
    auto* a = sys.get(J1, size_t(mid));
    if (!a || !b) continue;
    out = out + (*a) * (*b);
  }
  if (weight(J) == 1) {
    for (size_t i = 0; i < J.size(); ++i)
      if (J[i] == 1)
        for (size_t r = 0; r < F.rank(t); ++r) out(r, r) -= R.f[i];
  }
  return out;
}

}  // namespace detail

/// Exact verification of every relation (and of d d = 0). Returns an empty
/// string when all hold, else a description of the first failure.
template <class Field>
std::string verify_system(const RingData<Field>& R, const HomotopySystem<Field>& sys) {
  const auto& F = sys.F;
  if (!dd_zero(*R.A, F)) return "d o d != 0";
  size_t L = F.length();
  for (int n = 1; 2 * n - 2 <= int(L); ++n)
    for (auto& J : multi_indices(sys.c, n))
      for (size_t t = 0; t + 2 * size_t(n) - 2 <= L; ++t) {
        auto m = detail::relation(R, sys, J, t);
        if (!m.is_zero()) {
          std::ostringstream os;
          os << "relation for J = (";
          for (size_t k = 0; k < J.size(); ++k) os << (k ? "," : "") << J[k];
          os << ") fails on F_" << t;
          return os.str();
        }
      }
  return "";
}

/// Homotopies on a finite A-free resolution F of a module annihilated by f,
/// for a regular sequence f. Each sigma_J^{(t)} is obtained by lifting the
/// relation's remainder through d_{t+2|J|-1}.
template <class Field>
HomotopySystem<Field> compute_higher_homotopies(const RingData<Field>& R, const FreeResolution<Field>& F) {
  if (F.overB) throw std::invalid_argument("higher homotopies need a resolution over A");
  if (!is_regular_sequence(R)) throw NotRegularSequence();
  if (F.rank(0) > 0) {
    std::vector<int> rowDeg = F.degrees[0];
    PolyMatrix<Field> d1 = F.length() >= 1 ? F.d[1] : PolyMatrix<Field>(R.A->tag(), bidegrees(0, rowDeg), {});
    int bad = first_non_annihilating(R, d1, rowDeg);
    if (bad >= 0)
      throw std::invalid_argument("f" + std::to_string(bad + 1) + " does not annihilate the module");
  }
  HomotopySystem<Field> sys;
  sys.F = F;
  sys.c = R.c();
  size_t L = F.length();
  std::vector<std::unique_ptr<ImageBasis<Field>>> images(L + 1);
  auto image = [&](size_t j) -> ImageBasis<Field>& {
    if (!images[j])
      images[j] = std::make_unique<ImageBasis<Field>>(*R.A, F.d[j], F.degrees[j - 1], F.degrees[j], 1,
                                                      std::vector<Poly<Field>>{}, true);
    return *images[j];
  };
  for (int n = 1; 2 * n - 1 <= int(L); ++n) {
    size_t s = 2 * size_t(n) - 1;
    for (auto& J : multi_indices(R.c(), n)) {
      int intdeg = 0;
      for (size_t i = 0; i < J.size(); ++i) intdeg += J[i] * R.fdeg[i];
      auto& list = sys.sigma[J];
      for (size_t t = 0; t + s <= L; ++t) {
        // sigma_J^{(t)} is still missing from the system, so relation() gives
        // everything except the d sigma_J term; negate it.
        auto rhs = -detail::relation(R, sys, J, t);
        PolyMatrix<Field> X(R.A->tag(), bidegrees(int(t + s), F.degrees[t + s]), bidegrees(int(t), F.degrees[t]));
        if (!rhs.is_zero()) {
          auto& ib = image(t + s);
          for (size_t col = 0; col < rhs.cols(); ++col) {
            Vec<Field> v = column_to_vec(rhs, col, 0);
            if (v.empty()) continue;
            Vec<Field> coeffs;
            if (!ib.lift(v, coeffs)) throw std::logic_error("homotopy obstruction is not a boundary");
            vec_to_column(coeffs, X, col, 0);
          }
        }
        for (size_t a = 0; a < X.rows(); ++a)
          for (size_t b = 0; b < X.cols(); ++b)
            if (!X(a, b).is_zero() && X(a, b).degree_in(R.A->weights()) != F.degrees[t][b] + intdeg - F.degrees[t + s][a])
              throw std::logic_error("homotopy entry has the wrong degree");
        list.push_back(std::move(X));
      }
    }
  }
  auto err = verify_system(R, sys);
  if (!err.empty()) throw std::logic_error("constructed homotopy system is invalid: " + err);
  return sys;
}

namespace detail {

/// Internal degrees of F_1..F_L from the differentials, falling back to the
/// actions for zero columns.
template <class Field>
std::vector<std::vector<int>> infer_degrees(const RingData<Field>& R, const ModuleInput<Field>& in) {
  const auto& w = R.A->weights();
  size_t L = in.differentials.size();
  std::vector<std::vector<int>> deg(L + 1);
  size_t r0 = L ? in.differentials[0].rows() : (in.baseDegrees.size());
  deg[0] = in.baseDegrees.empty() ? std::vector<int>(r0, 0) : in.baseDegrees;
  if (deg[0].size() != r0) throw std::invalid_argument("wrong number of base degrees");
  for (size_t t = 1; t <= L; ++t) {
    const auto& d = in.differentials[t - 1];
    if (d.rows() != deg[t - 1].size())
      throw std::invalid_argument("d" + std::to_string(t) + " has " + std::to_string(d.rows()) + " rows, expected " +
                                  std::to_string(deg[t - 1].size()));
    for (size_t j = 0; j < d.cols(); ++j) {
      std::optional<int> g = column_degree(d, j, deg[t - 1], w);
      for (size_t i = 0; i < in.actions.size() && !g; ++i) {
        const auto& e = in.actions[i][t - 1];
        for (size_t q = 0; q < e.cols() && !g; ++q)
          if (!e(j, q).is_zero()) g = deg[t - 1][q] + R.fdeg[i] - e(j, q).degree_in(w);
      }
      if (!g) throw std::invalid_argument("cannot infer the degree of generator " + std::to_string(j + 1) + " of F_" +
                                          std::to_string(t));
      deg[t].push_back(*g);
    }
  }
  return deg;
}

inline std::string position(size_t r, size_t c) {
  return "(" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")";
}

template <class Field>
std::string first_nonzero(const PolyMatrix<Field>& m, const PolyRing<Field>& ring) {
  for (size_t a = 0; a < m.rows(); ++a)
    for (size_t b = 0; b < m.cols(); ++b)
      if (!m(a, b).is_zero()) return "entry " + position(a, b) + " is " + to_string(m(a, b), ring);
  return "";
}

}  // namespace detail

/// Builds the explicit complex of an input and checks d d = 0.
template <class Field>
FreeComplex<Field> complex_of(const RingData<Field>& R, const ModuleInput<Field>& in) {
  FreeComplex<Field> F;
  F.degrees = detail::infer_degrees(R, in);
  F.d.emplace_back();
  for (size_t t = 1; t <= in.differentials.size(); ++t) {
    auto m = in.differentials[t - 1];
    m.setRowDegrees(bidegrees(int(t) - 1, F.degrees[t - 1]));
    m.setColDegrees(bidegrees(int(t), F.degrees[t]));
    F.d.push_back(std::move(m));
  }
  for (size_t t = 2; t < F.d.size(); ++t) {
    auto p = F.d[t - 1] * F.d[t];
    if (!p.is_zero())
      throw DgStructureError("d" + std::to_string(t - 1) + " d" + std::to_string(t) + " != 0: " +
                             detail::first_nonzero(p, *R.A));
  }
  F.minimal = is_minimal(F);
  return F;
}

/// Validates user dg actions (e_i e_j + e_j e_i = 0 for all i <= j and
/// d e_i + e_i d = f_i id) and returns them as a strict system.
template <class Field>
HomotopySystem<Field> ingest_dg_structure(const RingData<Field>& R, const ModuleInput<Field>& in) {
  if (in.actions.size() != R.c())
    throw DgStructureError("expected " + std::to_string(R.c()) + " actions, got " + std::to_string(in.actions.size()));
  HomotopySystem<Field> sys;
  sys.F = complex_of(R, in);
  sys.c = R.c();
  sys.strict = true;
  const auto& F = sys.F;
  size_t L = F.length();
  const auto& w = R.A->weights();
  for (size_t i = 0; i < R.c(); ++i) {
    std::string name = "e" + std::to_string(i + 1);
    if (in.actions[i].size() != L)
      throw DgStructureError(name + " needs " + std::to_string(L) + " matrices, got " +
                             std::to_string(in.actions[i].size()));
    auto& list = sys.sigma[unit_index(R.c(), i)];
    for (size_t t = 0; t < L; ++t) {
      auto e = in.actions[i][t];
      if (e.rows() != F.rank(t + 1) || e.cols() != F.rank(t))
        throw DgStructureError(name + " on F_" + std::to_string(t) + " must be " + std::to_string(F.rank(t + 1)) + "x" +
                               std::to_string(F.rank(t)));
      for (size_t a = 0; a < e.rows(); ++a)
        for (size_t b = 0; b < e.cols(); ++b) {
          const auto& x = e(a, b);
          if (x.is_zero()) continue;
          if (!x.is_homogeneous(w) || x.degree_in(w) != F.degrees[t][b] + R.fdeg[i] - F.degrees[t + 1][a])
            throw DgStructureError(name + " on F_" + std::to_string(t) + ": entry " + detail::position(a, b) +
                                   " has the wrong degree");
        }
      e.setRowDegrees(bidegrees(int(t) + 1, F.degrees[t + 1]));
      e.setColDegrees(bidegrees(int(t), F.degrees[t]));
      list.push_back(std::move(e));
    }
  }
  for (size_t i = 0; i < R.c(); ++i) {
    MultiIndex J = unit_index(R.c(), i);
    for (size_t t = 0; t <= L; ++t) {
      auto m = detail::relation(R, sys, J, t);
      if (!m.is_zero())
        throw DgStructureError("d e" + std::to_string(i + 1) + " + e" + std::to_string(i + 1) + " d != f" +
                               std::to_string(i + 1) + " on F_" + std::to_string(t) + ": " +
                               detail::first_nonzero(m, *R.A));
    }
    for (size_t j = i; j < R.c(); ++j)
      for (size_t t = 0; t + 2 <= L; ++t) {
        const auto& ei = sys.sigma.at(unit_index(R.c(), i));
        const auto& ej = sys.sigma.at(unit_index(R.c(), j));
        auto m = ei[t + 1] * ej[t] + ej[t + 1] * ei[t];
        if (!m.is_zero())
          throw DgStructureError("e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) + " + e" +
                                 std::to_string(j + 1) + " e" + std::to_string(i + 1) + " != 0 on F_" +
                                 std::to_string(t) + ": " + detail::first_nonzero(m, *R.A));
      }
  }
  return sys;
}

/// Transport to Hom_A(F, A): sigma^G_J on G_j is (sigma_J on F_{L-j-s})^T.
/// Plain transposes satisfy the same relations because the relation is
/// symmetric in the order of the two factors; applying this twice returns
/// the original matrices.
template <class Field>
HomotopySystem<Field> dualize_homotopies(const RingData<Field>& R, const HomotopySystem<Field>& sys) {
  HomotopySystem<Field> out;
  out.F = dualize_over_A(sys.F, R.c()).G;
  out.c = sys.c;
  out.strict = sys.strict;
  size_t L = sys.F.length();
  for (auto& [J, list] : sys.sigma) {
    size_t s = 2 * size_t(weight(J)) - 1;
    auto& dst = out.sigma[J];
    for (size_t j = 0; j + s <= L; ++j) {
      auto m = list[L - j - s].transpose();
      m.setRowDegrees(bidegrees(int(j + s), out.F.degrees[j + s]));
      m.setColDegrees(bidegrees(int(j), out.F.degrees[j]));
      dst.push_back(std::move(m));
    }
  }
  auto err = verify_system(R, out);
  if (!err.empty()) throw std::logic_error("dualized homotopy system is invalid: " + err);
  return out;
}

/// The Koszul complex K^A on x_1..x_n with e_i acting as sum_j a_ij e'_j,
/// where f_i = sum_j a_ij x_j assigns each term of f_i to its smallest
/// variable.
template <class Field>
ModuleInput<Field> koszul_input(const RingData<Field>& R) {
  const auto& A = *R.A;
  size_t n = A.nvars();
  if (n > 12) throw std::invalid_argument("Koszul complex limited to 12 variables");
  std::vector<std::vector<uint32_t>> byRank(n + 1);
  for (uint32_t S = 0; S < (1u << n); ++S) byRank[size_t(std::popcount(S))].push_back(S);
  std::vector<std::map<uint32_t, size_t>> index(n + 1);
  for (size_t k = 0; k <= n; ++k)
    for (size_t a = 0; a < byRank[k].size(); ++a) index[k][byRank[k][a]] = a;
  auto sign_before = [](uint32_t S, size_t j) { return std::popcount(S & ((1u << j) - 1)) % 2 == 1; };

  ModuleInput<Field> in;
  in.koszul = true;
  in.baseDegrees = {0};
  for (size_t k = 1; k <= n; ++k) {
    PolyMatrix<Field> d(A.tag(), byRank[k - 1].size(), byRank[k].size());
    for (size_t col = 0; col < byRank[k].size(); ++col) {
      uint32_t S = byRank[k][col];
      for (size_t j = 0; j < n; ++j)
        if (S & (1u << j)) {
          auto x = A.var(j);
          d(index[k - 1][S & ~(1u << j)], col) = sign_before(S, j) ? -x : x;
        }
    }
    in.differentials.push_back(std::move(d));
  }
  for (size_t i = 0; i < R.c(); ++i) {
    std::vector<std::vector<PolyTerm<Field>>> parts(n);
    for (auto& t : R.f[i].terms()) {
      size_t j = 0;
      while (t.mono.exp[j] == 0) ++j;
      Monomial m = t.mono;
      m.exp[j] -= 1;
      m.deg -= A.weights()[j];
      parts[j].push_back({m, t.coef});
    }
    std::vector<Poly<Field>> a;
    for (auto& p : parts) a.push_back(Poly<Field>::from_terms(A.tag(), p));
    std::vector<PolyMatrix<Field>> list;
    for (size_t k = 0; k < n; ++k) {
      PolyMatrix<Field> e(A.tag(), byRank[k + 1].size(), byRank[k].size());
      for (size_t col = 0; col < byRank[k].size(); ++col) {
        uint32_t S = byRank[k][col];
        for (size_t j = 0; j < n; ++j)
          if (!(S & (1u << j)) && !a[j].is_zero())
            e(index[k + 1][S | (1u << j)], col) = sign_before(S, j) ? -a[j] : a[j];
      }
      list.push_back(std::move(e));
    }
    in.actions.push_back(std::move(list));
  }
  return in;
}

}  // namespace jumploci
