#pragma once

// Cohomological jump loci of a twisted complex X of rank r:
//   crk_p = r - 2 rank D(p),  V^i = V(I_t(D)) with t = floor((r - i) / 2) + 1.

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/quasipoly.hpp"
#include "jumploci/twisted.hpp"

namespace jumploci {

class RouteDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int minor_size_for(size_t r, int i) {
  int d = int(r) - i;
  int fl = d >= 0 ? d / 2 : -((-d + 1) / 2);
  return fl + 1;
}

/// I_t(D) for the t belonging to index i (X is minimalized first).
template <class Field>
Ideal<Field> jump_locus_ideal(const TwistedComplex<Field>& X, int i) {
  if (i < 0) throw std::invalid_argument("jump locus index must be nonnegative");
  if (i == 0) return Ideal<Field>::zero(X.S);
  auto Y = is_minimal(X) ? X : minimalize(X);
  int t = minor_size_for(Y.rank(), i);
  return Ideal<Field>(Y.S, blocked_minors_ideal(Y.S, block_parts(Y.D), t));
}

/// Fitting-ideal route: I_{r-i+1}(D (+) D) = sum_{u+v} I_u(D) I_v(D).
template <class Field>
Ideal<Field> jump_locus_via_exterior_power(const TwistedComplex<Field>& X, int i) {
  if (i < 0) throw std::invalid_argument("jump locus index must be nonnegative");
  if (i == 0) return Ideal<Field>::zero(X.S);
  auto Y = is_minimal(X) ? X : minimalize(X);
  int t = int(Y.rank()) - i + 1;
  auto parts = block_parts(Y.D);
  auto twice = parts;
  twice.insert(twice.end(), parts.begin(), parts.end());
  return Ideal<Field>(Y.S, blocked_minors_ideal(Y.S, twice, t));
}

/// Generic rank of D: a lower bound from random evaluations, then the exact
/// elimination over Frac(S) decides.
template <class Field>
size_t generic_rank_screened(const TwistedComplex<Field>& X, uint64_t seed, size_t* screened = nullptr) {
  std::mt19937_64 rng(seed);
  size_t best = 0;
  std::vector<typename Field::Scalar> pt(X.S->nvars());
  for (int k = 0; k < 5; ++k) {
    for (auto& v : pt) v = X.S->field().random(rng);
    best = std::max(best, X.D.evaluate(pt, X.S->field()).rank());
  }
  if (screened) *screened = best;
  size_t exact = generic_rank(X.D);
  if (exact < best) throw std::logic_error("generic rank below an observed specialization rank");
  return exact;
}

struct Plateau {
  int from = 0;
  std::optional<int> to;  // nullopt: all larger indices
  std::vector<std::string> ideal;
  int dim = 0;
};

struct DualityReport {
  std::vector<bool> perIndexEqual;  // index i = 1..
  bool bdegEqual = true;
  bool routesAgree = true;
  bool all_equal() const {
    return bdegEqual && std::all_of(perIndexEqual.begin(), perIndexEqual.end(), [](bool b) { return b; });
  }
};

/// Leading data of H(X) = E + O split by parity of the cohomological degree.
struct MultiplicityData {
  std::optional<long long> eEven;  // e(E) when dim E = cx
  std::optional<long long> eOdd;   // e(O) when dim O = cx
  bool balanced = false;           // e(E) = e(O), both defined
  /// 2 e(E) = generic crk; only decided when cx = c and balanced.
  std::optional<bool> plateauAgrees;
};

template <class Field>
struct JumpLociReport {
  size_t rank = 0;
  /// ideals[i] generates V^i for i = 0..rank+1; V^i = V^{rank+1} beyond.
  std::vector<Ideal<Field>> ideals;
  std::vector<int> jumpNumbers;
  std::vector<Plateau> loci;
  size_t crkGeneric = 0;
  int complexity = 0;
  /// e(E); left empty when cx = 0 or when e(E) != e(O), which cannot
  /// happen for the complex of a module.
  std::optional<long long> bettiDegree;
  std::optional<long long> bassDegree;
  MultiplicityData multiplicity;
  std::optional<DualityReport> duality;

  const Ideal<Field>& at(int i) const { return ideals[size_t(std::min<int>(i, int(ideals.size()) - 1))]; }
};

template <class Field>
MultiplicityData multiplicity_data(const TwistedComplex<Field>& X, const HomologyPresentation<Field>& H,
                                   size_t crkGeneric) {
  MultiplicityData m;
  int cx = H.krull_dimension();
  if (cx <= 0) return m;
  if (H.even.dimension == cx) m.eEven = H.even.multiplicity;
  if (H.odd.dimension == cx) m.eOdd = H.odd.multiplicity;
  m.balanced = m.eEven && m.eOdd && *m.eEven == *m.eOdd;
  if (m.balanced && size_t(cx) == X.S->nvars()) m.plateauAgrees = 2 * *m.eEven == (long long)crkGeneric;
  return m;
}

template <class Field>
int complexity_of(const TwistedComplex<Field>& X) {
  return std::max(0, homology_presentation(X).krull_dimension());
}

template <class Field>
JumpLociReport<Field> jump_loci_report(const TwistedComplex<Field>& X0, uint64_t seed = 0) {
  auto X = minimalize(X0);
  JumpLociReport<Field> rep;
  size_t r = X.rank();
  rep.rank = r;
  size_t rho = r ? generic_rank_screened(X, seed) : 0;
  rep.crkGeneric = r - 2 * rho;
  auto parts = block_parts(X.D);
  // I_t for t = 1..rho+1; I_t = 0 for t > rho.
  std::vector<Ideal<Field>> byT(rho + 2, Ideal<Field>::zero(X.S));
  for (size_t t = 1; t <= rho; ++t) byT[t] = Ideal<Field>(X.S, blocked_minors_ideal(X.S, parts, int(t)));
  for (int i = 0; i <= int(r) + 1; ++i) {
    int t = minor_size_for(r, i);
    if (i == 0 || t > int(rho)) rep.ideals.push_back(Ideal<Field>::zero(X.S));
    else if (t <= 0) rep.ideals.push_back(Ideal<Field>::unit(X.S));
    else rep.ideals.push_back(byT[size_t(t)]);
  }
  // plateaus
  int start = 0;
  for (int i = 1; i <= int(r) + 1; ++i) {
    const auto& prev = rep.ideals[size_t(i - 1)];
    const auto& cur = rep.ideals[size_t(i)];
    bool same = (prev.generators() == cur.generators()) || prev.variety_equal(cur);
    if (!same) {
      rep.jumpNumbers.push_back(i - 1);
      rep.loci.push_back({start, i - 1, prev.minimalized().to_strings(), prev.dimension()});
      start = i;
    }
  }
  const auto& last = rep.ideals.back();
  rep.loci.push_back({start, std::nullopt, last.is_unit() ? std::vector<std::string>{"1"} : last.minimalized().to_strings(),
                      last.dimension()});
  for (auto& p : rep.loci)
    if (p.dim == -1) p.ideal = {"1"};
  auto H = homology_presentation(X);
  rep.complexity = std::max(0, H.krull_dimension());
  int dimV1 = r ? rep.ideals[1].dimension() : -1;
  if (std::max(dimV1, 0) != rep.complexity)
    throw std::logic_error("dim V^1 (" + std::to_string(dimV1) + ") differs from dim Ext (" +
                           std::to_string(rep.complexity) + ")");
  rep.multiplicity = multiplicity_data(X, H, rep.crkGeneric);
  if (rep.multiplicity.balanced) rep.bettiDegree = rep.multiplicity.eEven;
  return rep;
}

/// Identities that hold for the complex of any module: e(E) = e(O) when
/// cx > 0 and, at maximal complexity, 2 bdeg = generic crk.
template <class Field>
void check_module_invariants(const JumpLociReport<Field>& rep) {
  if (rep.complexity == 0) return;
  const auto& m = rep.multiplicity;
  if (!m.balanced)
    throw std::logic_error("e(E) = " + (m.eEven ? std::to_string(*m.eEven) : std::string("undefined")) +
                           " differs from e(O) = " + (m.eOdd ? std::to_string(*m.eOdd) : std::string("undefined")));
  if (m.plateauAgrees && !*m.plateauAgrees)
    throw std::logic_error("2 bdeg differs from the generic cohomological rank");
}

/// jump_loci_report for the complex of a module, with check_module_invariants.
template <class Field>
JumpLociReport<Field> module_report(const TwistedComplex<Field>& X, uint64_t seed = 0) {
  auto rep = jump_loci_report(X, seed);
  check_module_invariants(rep);
  return rep;
}

/// bdeg via the plateau rule: half the largest i with V^i = Spec S; only
/// meaningful at maximal complexity.
template <class Field>
std::optional<long long> betti_degree_from_plateau(const JumpLociReport<Field>& rep) {
  if (rep.loci.empty() || !rep.loci.front().to || rep.loci.front().dim != int(rep.at(0).ring()->nvars()))
    return std::nullopt;
  if (rep.loci.front().ideal.size() != 0 || *rep.loci.front().to == 0) return std::nullopt;
  return *rep.loci.front().to / 2;
}

/// V^l(X (+) Y) = union_{i+j=l} V^i(X) cap V^j(Y) for all l.
template <class Field>
bool additivity_check(const TwistedComplex<Field>& X, const TwistedComplex<Field>& Y, uint64_t seed = 0) {
  auto rx = jump_loci_report(X, seed);
  auto ry = jump_loci_report(Y, seed);
  auto rs = jump_loci_report(direct_sum(X, Y), seed);
  int top = int(rs.rank) + 1;
  for (int l = 1; l <= top; ++l) {
    std::vector<Ideal<Field>> comps;
    for (int i = 0; i <= l; ++i) {
      auto K = rx.at(i) + ry.at(l - i);
      if (K.is_unit()) continue;
      comps.push_back(K);
    }
    // drop components contained in others
    std::vector<Ideal<Field>> kept;
    for (size_t a = 0; a < comps.size(); ++a) {
      bool inside = false;
      for (size_t b = 0; b < comps.size() && !inside; ++b) {
        if (a == b) continue;
        if (comps[a].variety_within(comps[b])) inside = b < a || !comps[b].variety_within(comps[a]);
      }
      if (!inside) kept.push_back(comps[a]);
    }
    const auto& V = rs.at(l);
    if (kept.empty()) {
      if (!V.is_unit()) return false;
      continue;
    }
    for (auto& K : kept)
      if (!K.variety_within(V)) return false;
    Ideal<Field> prod = kept[0];
    for (size_t k = 1; k < kept.size(); ++k) prod = (prod * kept[k]).minimalized();
    if (!V.variety_within(prod)) return false;
  }
  return true;
}

template <class Field>
bool reports_variety_equal(const JumpLociReport<Field>& a, const JumpLociReport<Field>& b) {
  int top = int(std::max(a.rank, b.rank)) + 1;
  for (int i = 0; i <= top; ++i)
    if (!a.at(i).variety_equal(b.at(i))) return false;
  return true;
}

/// Compares X(M) with X(M*) built along the explicit route, and the explicit
/// route with the S-dual of X(M). Throws RouteDisagreement if the two routes
/// to X(M*) produce different loci.
template <class Field>
DualityReport duality_check(const RingData<Field>& R, const ModuleInput<Field>& in, uint64_t seed = 0,
                            JumpLociReport<Field>* primal = nullptr, JumpLociReport<Field>* dual = nullptr) {
  auto X = twisted_complex_for(R, in);
  auto Xs = explicit_dual_complex(R, in);
  auto rm = module_report(X, seed);
  auto rd = module_report(Xs, seed);
  auto rf = module_report(s_dual(X), seed);
  DualityReport out;
  int top = int(std::max(rm.rank, rd.rank)) + 1;
  for (int i = 1; i <= top; ++i) out.perIndexEqual.push_back(rm.at(i).variety_equal(rd.at(i)));
  out.bdegEqual = rm.bettiDegree == rd.bettiDegree;
  out.routesAgree = reports_variety_equal(rd, rf) && rd.bettiDegree == rf.bettiDegree;
  if (primal) *primal = rm;
  if (dual) *dual = rd;
  if (!out.routesAgree) throw RouteDisagreement("S-dual and explicit dual routes give different jump loci");
  return out;
}

/// Bass degree: Betti degree of M*.
template <class Field>
std::optional<long long> bass_degree(const RingData<Field>& R, const ModuleInput<Field>& in, uint64_t seed = 0) {
  return module_report(explicit_dual_complex(R, in), seed).bettiDegree;
}

// ---------------------------------------------------------------------------
// Realizability.

template <class Field>
struct Realization {
  TwistedComplex<Field> X;
  /// ends[k]: last index of the plateau on which V^j = W_k (k = 0..t-1).
  std::vector<int> ends;
  JumpLociReport<Field> report;
  bool verified = false;
};

/// Sum over k = 1..t-1 of Kos(eta^k) (x) (free rank-2^nu model with D = 0),
/// where W_k = V(eta^k). V^j = W_k for sum_{l<k} 2^{nu+n_l} < j <= sum_{l<=k}.
template <class Field>
Realization<Field> realize(RingPtr<Field> S, std::vector<int> chiInternal, const std::vector<Ideal<Field>>& chain,
                           int nu, uint64_t seed = 0) {
  if (chain.size() < 2) throw std::invalid_argument("a chain needs at least Spec S and the empty set");
  if (!chain.front().is_zero()) throw std::invalid_argument("the chain must start with Spec S (the zero ideal)");
  if (!chain.back().is_unit()) throw std::invalid_argument("the chain must end with the empty set (the unit ideal)");
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    bool within = chain[k + 1].variety_within(chain[k]);
    bool back = chain[k].variety_within(chain[k + 1]);
    if (!within || back)
      throw std::invalid_argument("chain is not strictly descending at position " + std::to_string(k + 1));
  }
  if (nu < 0 || nu > 12) throw std::invalid_argument("nu must lie in 0..12");
  std::vector<Bidegree> ext;
  for (uint32_t s = 0; s < (1u << nu); ++s) ext.push_back({std::popcount(s), std::popcount(s)});
  Realization<Field> out;
  out.X = zero_complex(S, chiInternal);
  out.ends.push_back(0);
  int acc = 0;
  for (size_t k = 1; k + 1 < chain.size(); ++k) {
    auto piece = koszul_object(free_complex(S, chiInternal, ext), chain[k].generators());
    acc += int(piece.rank());
    out.ends.push_back(acc);
    out.X = direct_sum(out.X, piece);
  }
  out.report = jump_loci_report(out.X, seed);
  bool ok = true;
  for (size_t k = 0; k + 1 < chain.size() && ok; ++k) {
    int lo = k == 0 ? 0 : out.ends[k - 1] + 1;
    for (int j = lo; j <= out.ends[k] && ok; ++j) ok = out.report.at(j).variety_equal(chain[k]);
  }
  ok = ok && out.report.at(acc + 1).variety_equal(chain.back());
  out.verified = ok;
  return out;
}

// ---------------------------------------------------------------------------
// Point oracle over the hypersurface A / (sum a_i f_i).

struct OracleResult {
  std::optional<size_t> value;  // nullopt: tail not stable by the cap
  int truncation = 0;
  std::vector<size_t> betti;
};

/// Resolves M over A/(g), g = sum a_i f_i, and returns beta_{N-1} + beta_N
/// once the last four Betti numbers agree. The f_i must share one degree.
template <class Field>
OracleResult stable_betti_oracle(const RingData<Field>& R, const PolyMatrix<Field>& presentation,
                                 std::span<const typename Field::Scalar> a, int cap = 40) {
  if (a.size() != R.c()) throw std::invalid_argument("point has the wrong number of coordinates");
  for (size_t i = 1; i < R.c(); ++i)
    if (R.fdeg[i] != R.fdeg[0]) throw std::invalid_argument("the point oracle needs f_i of equal degree");
  Poly<Field> g = R.A->zero();
  for (size_t i = 0; i < R.c(); ++i) g += R.f[i].scaled(a[i]);
  if (g.is_zero()) throw std::invalid_argument("sum a_i f_i vanishes");
  OracleResult out;
  for (int N : {12, 24, cap}) {
    if (N > cap) continue;
    auto F = minimal_resolution(*R.A, presentation, internal_degrees(presentation.rowDegrees()), {g}, N);
    out.truncation = N;
    out.betti = F.betti();
    while (out.betti.size() < size_t(N) + 1) out.betti.push_back(0);
    size_t n = out.betti.size();
    if (out.betti[n - 1] == out.betti[n - 3] && out.betti[n - 2] == out.betti[n - 4] &&
        out.betti[n - 1] == out.betti[n - 2]) {
      out.value = out.betti[n - 1] + out.betti[n - 2];
      return out;
    }
    if (N == cap) break;
  }
  return out;
}

}  // namespace jumploci
