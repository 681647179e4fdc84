#pragma once

// Hilbert series of monomial quotients and of cokernels of graded module
// presentations, read off from Groebner lead terms.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "jumploci/groebner.hpp"

namespace jumploci {

/// Laurent polynomial in t with integer coefficients, keyed by exponent.
using Laurent = std::map<int, long long>;

inline void laurent_add(Laurent& a, const Laurent& b, int shift = 0, long long scale = 1) {
  for (auto& [e, c] : b) {
    long long& slot = a[e + shift];
    slot += scale * c;
    if (slot == 0) a.erase(e + shift);
  }
}

inline long long laurent_at_one(const Laurent& a) {
  long long s = 0;
  for (auto& [e, c] : a) s += c;
  return s;
}

namespace detail {

inline void minimalize(std::vector<Monomial>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
  std::vector<Monomial> out;
  for (auto& g : gens) {
    bool redundant = false;
    for (auto& h : out)
      if (divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  gens = std::move(out);
}

inline bool pure_power(const Monomial& m) {
  int nz = 0;
  for (auto e : m.exp) nz += e > 0;
  return nz <= 1;
}

// K(I) = K(I + (x_i)) + t^{w_i} K(I : x_i), pivoting on a variable of a
// generator that is not a pure power. The base case is an ideal generated by
// pure powers, whose numerator is a product.
inline Laurent numerator(std::vector<Monomial> gens, std::span<const int> weights) {
  minimalize(gens);
  int pivotGen = -1;
  for (size_t g = 0; g < gens.size(); ++g)
    if (!pure_power(gens[g])) {
      pivotGen = int(g);
      break;
    }
  if (pivotGen < 0) {
    Laurent k{{0, 1}};
    for (auto& g : gens) {
      Laurent next = k;
      laurent_add(next, k, g.deg, -1);
      k = std::move(next);
    }
    return k;
  }
  std::vector<int> count(weights.size(), 0);
  for (auto& g : gens)
    if (!pure_power(g))
      for (size_t i = 0; i < weights.size(); ++i) count[i] += g.exp[i] > 0;
  size_t var = 0;
  for (size_t i = 0; i < weights.size(); ++i)
    if (gens[size_t(pivotGen)].exp[i] > 0 && (gens[size_t(pivotGen)].exp[var] == 0 || count[i] > count[var]))
      var = i;
  Monomial x = Monomial::variable(int(var), weights[var]);

  std::vector<Monomial> plus;
  plus.push_back(x);
  for (auto& g : gens)
    if (g.exp[var] == 0) plus.push_back(g);

  std::vector<Monomial> colon;
  for (auto g : gens) {
    if (g.exp[var] > 0) {
      g.exp[var] -= 1;
      g.deg -= weights[var];
    }
    colon.push_back(g);
  }
  Laurent k = numerator(std::move(plus), weights);
  laurent_add(k, numerator(std::move(colon), weights), weights[var]);
  return k;
}

}  // namespace detail

/// Numerator K with HS(S/I) = K(t) / prod(1 - t^{w_i}).
inline Laurent hilbert_numerator(std::vector<Monomial> gens, std::span<const int> weights) {
  for (auto& g : gens)
    if (g.is_one()) return {};
  return detail::numerator(std::move(gens), weights);
}

struct HilbertData {
  Laurent numerator;
  int nvars = 0;
  std::vector<int> weights;
  int dimension = -1;                   // -1 for the zero module
  std::optional<long long> multiplicity;  // only for standard grading

  bool zero_module() const { return dimension < 0; }

  /// Value of the Hilbert function in degree d.
  long long at(int d) const {
    if (numerator.empty()) return 0;
    // series of 1/prod(1 - t^w) up to degree d - lowest exponent
    int lo = numerator.begin()->first;
    int top = d - lo;
    if (top < 0) return 0;
    std::vector<long long> ser(size_t(top) + 1, 0);
    ser[0] = 1;
    for (int w : weights)
      for (int e = w; e <= top; ++e) ser[size_t(e)] += ser[size_t(e - w)];
    long long v = 0;
    for (auto& [e, c] : numerator)
      if (d - e >= 0 && d - e <= top) v += c * ser[size_t(d - e)];
    return v;
  }
};

inline HilbertData hilbert_from_numerator(Laurent k, std::vector<int> weights) {
  HilbertData h;
  h.nvars = int(weights.size());
  h.weights = weights;
  h.numerator = k;
  if (k.empty()) return h;
  int order = 0;
  Laurent q = std::move(k);
  while (!q.empty() && laurent_at_one(q) == 0) {
    // q = (1 - t) * q', q'_j = sum_{i <= j} q_i
    Laurent next;
    long long run = 0;
    int lo = q.begin()->first, hi = q.rbegin()->first;
    for (int e = lo; e < hi; ++e) {
      auto it = q.find(e);
      if (it != q.end()) run += it->second;
      if (run != 0) next[e] = run;
    }
    q = std::move(next);
    ++order;
  }
  h.dimension = h.nvars - order;
  if (std::all_of(weights.begin(), weights.end(), [](int w) { return w == 1; }))
    h.multiplicity = laurent_at_one(q);
  return h;
}

/// Hilbert data of a monomial quotient S/I.
inline HilbertData hilbert_of_monomials(std::vector<Monomial> gens, const std::vector<int>& weights) {
  return hilbert_from_numerator(hilbert_numerator(std::move(gens), weights), weights);
}

/// Hilbert data of the quotient of a free module by a submodule, from the
/// lead terms of a Groebner basis. `shifts` are the generator degrees in the
/// grading where variable i has weight weights[i].
template <class Field>
HilbertData hilbert_of_quotient(const GroebnerEngine<Field>& gb, const std::vector<int>& shifts,
                                const std::vector<int>& weights) {
  std::vector<std::vector<Monomial>> leads(shifts.size());
  for (auto& e : gb.elements())
    if (!e.redundant) leads[size_t(e.v.front().comp)].push_back(e.v.front().mono);
  Laurent total;
  for (size_t c = 0; c < shifts.size(); ++c) laurent_add(total, hilbert_numerator(leads[c], weights), shifts[c]);
  return hilbert_from_numerator(std::move(total), weights);
}

/// Hilbert data of coker(P) for a presentation over a polynomial ring (all
/// variables weight 1 in the returned grading). `rowShift` uses the same
/// units as the module order (weightFactor per variable); `regrade` maps
/// them to the standard grading.
template <class Field>
HilbertData hilbert_of_cokernel(const PolyRing<Field>& ring, const PolyMatrix<Field>& pres,
                                const std::vector<int>& rowShift, const std::vector<int>& colShift,
                                int weightFactor, const std::vector<int>& regradedRowShift) {
  ImageBasis<Field> ib(ring, pres, rowShift, colShift, weightFactor, {}, false);
  return hilbert_of_quotient(ib.engine(), regradedRowShift, ring.weights());
}

}  // namespace jumploci
