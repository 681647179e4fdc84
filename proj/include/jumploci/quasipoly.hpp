#pragma once

// Even/odd polynomial fits to the tail of a Betti sequence.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace jumploci {

/// Polynomial with rational coefficients, coeffs[k] of t^k; empty = zero.
struct RationalPoly {
  std::vector<mpq_class> coeffs;

  int degree() const { return int(coeffs.size()) - 1; }
  mpq_class operator()(const mpq_class& t) const {
    mpq_class v = 0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k];
    return v;
  }
  mpq_class leading() const { return coeffs.empty() ? mpq_class(0) : coeffs.back(); }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  std::string to_string(const std::string& var = "i") const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (size_t k = coeffs.size(); k-- > 0;) {
      const mpq_class& c = coeffs[k];
      if (c == 0) continue;
      mpq_class a = abs(c);
      if (out.empty()) out += c < 0 ? "-" : "";
      else out += c < 0 ? " - " : " + ";
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (k == 0) out += a.get_str();
      else if (a == 1) out += mono;
      else out += a.get_str() + "*" + mono;
    }
    return out;
  }
};

struct QuasiPoly {
  RationalPoly even;
  RationalPoly odd;
  /// Smallest index from which both polynomials reproduce the sequence.
  int validFrom = 0;

  int degree() const { return std::max(even.degree(), odd.degree()); }
  /// Complexity: degree + 1, and 0 for an eventually zero sequence.
  int complexity() const { return degree() + 1; }
  mpq_class at(int i) const { return i % 2 == 0 ? even(i) : odd(i); }
};

namespace detail {

/// Lagrange interpolation through (t_k, v_k); exact.
inline RationalPoly interpolate(const std::vector<int>& ts, const std::vector<mpq_class>& vs) {
  size_t n = ts.size();
  std::vector<mpq_class> acc(n, 0);
  for (size_t i = 0; i < n; ++i) {
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * ts[j];
      }
      basis = std::move(next);
      denom *= ts[i] - ts[j];
    }
    for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * vs[i] / denom;
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return RationalPoly{acc};
}

/// Lowest-degree polynomial through all points (ts, vs), using at least one
/// extra point as a check. nullopt when none of degree <= maxDeg fits.
inline std::optional<RationalPoly> fit_points(const std::vector<int>& ts, const std::vector<mpq_class>& vs,
                                              int maxDeg) {
  for (int d = 0; d <= maxDeg && size_t(d) + 2 <= ts.size(); ++d) {
    std::vector<int> t0(ts.begin(), ts.begin() + d + 1);
    std::vector<mpq_class> v0(vs.begin(), vs.begin() + d + 1);
    RationalPoly q = interpolate(t0, v0);
    bool ok = true;
    for (size_t k = 0; k < ts.size() && ok; ++k) ok = q(ts[k]) == vs[k];
    if (ok) return q;
  }
  return std::nullopt;
}

}  // namespace detail

/// Fits even- and odd-indexed subsequences of the last `window` entries of
/// beta. nullopt means the tail is not yet quasi-polynomial of the admissible
/// degree (increase N).
inline std::optional<QuasiPoly> fit_quasi_polynomial(const std::vector<size_t>& beta, int window, int maxDeg = 8) {
  if (window < 4 || size_t(window) > beta.size()) return std::nullopt;
  int start = int(beta.size()) - window;
  std::vector<int> te, to;
  std::vector<mpq_class> ve, vo;
  for (int i = start; i < int(beta.size()); ++i) {
    (i % 2 == 0 ? te : to).push_back(i);
    (i % 2 == 0 ? ve : vo).push_back(mpq_class(static_cast<unsigned long>(beta[size_t(i)])));
  }
  auto qe = detail::fit_points(te, ve, maxDeg);
  auto qo = detail::fit_points(to, vo, maxDeg);
  if (!qe || !qo) return std::nullopt;
  if (qe->degree() != qo->degree() || qe->leading() != qo->leading()) return std::nullopt;
  QuasiPoly q{*qe, *qo, start};
  while (q.validFrom > 0 && q.at(q.validFrom - 1) == mpq_class(static_cast<unsigned long>(beta[size_t(q.validFrom - 1)])))
    --q.validFrom;
  return q;
}

/// Betti degree 2^n n! a for leading coefficient a of degree n; nullopt for
/// complexity 0.
inline std::optional<mpq_class> betti_degree_of(const QuasiPoly& q) {
  int n = q.degree();
  if (n < 0) return std::nullopt;
  mpq_class f = 1;
  for (int k = 1; k <= n; ++k) f *= 2 * k;
  return f * q.even.leading();
}

}  // namespace jumploci
