#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace jumploci {

inline constexpr int kMaxVars = 14;

/// Exponent vector with its weighted degree cached. Variables beyond the
/// arity of the owning ring are always zero, so comparisons and divisibility
/// tests can run over the full array.
struct Monomial {
  std::array<uint16_t, kMaxVars> exp{};
  int32_t deg = 0;

  static Monomial from_exponents(std::span<const int> e, std::span<const int> weights) {
    if (e.size() > size_t(kMaxVars)) throw std::invalid_argument("too many variables");
    Monomial m;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 0xffff) throw std::invalid_argument("exponent out of range");
      m.exp[i] = uint16_t(e[i]);
      m.deg += e[i] * weights[i];
    }
    return m;
  }
  static Monomial variable(int index, int weight) {
    Monomial m;
    m.exp[size_t(index)] = 1;
    m.deg = weight;
    return m;
  }

  bool is_one() const {
    return std::all_of(exp.begin(), exp.end(), [](uint16_t e) { return e == 0; });
  }
  int total_exponent() const {
    int s = 0;
    for (auto e : exp) s += e;
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = uint16_t(a.exp[i] + b.exp[i]);
  m.deg = a.deg + b.deg;
  return m;
}

/// a | b
inline bool divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a, assuming a | b.
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = uint16_t(b.exp[i] - a.exp[i]);
  m.deg = b.deg - a.deg;
  return m;
}

inline Monomial lcm(const Monomial& a, const Monomial& b, std::span<const int> weights) {
  Monomial m;
  for (size_t i = 0; i < weights.size(); ++i) {
    m.exp[i] = std::max(a.exp[i], b.exp[i]);
    m.deg += m.exp[i] * weights[i];
  }
  return m;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != 0 && b.exp[i] != 0) return false;
  return true;
}

/// Weighted graded reverse lexicographic comparison: +1 if a > b.
inline int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  return 0;
}

struct MonomialHash {
  size_t operator()(const Monomial& m) const {
    size_t h = 1469598103934665603ull;
    for (auto e : m.exp) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

}  // namespace jumploci
