#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jumploci/monomial.hpp"
#include "jumploci/scalar.hpp"

namespace jumploci {

/// Which polynomial ring a value lives in: the x-ring A, the ring of
/// cohomology operators S, or S extended by one auxiliary variable.
enum class RingKind : uint8_t { A, S, Extended };

struct RingTag {
  RingKind kind = RingKind::A;
  uint8_t nvars = 0;
  friend bool operator==(const RingTag&, const RingTag&) = default;
};

class RingMismatch : public std::invalid_argument {
 public:
  RingMismatch() : std::invalid_argument("polynomials from different rings") {}
};

template <class Field>
struct PolyTerm {
  Monomial mono;
  typename Field::Scalar coef;
};

/// Sparse polynomial; terms are kept sorted by descending weighted grevlex
/// order with no zero coefficients.
template <class Field>
class Poly {
 public:
  using Scalar = typename Field::Scalar;
  using Term = PolyTerm<Field>;

  Poly() = default;
  explicit Poly(RingTag tag) : tag_(tag) {}

  static Poly constant(RingTag tag, const Scalar& c) {
    Poly p(tag);
    if (!::jumploci::is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Poly term(RingTag tag, const Monomial& m, const Scalar& c) {
    Poly p(tag);
    if (!::jumploci::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(RingTag tag, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grevlex_compare(a.mono, b.mono) > 0; });
    Poly p(tag);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
        if (::jumploci::is_zero(p.terms_.back().coef)) p.terms_.pop_back();
      } else if (!::jumploci::is_zero(t.coef)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }
  /// Terms already sorted, merged and nonzero.
  static Poly from_sorted(RingTag tag, std::vector<Term> terms) {
    Poly p(tag);
    p.terms_ = std::move(terms);
    return p;
  }

  RingTag tag() const { return tag_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& lead() const { return terms_.front(); }

  Scalar constant_term(const Field& k) const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return k.zero();
  }
  bool has_constant_term() const { return !terms_.empty() && terms_.back().mono.is_one(); }

  /// Highest weighted degree of a term; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, int(t.mono.deg));
    return d;
  }
  bool is_homogeneous() const {
    for (auto& t : terms_)
      if (t.mono.deg != terms_.front().mono.deg) return false;
    return true;
  }
  /// Homogeneous with respect to an alternative weight vector.
  bool is_homogeneous(std::span<const int> weights) const {
    int d0 = 0;
    for (size_t k = 0; k < terms_.size(); ++k) {
      int d = 0;
      for (size_t i = 0; i < weights.size(); ++i) d += terms_[k].mono.exp[i] * weights[i];
      if (k == 0) d0 = d;
      else if (d != d0) return false;
    }
    return true;
  }
  int degree_in(std::span<const int> weights) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (size_t i = 0; i < weights.size(); ++i) d += terms_.front().mono.exp[i] * weights[i];
    return d;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.tag_);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (auto& s : a.terms_)
      for (auto& t : b.terms_) out.push_back({s.mono * t.mono, Scalar(s.coef * t.coef)});
    return from_terms(a.tag_, std::move(out));
  }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scaled(const Scalar& c) const {
    if (::jumploci::is_zero(c)) return Poly(tag_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = t.coef * c;
    return r;
  }
  Poly mul_term(const Monomial& m, const Scalar& c) const {
    if (::jumploci::is_zero(c)) return Poly(tag_);
    Poly r(tag_);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, Scalar(t.coef * c)});
    return r;
  }
  /// Divides out the leading coefficient.
  Poly monic() const {
    if (terms_.empty()) return *this;
    return scaled(inverse(terms_.front().coef));
  }

  Poly pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Poly result = Poly::constant(tag_, unit_like());
    Poly base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Scalar evaluate(std::span<const Scalar> point, const Field& k) const {
    Scalar acc = k.zero();
    for (auto& t : terms_) {
      Scalar v = t.coef;
      for (size_t i = 0; i < point.size(); ++i)
        for (int e = 0; e < t.mono.exp[i]; ++e) v = v * point[i];
      acc = acc + v;
    }
    return acc;
  }

  /// Exact division; returns false if divisor does not divide *this.
  bool divide_exact(const Poly& divisor, Poly& out) const {
    check(*this, divisor);
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = *this;
    std::vector<Term> q;
    const Term& lt = divisor.lead();
    Scalar inv = inverse(lt.coef);
    while (!rem.is_zero()) {
      const Term& r = rem.lead();
      if (!divides(lt.mono, r.mono)) return false;
      Monomial m = quotient(r.mono, lt.mono);
      Scalar c = r.coef * inv;
      q.push_back({m, c});
      rem = rem - divisor.mul_term(m, c);
    }
    out = from_terms(tag_, std::move(q));
    return true;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Re-tags into a ring with more variables (the new ones are absent).
  Poly embed(RingTag bigger) const {
    Poly r = *this;
    r.tag_ = bigger;
    return r;
  }
  /// Replaces the tag after a variable renaming that preserves the order.
  Poly retag(RingTag t) const {
    Poly r = *this;
    r.tag_ = t;
    return r;
  }

 private:
  static void check(const Poly& a, const Poly& b) {
    if (!(a.tag_ == b.tag_)) throw RingMismatch();
  }
  Scalar unit_like() const {
    if (terms_.empty()) throw std::logic_error("pow of zero polynomial needs a field");
    return terms_.front().coef / terms_.front().coef;
  }
  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    check(a, b);
    Poly r(a.tag_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = grevlex_compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? Scalar(-t.coef) : t.coef});
      } else {
        Scalar s = subtract ? Scalar(a.terms_[i].coef - b.terms_[j].coef)
                            : Scalar(a.terms_[i].coef + b.terms_[j].coef);
        if (!::jumploci::is_zero(s)) r.terms_.push_back({a.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingTag tag_{};
  std::vector<Term> terms_;
};

/// Variable names, weights and coefficient field of a polynomial ring.
/// Polynomials do not point back at their ring; anything that needs to
/// create constants or variables goes through this object.
template <class Field>
class PolyRing {
 public:
  using Scalar = typename Field::Scalar;
  using P = Poly<Field>;

  PolyRing(Field field, RingKind kind, std::vector<std::string> names, std::vector<int> weights)
      : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() > size_t(kMaxVars))
      throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables are supported");
    if (weights_.size() != names_.size()) throw std::invalid_argument("one weight per variable required");
    for (int w : weights_)
      if (w <= 0) throw std::invalid_argument("variable weights must be positive");
    tag_ = RingTag{kind, uint8_t(names_.size())};
  }

  const Field& field() const { return field_; }
  RingTag tag() const { return tag_; }
  size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }

  P zero() const { return P(tag_); }
  P one() const { return P::constant(tag_, field_.one()); }
  P constant(int64_t n) const { return P::constant(tag_, field_.from_int(n)); }
  P constant(const Scalar& c) const { return P::constant(tag_, c); }
  P var(size_t i) const { return P::term(tag_, Monomial::variable(int(i), weights_[i]), field_.one()); }
  Monomial monomial(std::span<const int> exps) const { return Monomial::from_exponents(exps, weights_); }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return int(i);
    return -1;
  }

  /// Same field, one extra variable appended (used for the radical test).
  PolyRing extended(const std::string& aux = "aux_") const {
    auto n = names_;
    auto w = weights_;
    n.push_back(aux);
    w.push_back(1);
    return PolyRing(field_, RingKind::Extended, n, w);
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.names_ == b.names_ && a.weights_ == b.weights_ && a.tag_ == b.tag_;
  }

 private:
  Field field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  RingTag tag_{};
};

template <class Field>
using RingPtr = std::shared_ptr<const PolyRing<Field>>;

template <class Field>
RingPtr<Field> make_ring(Field field, RingKind kind, std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const PolyRing<Field>>(std::move(field), kind, std::move(names), std::move(weights));
}

}  // namespace jumploci
