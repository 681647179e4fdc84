#pragma once

// Coefficient fields: prime fields GF(p) with p < 2^31 in machine words, and
// the rationals on top of GMP.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace jumploci {

/// Element of GF(p). The modulus travels with the value so that arithmetic
/// needs no external context; a default-constructed element is a "floating"
/// zero that adopts the modulus of whatever it is combined with.
class Zp {
 public:
  Zp() = default;
  Zp(uint32_t value, uint32_t modulus) : v_(value % modulus), p_(modulus) {}

  uint32_t value() const { return v_; }
  uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  friend Zp operator+(Zp a, Zp b) {
    uint32_t p = pick(a, b);
    uint64_t s = uint64_t(a.v_) + b.v_;
    if (s >= p) s -= p;
    return raw(uint32_t(s), p);
  }
  friend Zp operator-(Zp a, Zp b) {
    uint32_t p = pick(a, b);
    uint64_t s = uint64_t(a.v_) + p - b.v_;
    if (s >= p) s -= p;
    return raw(uint32_t(s), p);
  }
  friend Zp operator*(Zp a, Zp b) {
    uint32_t p = pick(a, b);
    return raw(uint32_t((uint64_t(a.v_) * b.v_) % p), p);
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }
  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in GF(p)");
    int64_t t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
      int64_t q = r / nr;
      int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return raw(uint32_t(t), p_);
  }

  /// Symmetric representative in (-p/2, p/2].
  int64_t symmetric() const {
    if (p_ == 0) return 0;
    return v_ > p_ / 2 ? int64_t(v_) - int64_t(p_) : int64_t(v_);
  }

 private:
  static Zp raw(uint32_t v, uint32_t p) {
    Zp z;
    z.v_ = v;
    z.p_ = p;
    return z;
  }
  static uint32_t pick(Zp a, Zp b) { return a.p_ > b.p_ ? a.p_ : b.p_; }

  uint32_t v_ = 0;
  uint32_t p_ = 0;
};

inline bool is_zero(const Zp& a) { return a.is_zero(); }
inline bool is_one(const Zp& a) { return a.is_one(); }
inline std::string to_string(const Zp& a) { return std::to_string(a.symmetric()); }
inline Zp inverse(const Zp& a) { return a.inverse(); }

inline bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
inline bool is_one(const mpq_class& a) { return a == 1; }
inline std::string to_string(const mpq_class& a) { return a.get_str(); }
inline mpq_class inverse(const mpq_class& a) {
  if (sgn(a) == 0) throw std::domain_error("division by zero in QQ");
  return mpq_class(1) / a;
}

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using Scalar = Zp;

  explicit PrimeField(uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("GF(" + std::to_string(p) + "): " + std::to_string(p) +
                                  " is not a prime below 2^31");
  }

  uint32_t characteristic() const { return p_; }
  Scalar zero() const { return Scalar(0, p_); }
  Scalar one() const { return Scalar(1, p_); }
  Scalar from_int(int64_t n) const {
    int64_t r = n % int64_t(p_);
    if (r < 0) r += p_;
    return Scalar(uint32_t(r), p_);
  }
  Scalar from_big(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return Scalar(uint32_t(r.get_ui()), p_);
  }
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const {
    Scalar d = from_big(den);
    if (d.is_zero()) throw std::domain_error("denominator vanishes in " + name());
    return from_big(num) / d;
  }
  Scalar random(std::mt19937_64& rng) const {
    return Scalar(uint32_t(std::uniform_int_distribution<uint32_t>(0, p_ - 1)(rng)), p_);
  }
  Scalar random_nonzero(std::mt19937_64& rng) const {
    return Scalar(uint32_t(std::uniform_int_distribution<uint32_t>(1, p_ - 1)(rng)), p_);
  }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  uint32_t p_;
};

class RationalField {
 public:
  using Scalar = mpq_class;

  uint32_t characteristic() const { return 0; }
  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(int64_t n) const { return Scalar(static_cast<long>(n)); }
  Scalar from_big(const mpz_class& n) const { return Scalar(n); }
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
  }
  /// Small integers; enough for generic-point screening.
  Scalar random(std::mt19937_64& rng) const {
    return Scalar(std::uniform_int_distribution<int>(-97, 97)(rng));
  }
  Scalar random_nonzero(std::mt19937_64& rng) const {
    int v = 0;
    while (v == 0) v = std::uniform_int_distribution<int>(-97, 97)(rng);
    return Scalar(v);
  }
  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept CoefficientField = requires(const F& f, int64_t n) {
  typename F::Scalar;
  { f.zero() } -> std::same_as<typename F::Scalar>;
  { f.one() } -> std::same_as<typename F::Scalar>;
  { f.from_int(n) } -> std::same_as<typename F::Scalar>;
  { f.name() } -> std::same_as<std::string>;
};

}  // namespace jumploci
