#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "jumploci/groebner.hpp"
#include "jumploci/hilbert.hpp"
#include "jumploci/text.hpp"

namespace jumploci {

/// Ideal of a polynomial ring (in practice S = k[chi]) with a lazily
/// computed reduced Groebner basis. Copies share the cache.
template <class Field>
class Ideal {
 public:
  using P = Poly<Field>;

  Ideal() = default;
  Ideal(RingPtr<Field> ring, std::vector<P> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens)
      if (!g.is_zero()) gens_.push_back(std::move(g));
  }
  static Ideal zero(RingPtr<Field> ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr<Field> ring) {
    auto one = ring->one();
    return Ideal(std::move(ring), {one});
  }

  const RingPtr<Field>& ring() const { return ring_; }
  const std::vector<P>& generators() const { return gens_; }

  const std::vector<P>& basis() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->ready) {
      cache_->gb = groebner_basis(*ring_, gens_);
      cache_->ready = true;
    }
    return cache_->gb;
  }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const {
    auto& b = basis();
    return b.size() == 1 && b[0].is_constant() && !b[0].is_zero();
  }

  bool contains(const P& f) const {
    if (f.is_zero()) return true;
    if (gens_.empty()) return false;
    return normal_form(*ring_, f, basis()).is_zero();
  }

  /// f in rad(I), via 1 in I + (1 - y f) in k[x, y].
  bool radical_contains(const P& f) const {
    if (f.is_zero()) return true;
    if (gens_.empty()) return false;
    if (is_unit() || contains(f)) return true;
    auto ext = ring_->extended();
    std::vector<P> gens;
    for (auto& g : basis()) gens.push_back(g.embed(ext.tag()));
    gens.push_back(ext.one() - ext.var(ring_->nvars()) * f.embed(ext.tag()));
    bool unit = false;
    groebner_basis(ext, gens, &unit);
    return unit;
  }

  /// V(this) is contained in V(other), i.e. other lies in rad(this).
  bool variety_within(const Ideal& other) const {
    for (auto& g : other.gens_)
      if (!radical_contains(g)) return false;
    return true;
  }
  bool variety_equal(const Ideal& other) const { return variety_within(other) && other.variety_within(*this); }

  friend Ideal operator+(const Ideal& a, const Ideal& b) {
    auto g = a.gens_;
    g.insert(g.end(), b.gens_.begin(), b.gens_.end());
    return Ideal(a.ring_, std::move(g));
  }
  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    std::vector<P> g;
    for (auto& x : a.gens_)
      for (auto& y : b.gens_) g.push_back(x * y);
    return Ideal(a.ring_, std::move(g));
  }

  /// Minimal homogeneous generators (input must be homogeneous).
  Ideal minimalized() const {
    std::vector<Vec<Field>> cands;
    for (auto& g : gens_) cands.push_back(poly_to_vec(g, 0));
    auto keep = minimal_generators(*ring_, cands, {0}, 1, {});
    std::vector<P> out;
    for (auto k : keep) out.push_back(gens_[k].monic());
    return Ideal(ring_, std::move(out));
  }

  bool homogeneous() const {
    for (auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

  HilbertData hilbert() const {
    if (gens_.empty()) return hilbert_from_numerator(Laurent{{0, 1}}, ring_->weights());
    std::vector<Monomial> leads;
    for (auto& g : basis()) leads.push_back(g.lead().mono);
    return hilbert_of_monomials(std::move(leads), ring_->weights());
  }
  /// Krull dimension of S/I; -1 for the unit ideal.
  int dimension() const { return hilbert().dimension; }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (auto& g : gens_) out.push_back(to_string(g, *ring_));
    return out;
  }

 private:
  struct Cache {
    std::mutex mu;
    bool ready = false;
    std::vector<P> gb;
  };

  RingPtr<Field> ring_;
  std::vector<P> gens_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace jumploci
