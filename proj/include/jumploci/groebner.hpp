#pragma once

// Buchberger's algorithm for submodules of graded free modules over k[x],
// with quotient rings handled by adjoining f*e_i for every basis vector e_i.
// Syzygies and lifts come from an elimination order on the stacked module
// [P ; I]: top components carry the image, bottom components record how each
// element was built from the columns.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "jumploci/matrix.hpp"
#include "jumploci/polynomial.hpp"

namespace jumploci {

template <class Field>
struct VTerm {
  int comp;
  Monomial mono;
  typename Field::Scalar coef;
};

template <class Field>
using Vec = std::vector<VTerm<Field>>;

/// Module monomial order. Components in a smaller block dominate; inside a
/// block terms compare by weightFactor*deg + shift, then weighted grevlex,
/// then smaller component first.
struct ModuleOrder {
  std::vector<int> shift;
  std::vector<int> block;
  int weightFactor = 1;

  static ModuleOrder graded(std::vector<int> shifts, int weightFactor = 1) {
    ModuleOrder o;
    o.block.assign(shifts.size(), 0);
    o.shift = std::move(shifts);
    o.weightFactor = weightFactor;
    return o;
  }
  static ModuleOrder rank_one() { return graded({0}); }

  size_t components() const { return shift.size(); }
  int degree(int comp, const Monomial& m) const { return weightFactor * m.deg + shift[size_t(comp)]; }

  int compare(int ca, const Monomial& a, int cb, const Monomial& b) const {
    if (block[size_t(ca)] != block[size_t(cb)]) return block[size_t(ca)] < block[size_t(cb)] ? 1 : -1;
    int da = degree(ca, a), db = degree(cb, b);
    if (da != db) return da > db ? 1 : -1;
    int g = grevlex_compare(a, b);
    if (g != 0) return g;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }
};

template <class Field>
void sort_vec(Vec<Field>& v, const ModuleOrder& o) {
  std::sort(v.begin(), v.end(), [&](const VTerm<Field>& a, const VTerm<Field>& b) {
    return o.compare(a.comp, a.mono, b.comp, b.mono) > 0;
  });
  size_t w = 0;
  for (size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[w - 1].comp == v[r].comp && v[w - 1].mono == v[r].mono) {
      v[w - 1].coef = v[w - 1].coef + v[r].coef;
      if (is_zero(v[w - 1].coef)) --w;
    } else if (!is_zero(v[r].coef)) {
      v[w++] = std::move(v[r]);
    }
  }
  v.resize(w);
}

/// a - c*m*b, where both inputs are sorted. Any terms of a before position
/// `from` are dropped.
template <class Field>
Vec<Field> vec_sub_mul(const Vec<Field>& a, size_t from, const typename Field::Scalar& c, const Monomial& m,
                       const Vec<Field>& b, size_t bfrom, const ModuleOrder& o) {
  Vec<Field> r;
  r.reserve(a.size() - from + b.size() - bfrom);
  size_t i = from, j = bfrom;
  while (i < a.size() || j < b.size()) {
    int cmp;
    Monomial bm;
    if (j < b.size()) bm = b[j].mono * m;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = o.compare(a[i].comp, a[i].mono, b[j].comp, bm);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({b[j].comp, bm, -(c * b[j].coef)});
      ++j;
    } else {
      typename Field::Scalar s = a[i].coef - c * b[j].coef;
      if (!is_zero(s)) r.push_back({a[i].comp, a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return r;
}

inline uint32_t divmask(const Monomial& m) {
  uint32_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    if (m.exp[size_t(i)] > 0) mask |= 1u << (2 * i % 32);
    if (m.exp[size_t(i)] > 1) mask |= 1u << ((2 * i + 1) % 32);
  }
  return mask;
}

inline bool verbose_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("JUMPLOCI_VERBOSE");
    return v != nullptr && std::string(v) == "1";
  }();
  return on;
}

template <class Field>
class GroebnerEngine {
 public:
  using Scalar = typename Field::Scalar;
  using V = Vec<Field>;

  struct Element {
    V v;
    int sugar = 0;
    uint32_t mask = 0;
    bool redundant = false;
  };
  struct Stats {
    size_t generators = 0;
    size_t pairs = 0;
    size_t zero = 0;
    size_t pruned = 0;
  };

  GroebnerEngine(Field k, std::vector<int> weights, ModuleOrder order, bool rankOne)
      : k_(std::move(k)), weights_(std::move(weights)), order_(std::move(order)), rankOne_(rankOne),
        live_(order_.components()) {}

  const ModuleOrder& order() const { return order_; }
  const std::vector<Element>& elements() const { return elems_; }
  const Stats& stats() const { return stats_; }
  bool unit() const { return unit_; }

  void add(V v) {
    sort_vec(v, order_);
    if (v.empty()) return;
    Pair p;
    p.generator = true;
    p.sugar = sugar_of(v);
    p.deg = order_.degree(v.front().comp, v.front().mono);
    p.seq = seq_++;
    p.gen = std::move(v);
    ++stats_.generators;
    pending_.push_back(std::move(p));
  }

  /// Processes every pair and generator of sugar at most `degree`. For
  /// homogeneous input the basis is then correct through that degree.
  void completeThrough(int degree) {
    while (!unit_) {
      size_t best = pick();
      if (best == npos || pending_[best].sugar > degree) break;
      Pair p = std::move(pending_[best]);
      pending_[best] = std::move(pending_.back());
      pending_.pop_back();
      process(p);
    }
    report();
  }
  void complete() { completeThrough(std::numeric_limits<int>::max()); }

  int reducer(int comp, const Monomial& m) const {
    uint32_t mk = divmask(m);
    for (int idx : live_[size_t(comp)]) {
      const Element& e = elems_[size_t(idx)];
      if ((e.mask & ~mk) != 0) continue;
      if (divides(e.v.front().mono, m)) return idx;
    }
    return -1;
  }

  /// Normal form; with full = false only the leading term is reduced away.
  V normalForm(V f, bool full = true) const {
    sort_vec(f, order_);
    int dummy = 0;
    return reduce(std::move(f), full, dummy);
  }
  bool reducesToZero(const V& f) const { return normalForm(f, false).empty(); }

  /// Reduced basis: non-redundant elements, monic, tails fully reduced.
  std::vector<V> reducedBasis() const {
    std::vector<V> out;
    for (auto& e : elems_) {
      if (e.redundant) continue;
      V tail(e.v.begin() + 1, e.v.end());
      V r;
      r.push_back(e.v.front());
      V nt = normalForm(std::move(tail), true);
      r.insert(r.end(), nt.begin(), nt.end());
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const V& a, const V& b) {
      return order_.compare(a.front().comp, a.front().mono, b.front().comp, b.front().mono) < 0;
    });
    return out;
  }

 private:
  static constexpr size_t npos = size_t(-1);

  struct Pair {
    bool generator = false;
    int i = -1, j = -1;
    int comp = 0;
    Monomial lcm;
    int sugar = 0;
    int deg = 0;
    long seq = 0;
    V gen;
  };

  int sugar_of(const V& v) const {
    int s = std::numeric_limits<int>::min();
    for (auto& t : v) s = std::max(s, order_.degree(t.comp, t.mono));
    return s;
  }

  size_t pick() const {
    size_t best = npos;
    for (size_t i = 0; i < pending_.size(); ++i) {
      if (best == npos) {
        best = i;
        continue;
      }
      const Pair& a = pending_[i];
      const Pair& b = pending_[best];
      if (std::tie(a.sugar, a.deg, a.seq) < std::tie(b.sugar, b.deg, b.seq)) best = i;
    }
    return best;
  }

  V reduce(V f, bool full, int& sugar) const {
    V out;
    size_t start = 0;
    while (start < f.size()) {
      const auto& lt = f[start];
      int g = reducer(lt.comp, lt.mono);
      if (g < 0) {
        if (!full) {
          out.insert(out.end(), f.begin() + long(start), f.end());
          return out;
        }
        out.push_back(lt);
        ++start;
        continue;
      }
      const Element& e = elems_[size_t(g)];
      Monomial m = quotient(lt.mono, e.v.front().mono);
      Scalar c = lt.coef;  // elements are monic
      sugar = std::max(sugar, e.sugar + order_.weightFactor * m.deg);
      f = vec_sub_mul<Field>(f, start + 1, c, m, e.v, 1, order_);
      start = 0;
    }
    return out;
  }

  void process(Pair& p) {
    V h;
    int sugar = p.sugar;
    if (p.generator) {
      h = std::move(p.gen);
    } else {
      ++stats_.pairs;
      const Element& a = elems_[size_t(p.i)];
      const Element& b = elems_[size_t(p.j)];
      Monomial ma = quotient(p.lcm, a.v.front().mono);
      Monomial mb = quotient(p.lcm, b.v.front().mono);
      V sa;
      sa.reserve(a.v.size());
      for (size_t t = 1; t < a.v.size(); ++t) sa.push_back({a.v[t].comp, a.v[t].mono * ma, a.v[t].coef});
      h = vec_sub_mul<Field>(sa, 0, k_.one(), mb, b.v, 1, order_);
    }
    h = reduce(std::move(h), true, sugar);
    if (h.empty()) {
      ++stats_.zero;
      return;
    }
    Scalar inv = inverse(h.front().coef);
    for (auto& t : h) t.coef = t.coef * inv;
    insert(std::move(h), sugar);
  }

  Pair make_pair(int i, int j) const {
    const Element& a = elems_[size_t(i)];
    const Element& b = elems_[size_t(j)];
    Pair p;
    p.i = i;
    p.j = j;
    p.comp = a.v.front().comp;
    p.lcm = lcm(a.v.front().mono, b.v.front().mono, weights_);
    int wa = order_.weightFactor * (p.lcm.deg - a.v.front().mono.deg);
    int wb = order_.weightFactor * (p.lcm.deg - b.v.front().mono.deg);
    p.sugar = std::max(a.sugar + wa, b.sugar + wb);
    p.deg = order_.degree(p.comp, p.lcm);
    p.seq = seq_;
    return p;
  }

  void insert(V h, int sugar) {
    int k = int(elems_.size());
    Element e;
    e.mask = divmask(h.front().mono);
    e.sugar = std::max(sugar, order_.degree(h.front().comp, h.front().mono));
    e.v = std::move(h);
    int comp = e.v.front().comp;
    const Monomial lead = e.v.front().mono;
    if (rankOne_ && lead.is_one()) unit_ = true;
    elems_.push_back(std::move(e));
    ++seq_;

    // Gebauer-Moeller: drop old pairs whose lcm the new lead divides strictly.
    size_t before = pending_.size();
    pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                  [&](const Pair& p) {
                                    if (p.generator || p.comp != comp) return false;
                                    if (!divides(lead, p.lcm)) return false;
                                    Monomial li = lcm(elems_[size_t(p.i)].v.front().mono, lead, weights_);
                                    Monomial lj = lcm(elems_[size_t(p.j)].v.front().mono, lead, weights_);
                                    return li != p.lcm && lj != p.lcm;
                                  }),
                   pending_.end());
    stats_.pruned += before - pending_.size();

    std::vector<Pair> fresh;
    for (int idx : live_[size_t(comp)]) fresh.push_back(make_pair(idx, k));

    std::vector<bool> keep(fresh.size(), true);
    for (size_t a = 0; a < fresh.size(); ++a)
      for (size_t b = 0; b < fresh.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        if (divides(fresh[b].lcm, fresh[a].lcm)) {
          // strict divisibility, or equal lcm with the earlier one surviving
          if (fresh[b].lcm != fresh[a].lcm || b < a) keep[a] = false;
        }
      }
    if (rankOne_) {
      // Product criterion. If a coprime pair shares its lcm with a kept pair,
      // that pair is superfluous too.
      for (size_t a = 0; a < fresh.size(); ++a) {
        if (!coprime(elems_[size_t(fresh[a].i)].v.front().mono, lead)) continue;
        for (size_t b = 0; b < fresh.size(); ++b)
          if (fresh[b].lcm == fresh[a].lcm) keep[b] = false;
      }
    }
    for (size_t a = 0; a < fresh.size(); ++a) {
      if (keep[a]) pending_.push_back(std::move(fresh[a]));
      else ++stats_.pruned;
    }

    auto& live = live_[size_t(comp)];
    live.erase(std::remove_if(live.begin(), live.end(),
                              [&](int idx) {
                                if (divides(lead, elems_[size_t(idx)].v.front().mono)) {
                                  elems_[size_t(idx)].redundant = true;
                                  return true;
                                }
                                return false;
                              }),
               live.end());
    live.push_back(k);
  }

  void report() const {
    if (!verbose_enabled()) return;
    size_t live = 0;
    for (auto& l : live_) live += l.size();
    std::fprintf(stderr, "[gb] components=%zu generators=%zu pairs=%zu zero=%zu pruned=%zu basis=%zu\n",
                 order_.components(), stats_.generators, stats_.pairs, stats_.zero, stats_.pruned, live);
  }

  Field k_;
  std::vector<int> weights_;
  ModuleOrder order_;
  bool rankOne_;
  std::vector<Element> elems_;
  std::vector<std::vector<int>> live_;
  std::vector<Pair> pending_;
  long seq_ = 0;
  bool unit_ = false;
  Stats stats_;
};

// ---------------------------------------------------------------------------
// Conversions between matrices / polynomials and module vectors.

template <class Field>
Vec<Field> poly_to_vec(const Poly<Field>& p, int comp) {
  Vec<Field> v;
  v.reserve(p.size());
  for (auto& t : p.terms()) v.push_back({comp, t.mono, t.coef});
  return v;
}

template <class Field>
Poly<Field> vec_to_poly(const Vec<Field>& v, RingTag tag) {
  std::vector<PolyTerm<Field>> ts;
  ts.reserve(v.size());
  for (auto& t : v) ts.push_back({t.mono, t.coef});
  return Poly<Field>::from_terms(tag, std::move(ts));
}

template <class Field>
Vec<Field> column_to_vec(const PolyMatrix<Field>& m, size_t j, int offset = 0) {
  Vec<Field> v;
  for (size_t i = 0; i < m.rows(); ++i)
    for (auto& t : m(i, j).terms()) v.push_back({int(i) + offset, t.mono, t.coef});
  return v;
}

/// Scatters the terms with component in [offset, offset+n) into a column.
template <class Field>
void vec_to_column(const Vec<Field>& v, PolyMatrix<Field>& m, size_t j, int offset = 0) {
  std::vector<std::vector<PolyTerm<Field>>> rows(m.rows());
  for (auto& t : v) {
    int r = t.comp - offset;
    if (r < 0 || size_t(r) >= m.rows()) continue;
    rows[size_t(r)].push_back({t.mono, t.coef});
  }
  for (size_t i = 0; i < m.rows(); ++i) m(i, j) = Poly<Field>::from_terms(m.tag(), std::move(rows[i]));
}

template <class Field>
int vec_degree(const Vec<Field>& v, const ModuleOrder& o) {
  return v.empty() ? std::numeric_limits<int>::min() : o.degree(v.front().comp, v.front().mono);
}

// ---------------------------------------------------------------------------
// Ideals in one polynomial ring.

template <class Field>
std::vector<Poly<Field>> groebner_basis(const PolyRing<Field>& ring, const std::vector<Poly<Field>>& gens,
                                        bool* isUnit = nullptr) {
  GroebnerEngine<Field> gb(ring.field(), ring.weights(), ModuleOrder::rank_one(), true);
  for (auto& g : gens) gb.add(poly_to_vec(g, 0));
  gb.complete();
  if (isUnit) *isUnit = gb.unit();
  std::vector<Poly<Field>> out;
  if (gb.unit()) {
    out.push_back(ring.one());
    return out;
  }
  for (auto& v : gb.reducedBasis()) out.push_back(vec_to_poly(v, ring.tag()));
  return out;
}

/// Normal form against a set of polynomials that is already a Groebner basis.
template <class Field>
Poly<Field> normal_form(const PolyRing<Field>& ring, const Poly<Field>& f, const std::vector<Poly<Field>>& gb) {
  GroebnerEngine<Field> e(ring.field(), ring.weights(), ModuleOrder::rank_one(), true);
  for (auto& g : gb) e.add(poly_to_vec(g, 0));
  e.complete();
  return vec_to_poly(e.normalForm(poly_to_vec(f, 0)), ring.tag());
}

// ---------------------------------------------------------------------------
// Submodules given by matrix columns, optionally over A/(f).

/// Groebner data for the image of a homogeneous matrix P (rows: free module
/// of rank m with degree shifts rowShift; columns of degree colShift),
/// computed on the stacked module [P ; I] so that syzygies and lifts are
/// available. Quotient generators f are adjoined on every component.
template <class Field>
class ImageBasis {
 public:
  using V = Vec<Field>;
  using P = Poly<Field>;

  ImageBasis(const PolyRing<Field>& ring, const PolyMatrix<Field>& mat, std::vector<int> rowShift,
             std::vector<int> colShift, int weightFactor, const std::vector<P>& quotient, bool track = true)
      : m_(mat.rows()), n_(mat.cols()), track_(track),
        engine_(make_engine(ring, rowShift, colShift, weightFactor, track)) {
    int total = int(m_ + (track ? n_ : 0));
    for (auto& f : quotient)
      for (int c = 0; c < total; ++c) engine_.add(poly_to_vec(f, c));
    for (size_t j = 0; j < n_; ++j) {
      V v = column_to_vec(mat, j, 0);
      if (track) v.push_back({int(m_ + j), Monomial{}, ring.field().one()});
      engine_.add(std::move(v));
    }
    engine_.complete();
  }

  const GroebnerEngine<Field>& engine() const { return engine_; }
  size_t rows() const { return m_; }

  /// Normal form of a vector of the target free module (components 0..m-1).
  V reduce(const V& v) const {
    V out = engine_.normalForm(v);
    return out;
  }
  bool contains(const V& v) const {
    V r = engine_.normalForm(v, true);
    for (auto& t : r)
      if (size_t(t.comp) < m_) return false;
    return true;
  }

  /// Writes v as a combination of the columns; false if v is not in the image.
  bool lift(const V& v, V& coeffs) const {
    if (!track_) throw std::logic_error("lift requires tracking components");
    V r = engine_.normalForm(v, true);
    coeffs.clear();
    for (auto& t : r) {
      if (size_t(t.comp) < m_) return false;
      coeffs.push_back({int(size_t(t.comp) - m_), t.mono, -t.coef});
    }
    return true;
  }

  /// Groebner elements lying entirely in the bottom block, as vectors in
  /// coordinates 0..n-1. They generate the syzygy module (together with the
  /// quotient relations).
  std::vector<V> syzygy_candidates() const {
    std::vector<V> out;
    for (auto& e : engine_.elements()) {
      if (e.redundant) continue;
      if (size_t(e.v.front().comp) < m_) continue;
      V s;
      for (auto& t : e.v) s.push_back({int(size_t(t.comp) - m_), t.mono, t.coef});
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  static GroebnerEngine<Field> make_engine(const PolyRing<Field>& ring, const std::vector<int>& rowShift,
                                           const std::vector<int>& colShift, int wf, bool track) {
    ModuleOrder o;
    o.weightFactor = wf;
    o.shift = rowShift;
    o.block.assign(rowShift.size(), 0);
    if (track) {
      o.shift.insert(o.shift.end(), colShift.begin(), colShift.end());
      o.block.resize(o.shift.size(), 1);
    }
    return GroebnerEngine<Field>(ring.field(), ring.weights(), std::move(o), false);
  }

  size_t m_, n_;
  bool track_;
  GroebnerEngine<Field> engine_;
};

/// Greedy minimal generating set of the submodule spanned by `cands` in a
/// free module with the given shifts, modulo the quotient relations.
/// Returns indices into `cands`.
template <class Field>
std::vector<size_t> minimal_generators(const PolyRing<Field>& ring, const std::vector<Vec<Field>>& cands,
                                       const std::vector<int>& shifts, int weightFactor,
                                       const std::vector<Poly<Field>>& quotient) {
  ModuleOrder o = ModuleOrder::graded(shifts, weightFactor);
  GroebnerEngine<Field> gb(ring.field(), ring.weights(), o, false);
  for (auto& f : quotient)
    for (size_t c = 0; c < shifts.size(); ++c) gb.add(poly_to_vec(f, int(c)));
  std::vector<std::pair<int, size_t>> order;
  for (size_t i = 0; i < cands.size(); ++i) {
    Vec<Field> v = cands[i];
    sort_vec(v, o);
    if (v.empty()) continue;
    order.push_back({vec_degree(v, o), i});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<size_t> keep;
  for (auto& [deg, idx] : order) {
    gb.completeThrough(deg);
    Vec<Field> v = cands[idx];
    sort_vec(v, o);
    if (gb.normalForm(v, false).empty()) continue;
    keep.push_back(idx);
    gb.add(std::move(v));
  }
  return keep;
}

/// Minimal generators of ker(P) (over the quotient ring when f is given).
/// Column degrees of the result are returned through `degrees`.
template <class Field>
PolyMatrix<Field> syzygy_matrix(const PolyRing<Field>& ring, const PolyMatrix<Field>& mat,
                                const std::vector<int>& rowShift, const std::vector<int>& colShift,
                                int weightFactor, const std::vector<Poly<Field>>& quotient,
                                std::vector<int>& degrees) {
  ImageBasis<Field> ib(ring, mat, rowShift, colShift, weightFactor, quotient, true);
  auto cands = ib.syzygy_candidates();
  auto keep = minimal_generators(ring, cands, colShift, weightFactor, quotient);
  ModuleOrder o = ModuleOrder::graded(colShift, weightFactor);
  PolyMatrix<Field> out(ring.tag(), mat.cols(), keep.size());
  out.setRowDegrees(mat.colDegrees());
  degrees.clear();
  for (size_t j = 0; j < keep.size(); ++j) {
    Vec<Field> v = cands[keep[j]];
    sort_vec(v, o);
    degrees.push_back(vec_degree(v, o));
    vec_to_column(v, out, j, 0);
  }
  return out;
}

}  // namespace jumploci
