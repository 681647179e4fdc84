#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace testing_support;

namespace {

using Pt = std::vector<Zp>;

size_t crk(const TwistedComplex<F>& X, const Pt& a) { return crk_at(X, std::span<const Zp>(a)); }

Pt point(const RingPtr<F>& S, std::initializer_list<int64_t> xs) {
  Pt a;
  for (auto x : xs) a.push_back(S->field().from_int(x));
  return a;
}

Ideal<F> chis(const RingPtr<F>& S, std::initializer_list<size_t> idx) {
  std::vector<Poly<F>> g;
  for (auto i : idx) g.push_back(S->var(i));
  return Ideal<F>(S, g);
}

TwistedComplex<F> model(const char* name) {
  auto s = load(name);
  return twisted_complex_for(s.ring, s.module);
}

std::vector<const char*> fixture_names() { return {"flag.jl", "final.jl", "koszul.jl", "e_homotopies.jl", "perfect.jl"}; }

/// Invariants every report must satisfy. The multiplicity balance holds for
/// module complexes and for random ones built from parity-balanced pieces.
void expect_invariants(const TwistedComplex<F>& X, const std::string& label, uint64_t seed = 0) {
  auto rep = jump_loci_report(X, seed);
  int r = int(rep.rank);
  for (int i = 0; i <= r; ++i) {
    EXPECT_TRUE(rep.at(i + 1).variety_within(rep.at(i))) << label << ": V^" << i + 1 << " not inside V^" << i;
    if ((i - r) % 2 != 0 && i >= 1) {
      EXPECT_TRUE(rep.at(i).variety_equal(rep.at(i + 1))) << label << ": parity collapse fails at " << i;
    }
  }
  for (int i = 1; i <= r + 1; ++i)
    EXPECT_TRUE(jump_locus_via_exterior_power(X, i).variety_equal(rep.at(i))) << label << ": routes differ at i = " << i;
  ASSERT_FALSE(rep.jumpNumbers.empty()) << label;
  EXPECT_EQ(rep.jumpNumbers.front() % 2, 0) << label;
  EXPECT_EQ(size_t(rep.jumpNumbers.back()), tbetti(X)) << label;
  std::mt19937_64 rng(seed + 17);
  for (int k = 0; k < 4; ++k) {
    Pt a;
    for (size_t j = 0; j < X.S->nvars(); ++j) a.push_back(X.S->field().random(rng));
    EXPECT_EQ(crk(X, a) % 2, size_t(r) % 2) << label;
  }
  if (rep.complexity > 0) {
    EXPECT_TRUE(rep.multiplicity.balanced) << label << ": e(E) != e(O)";
  }
}

}  // namespace

TEST(Crk, NonRegularExample) {
  auto X = model("e_homotopies.jl");
  EXPECT_EQ(crk_generic(X), 2u);
  EXPECT_EQ(crk(X, point(X.S, {3, 7})), 2u);
  EXPECT_EQ(crk(X, point(X.S, {0, 0})), 4u);
}

TEST(Crk, ResidueFieldAndContractible) {
  auto X = model("koszul.jl");
  EXPECT_EQ(crk_generic(X), 4u);
  EXPECT_EQ(crk(X, point(X.S, {0, 0})), 4u);
  EXPECT_EQ(crk(X, point(X.S, {5, 1})), 4u);
  auto C = inflate(zero_complex(X.S, X.chiInternal), {0, 0});
  EXPECT_EQ(crk(C, point(X.S, {0, 0})), 0u);
  EXPECT_EQ(crk_generic(C), 0u);
}

TEST(JumpLocus, FlagExampleIsAFlag) {
  auto X = model("flag.jl");
  auto S = X.S;
  auto rep = jump_loci_report(X);
  // the hyperplane and line must be coordinate ones, nested, in some order
  int a = -1;
  for (size_t i = 0; i < 3; ++i)
    if (jump_locus_ideal(X, 9).variety_equal(chis(S, {i}))) a = int(i);
  ASSERT_GE(a, 0);
  bool line = false;
  for (size_t b = 0; b < 3; ++b)
    if (int(b) != a && jump_locus_ideal(X, 13).variety_equal(chis(S, {size_t(a), b}))) line = true;
  EXPECT_TRUE(line);
  EXPECT_TRUE(jump_locus_ideal(X, 15).variety_equal(chis(S, {0, 1, 2})));
  EXPECT_TRUE(jump_locus_ideal(X, 17).is_unit());
  EXPECT_TRUE(jump_locus_ideal(X, 8).is_zero());
  EXPECT_TRUE(rep.at(12).variety_equal(rep.at(9)));
}

TEST(JumpLocus, NonRegularExample) {
  auto X = model("e_homotopies.jl");
  EXPECT_TRUE(jump_locus_ideal(X, 3).variety_equal(chis(X.S, {0, 1})));
  EXPECT_TRUE(jump_locus_ideal(X, 2).is_zero());
}

TEST(JumpLocus, PerfectModule) {
  auto X = model("perfect.jl");
  EXPECT_TRUE(jump_locus_ideal(X, 1).variety_equal(chis(X.S, {0, 1})));
  EXPECT_TRUE(jump_locus_ideal(X, 4).variety_equal(chis(X.S, {0, 1})));
  EXPECT_TRUE(jump_locus_ideal(X, 5).is_unit());
}

TEST(JumpLocus, ExteriorRouteAgreesOnFixtures) {
  for (const char* name : {"flag.jl", "e_homotopies.jl", "perfect.jl", "koszul.jl"}) {
    auto X = model(name);
    auto Y = minimalize(X);
    for (int i = 1; i <= int(Y.rank()) + 1; ++i)
      EXPECT_TRUE(jump_locus_ideal(X, i).variety_equal(jump_locus_via_exterior_power(X, i))) << name << " i = " << i;
  }
}

TEST(JumpLocus, ZeroDifferentialBothRoutes) {
  auto X = model("koszul.jl");
  for (int i = 1; i <= 4; ++i) {
    EXPECT_TRUE(jump_locus_ideal(X, i).is_zero());
    EXPECT_TRUE(jump_locus_via_exterior_power(X, i).is_zero());
  }
  EXPECT_TRUE(jump_locus_ideal(X, 5).is_unit());
  EXPECT_TRUE(jump_locus_via_exterior_power(X, 5).is_unit());
}

TEST(JumpLocus, RandomSmallComplexesBothRoutes) {
  auto S = chi_ring(2, 5);
  std::mt19937_64 rng(77);
  for (int k = 0; k < 6; ++k) {
    auto X = minimalize(random_twisted_complex(S, {1, 1}, rng, 1, 1));
    for (int i = 1; i <= int(X.rank()) + 1; ++i)
      EXPECT_TRUE(jump_locus_ideal(X, i).variety_equal(jump_locus_via_exterior_power(X, i))) << "sample " << k;
  }
}

TEST(Report, FlagExample) {
  auto rep = jump_loci_report(model("flag.jl"));
  EXPECT_EQ(rep.rank, 16u);
  EXPECT_EQ(rep.jumpNumbers, (std::vector<int>{8, 12, 14, 16}));
  ASSERT_EQ(rep.loci.size(), 5u);
  std::vector<int> dims;
  for (auto& p : rep.loci) dims.push_back(p.dim);
  EXPECT_EQ(dims, (std::vector<int>{3, 2, 1, 0, -1}));
  EXPECT_TRUE(rep.loci.front().ideal.empty());
  EXPECT_EQ(rep.loci.back().ideal, (std::vector<std::string>{"1"}));
  EXPECT_FALSE(rep.loci.back().to.has_value());
  EXPECT_EQ(rep.complexity, 3);
  EXPECT_EQ(rep.bettiDegree, 4);
  EXPECT_EQ(betti_degree_from_plateau(rep), 4);
}

TEST(Report, ResidueFieldSinglePlateau) {
  auto rep = jump_loci_report(model("koszul.jl"));
  EXPECT_EQ(rep.jumpNumbers, (std::vector<int>{4}));
  ASSERT_EQ(rep.loci.size(), 2u);
  EXPECT_TRUE(rep.loci[0].ideal.empty());
  EXPECT_EQ(rep.loci[0].from, 0);
  EXPECT_EQ(rep.loci[0].to, 4);
  EXPECT_EQ(rep.loci[1].ideal, (std::vector<std::string>{"1"}));
  EXPECT_EQ(rep.bettiDegree, 2);
}

TEST(Report, NonRegularExample) {
  auto rep = jump_loci_report(model("e_homotopies.jl"));
  EXPECT_EQ(rep.jumpNumbers, (std::vector<int>{2, 4}));
  ASSERT_EQ(rep.loci.size(), 3u);
  EXPECT_EQ(rep.loci[1].from, 3);
  EXPECT_EQ(rep.loci[1].to, 4);
  EXPECT_EQ(rep.loci[1].dim, 0);
}

TEST(Report, Complexity) {
  EXPECT_EQ(complexity_of(model("flag.jl")), 3);
  EXPECT_EQ(complexity_of(model("final.jl")), 2);
  EXPECT_EQ(complexity_of(model("perfect.jl")), 0);
  EXPECT_FALSE(jump_loci_report(model("perfect.jl")).bettiDegree.has_value());
}

TEST(Report, DeterministicAcrossSeeds) {
  auto X = model("flag.jl");
  auto a = jump_loci_report(X, 1);
  auto b = jump_loci_report(X, 99);
  EXPECT_EQ(a.jumpNumbers, b.jumpNumbers);
  for (size_t k = 0; k < a.loci.size(); ++k) EXPECT_EQ(a.loci[k].ideal, b.loci[k].ideal);
}

TEST(BettiDegree, FinalExampleAndDual) {
  auto s = load("final.jl");
  JumpLociReport<F> p, q;
  auto d = duality_check(s.ring, s.module, 0, &p, &q);
  EXPECT_EQ(p.bettiDegree, 3);
  EXPECT_EQ(q.bettiDegree, 3);
  EXPECT_TRUE(d.bdegEqual);
  // lower-order terms differ: beta_0(M) = 1, beta_0(M*) = 2
  auto star = dual_module_input(s.ring, s.module);
  ASSERT_TRUE(star.has_value());
  EXPECT_EQ(star->presentation->rows(), 2u);
}

TEST(BassDegree, Examples) {
  auto f = load("final.jl");
  EXPECT_EQ(bass_degree(f.ring, f.module), 3);
  auto g = load("flag.jl");
  EXPECT_EQ(bass_degree(g.ring, g.module), 4);
  auto b = load("perfect.jl");
  EXPECT_FALSE(bass_degree(b.ring, b.module).has_value());
}

TEST(Duality, FixturesAreAllEqual) {
  for (const char* name : {"flag.jl", "e_homotopies.jl", "final.jl", "koszul.jl", "perfect.jl"}) {
    auto s = load(name);
    auto d = duality_check(s.ring, s.module);
    EXPECT_TRUE(d.all_equal()) << name;
    EXPECT_TRUE(d.routesAgree) << name;
  }
}

TEST(Additivity, Examples) {
  auto X = model("e_homotopies.jl");
  EXPECT_TRUE(additivity_check(X, X));
  auto C = inflate(zero_complex(X.S, X.chiInternal), {1, 0});
  EXPECT_TRUE(additivity_check(X, C));
  auto XC = jump_loci_report(direct_sum(X, C));
  EXPECT_TRUE(reports_variety_equal(XC, jump_loci_report(X)));
}

TEST(Additivity, RandomKoszulObjects) {
  auto S = chi_ring(2, 5);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    auto X = random_twisted_complex(S, {1, 1}, rng, 1, 0);
    auto Y = random_twisted_complex(S, {1, 1}, rng, 1, 1);
    EXPECT_TRUE(additivity_check(X, Y)) << "sample " << k;
  }
}

TEST(Realize, TwoVariableChain) {
  auto S = chi_ring(2);
  auto re = realize(S, {1, 1}, {Ideal<F>::zero(S), chis(S, {0}), Ideal<F>::unit(S)}, 2);
  EXPECT_TRUE(re.verified);
  EXPECT_EQ(re.report.jumpNumbers.back(), int(re.X.rank()));
}

TEST(Realize, TrivialChain) {
  auto S = chi_ring(2);
  auto re = realize(S, {1, 1}, {Ideal<F>::zero(S), Ideal<F>::unit(S)}, 2);
  EXPECT_TRUE(re.verified);
  EXPECT_EQ(re.X.rank(), 0u);
}

TEST(Realize, ThreeVariableFlag) {
  auto S = chi_ring(3);
  auto re = realize(S, {1, 1, 1}, {Ideal<F>::zero(S), chis(S, {0}), chis(S, {0, 1}), Ideal<F>::unit(S)}, 2);
  EXPECT_TRUE(re.verified);
  EXPECT_EQ(re.ends.size(), 3u);
  EXPECT_EQ(re.report.loci.size(), 4u);
}

TEST(Realize, RejectsNonDescendingChain) {
  auto S = chi_ring(2);
  EXPECT_THROW(realize(S, {1, 1}, {Ideal<F>::zero(S), chis(S, {0}), chis(S, {0}), Ideal<F>::unit(S)}, 1),
               std::invalid_argument);
  EXPECT_THROW(realize(S, {1, 1}, {chis(S, {0}), Ideal<F>::unit(S)}, 1), std::invalid_argument);
}

TEST(Oracle, FinalExampleAtCoordinatePoint) {
  auto s = load("final.jl");
  auto X = twisted_complex_for(s.ring, s.module);
  Pt a = point(s.ring.S, {1, 0});
  auto o = stable_betti_oracle(s.ring, *s.module.presentation, std::span<const Zp>(a));
  ASSERT_TRUE(o.value.has_value());
  EXPECT_EQ(*o.value, crk(X, a));
}

TEST(Oracle, FlagExampleRandomPoints) {
  auto s = load("flag.jl");
  auto X = twisted_complex_for(s.ring, s.module);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    Pt a;
    for (int j = 0; j < 3; ++j) a.push_back(s.ring.field().random(rng));
    if (std::all_of(a.begin(), a.end(), [](const Zp& v) { return v.is_zero(); })) continue;
    auto o = stable_betti_oracle(s.ring, *s.module.presentation, std::span<const Zp>(a));
    ASSERT_TRUE(o.value.has_value());
    EXPECT_EQ(*o.value, crk(X, a));
  }
}

TEST(Oracle, FlagExampleOnSpecialLoci) {
  auto s = load("flag.jl");
  auto X = twisted_complex_for(s.ring, s.module);
  for (auto a : {point(X.S, {1, 0, 0}), point(X.S, {0, 1, 0}), point(X.S, {0, 0, 1}), point(X.S, {1, 0, 4})}) {
    auto o = stable_betti_oracle(s.ring, *s.module.presentation, std::span<const Zp>(a));
    ASSERT_TRUE(o.value.has_value());
    EXPECT_EQ(*o.value, crk(X, a));
  }
}

TEST(Oracle, FreeBModuleIsZero) {
  auto s = load("perfect.jl");
  Pt a = point(s.ring.S, {2, 5});
  auto o = stable_betti_oracle(s.ring, *s.module.presentation, std::span<const Zp>(a));
  ASSERT_TRUE(o.value.has_value());
  EXPECT_EQ(*o.value, 0u);
}

TEST(Invariants, Fixtures) {
  for (const char* name : fixture_names()) {
    auto s = load(name);
    expect_invariants(twisted_complex_for(s.ring, s.module), name);
    expect_invariants(explicit_dual_complex(s.ring, s.module), std::string(name) + " dual");
  }
}

TEST(Invariants, RandomComplexesOverGF5) {
  auto S = chi_ring(2, 5);
  std::mt19937_64 rng(555);
  for (int k = 0; k < 10; ++k) {
    auto X = random_twisted_complex(S, {1, 1}, rng);
    ASSERT_TRUE((X.D * X.D).is_zero());
    expect_invariants(X, "random " + std::to_string(k), uint64_t(k));
  }
}
