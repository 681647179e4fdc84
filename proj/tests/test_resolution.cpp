#include <gtest/gtest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

std::vector<size_t> trimmed(std::vector<size_t> b) {
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

}  // namespace

TEST(ResolutionOverA, ResidueFieldIsKoszul) {
  auto A = poly_ring({"x", "y"});
  auto R = ci(A, {"x^2", "y^2"});
  auto in = cyclic(*A, {"x", "y"});
  auto F = minimal_resolution_over_A(R, *in.presentation);
  EXPECT_EQ(trimmed(F.betti()), (std::vector<size_t>{1, 2, 1}));
  EXPECT_TRUE(dd_zero(*A, F));
  EXPECT_TRUE(is_minimal(F));
}

TEST(ResolutionOverA, FreeModuleHasLengthZero) {
  auto A = poly_ring({"x", "y"});
  PolyMatrix<F> P(A->tag(), std::vector<Bidegree>{{0, 0}}, std::vector<Bidegree>{});
  auto F = minimal_resolution(*A, P, {0}, {}, 3);
  EXPECT_EQ(trimmed(F.betti()), (std::vector<size_t>{1}));
}

TEST(ResolutionOverA, FlagModuleMatchesKoszulHomology) {
  auto s = load("flag.jl");
  auto F = minimal_resolution_over_A(s.ring, *s.module.presentation);
  dense::MonomialAlgebra M(3, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {1, 0, 1}, {0, 1, 2}});
  auto oracle = dense::koszul_betti(M, 101);
  EXPECT_EQ(trimmed(F.betti()), oracle);
  size_t total = 0;
  for (size_t b : F.betti()) total += b;
  EXPECT_EQ(total, 16u);
  EXPECT_TRUE(dd_zero(*s.ring.A, F));
  EXPECT_TRUE(is_minimal(F));
}

TEST(ResolutionOverA, EulerCharacteristicOnFixtures) {
  for (const char* name : {"flag.jl", "final.jl", "perfect.jl"}) {
    auto s = load(name);
    auto F = minimal_resolution_over_A(s.ring, *s.module.presentation);
    EXPECT_TRUE(euler_characteristic_matches(*s.ring.A, F, *s.module.presentation)) << name;
  }
}

TEST(ResolutionOverA, NonMinimalPresentationIsPruned) {
  auto A = poly_ring({"x", "y"});
  ModuleInput<F> in;
  in.presentation = mat(*A, {{"1", "x", "0"}, {"0", "y", "x^2"}});
  in.presentation->setRowDegrees({{0, 0}, {0, 1}});
  auto F = minimal_resolution(*A, *in.presentation, {0, 1}, {}, 4);
  EXPECT_TRUE(is_minimal(F));
  EXPECT_EQ(trimmed(F.betti()), (std::vector<size_t>{1, 2, 1}));
}

TEST(ResolutionOverB, FinalExampleMatchesQuasiPolynomials) {
  auto s = load("final.jl");
  auto F = minimal_resolution_over_B(s.ring, *s.module.presentation, 20);
  auto b = F.betti();
  ASSERT_GE(b.size(), 21u);
  EXPECT_EQ(b[4], 7u);
  EXPECT_EQ(b[5], 9u);
  EXPECT_EQ(b[6], 10u);
  for (int i = 4; i <= 20; ++i) {
    // 3i/2 + 1 for even i, 3i/2 + 3/2 for odd i
    size_t want = i % 2 == 0 ? size_t(3 * i / 2 + 1) : size_t((3 * i + 3) / 2);
    EXPECT_EQ(b[size_t(i)], want) << "i = " << i;
  }
  EXPECT_TRUE(dd_zero(*s.ring.A, F, s.ring.f));
}

TEST(ResolutionOverB, FinalExampleMatchesDenseOracle) {
  auto s = load("final.jl");
  auto b = minimal_resolution_over_B(s.ring, *s.module.presentation, 12).betti();
  dense::MonomialAlgebra Q(2, {{3, 0}, {0, 3}});
  auto oracle = dense::cyclic_betti(Q, {{2, 0}, {1, 1}, {0, 2}}, 12, 101);
  b.resize(oracle.size(), 0);
  EXPECT_EQ(b, oracle);
}

TEST(ResolutionOverB, DualModuleMatchesDenseOracle) {
  auto s = load("final.jl");
  auto star = dual_module_input(s.ring, s.module);
  ASSERT_TRUE(star.has_value());
  auto b = minimal_resolution_over_B(s.ring, *star->presentation, 12).betti();
  dense::MonomialAlgebra Q(2, {{3, 0}, {0, 3}});
  auto ann = dense::annihilator(Q, {{2, 0}, {1, 1}, {0, 2}}, 101);
  EXPECT_EQ(ann.size(), 3u);
  auto oracle = dense::submodule_betti(Q, ann, 1, 12, 101);
  b.resize(oracle.size(), 0);
  EXPECT_EQ(b, oracle);
  EXPECT_EQ(b[4], 8u);
  EXPECT_EQ(b[5], 9u);
}

TEST(ResolutionOverB, DualOfFinalExampleHasLengthThree) {
  auto s = load("final.jl");
  auto star = dual_module_input(s.ring, s.module);
  ASSERT_TRUE(star.has_value());
  auto rowDeg = internal_degrees(star->presentation->rowDegrees());
  std::vector<int> colDeg;
  for (size_t j = 0; j < star->presentation->cols(); ++j)
    colDeg.push_back(detail::column_degree(*star->presentation, j, rowDeg, s.ring.A->weights()).value_or(0));
  auto h = hilbert_of_cokernel(*s.ring.A, *star->presentation, rowDeg, colDeg, 1, rowDeg);
  EXPECT_EQ(h.dimension, 0);
  EXPECT_EQ(h.multiplicity.value_or(-1), 3);
}

TEST(ResolutionOverB, FreeModuleOverB) {
  auto s = load("perfect.jl");
  auto b = minimal_resolution_over_B(s.ring, *s.module.presentation, 6).betti();
  EXPECT_EQ(trimmed(b), (std::vector<size_t>{1}));
}

TEST(ResolutionOverB, RejectsModuleNotAnnihilated) {
  auto A = poly_ring({"x", "y"});
  auto R = ci(A, {"x^2", "y^2"});
  auto in = cyclic(*A, {"x^3"});
  EXPECT_THROW(minimal_resolution_over_B(R, *in.presentation, 4), std::invalid_argument);
}

TEST(Dualize, KoszulIsSelfDual) {
  auto A = poly_ring({"x", "y"});
  auto R = ci(A, {"x^2", "y^2"});
  auto F = minimal_resolution_over_A(R, *cyclic(*A, {"x", "y"}).presentation);
  auto D = dualize_over_A(F, 2);
  EXPECT_EQ(trimmed(D.G.betti()), (std::vector<size_t>{1, 2, 1}));
  ASSERT_TRUE(D.presentation.has_value());
  auto G = minimal_resolution_over_A(R, *D.presentation);
  EXPECT_EQ(trimmed(G.betti()), (std::vector<size_t>{1, 2, 1}));
}

TEST(Dualize, DualOfBIsB) {
  auto s = load("perfect.jl");
  auto star = dual_module_input(s.ring, s.module);
  ASSERT_TRUE(star.has_value());
  auto a = jump_loci_report(twisted_complex_for(s.ring, s.module));
  auto b = jump_loci_report(twisted_complex_for(s.ring, *star));
  EXPECT_TRUE(reports_variety_equal(a, b));
  EXPECT_EQ(a.jumpNumbers, b.jumpNumbers);
}

TEST(RegularSequence, Examples) {
  auto A = poly_ring({"x", "y"});
  EXPECT_TRUE(is_regular_sequence(ci(A, {"x^3", "y^3"})));
  EXPECT_FALSE(is_regular_sequence(ci(A, {"x^2*y", "x*y^2"})));
  auto A1 = poly_ring({"x"});
  EXPECT_TRUE(is_regular_sequence(ci(A1, {"x"})));
}

TEST(RingData, RejectsBadSequences) {
  auto A = poly_ring({"x", "y"});
  EXPECT_THROW(ci(A, {"x + y^2"}), std::invalid_argument);
  EXPECT_THROW(ci(A, {"0"}), std::invalid_argument);
  EXPECT_THROW(ci(A, {"1"}), std::invalid_argument);
}

TEST(QuasiPolynomial, FinalExampleTail) {
  std::vector<size_t> beta{1, 3, 4, 6, 7, 9, 10, 12, 13, 15};
  auto q = fit_quasi_polynomial(beta, 6);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->even.to_string(), "3/2*i + 1");
  EXPECT_EQ(q->odd.to_string(), "3/2*i + 3/2");
  EXPECT_EQ(q->complexity(), 2);
  EXPECT_EQ(*betti_degree_of(*q), 3);
}

TEST(QuasiPolynomial, ConstantTail) {
  std::vector<size_t> beta{1, 2, 2, 2, 2, 2, 2};
  auto q = fit_quasi_polynomial(beta, 6);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->even.to_string(), "2");
  EXPECT_EQ(q->odd.to_string(), "2");
  EXPECT_EQ(q->complexity(), 1);
  EXPECT_EQ(q->validFrom, 1);
}

TEST(QuasiPolynomial, ZeroTail) {
  std::vector<size_t> beta{1, 2, 1, 0, 0, 0, 0, 0};
  auto q = fit_quasi_polynomial(beta, 5);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->even.to_string(), "0");
  EXPECT_EQ(q->complexity(), 0);
  EXPECT_FALSE(betti_degree_of(*q).has_value());
}

TEST(QuasiPolynomial, RefusesShortOrIrregularTails) {
  EXPECT_FALSE(fit_quasi_polynomial({1, 2, 3}, 3).has_value());
  EXPECT_FALSE(fit_quasi_polynomial({1, 5, 2, 9, 3, 1, 8, 2}, 8, 1).has_value());
}

TEST(QuasiPolynomial, DegreeMatchesComplexityForFinalExample) {
  auto s = load("final.jl");
  auto b = minimal_resolution_over_B(s.ring, *s.module.presentation, 16).betti();
  auto q = fit_quasi_polynomial(b, 10);
  ASSERT_TRUE(q.has_value());
  auto X = twisted_complex_for(s.ring, s.module);
  EXPECT_EQ(q->complexity(), complexity_of(X));
}
