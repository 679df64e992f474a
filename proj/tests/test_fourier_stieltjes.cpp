#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace gfs {
namespace {

GroupoidFunction matrix_function(const FiniteGroupoid& g, const CMatrix& m) {
  GroupoidFunction f(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    f[a] = m(static_cast<Eigen::Index>(g.range(a)), static_cast<Eigen::Index>(g.source(a)));
  return f;
}

double sup_product(const BundleSection& a, const BundleSection& b, const UnitMeasure& mu) {
  return sup_norm(a, mu) * sup_norm(b, mu);
}

// ---- positive definiteness -------------------------------------------------

TEST(PositiveDefinite, ConstantAndDiagonalOnPairGroupoid) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto g = pair_groupoid(n);
    const auto h = counting_haar(g);
    const auto mu = uniform_measure(n);
    EXPECT_TRUE(is_positive_definite(GroupoidFunction(g.arrow_count(), 1.0), g, h, mu).is_pd);
    EXPECT_TRUE(is_positive_definite(GroupoidFunction::unit_indicator(g), g, h, mu).is_pd);
  }
}

TEST(PositiveDefinite, AntisymmetricPatternRejected) {
  const auto g = pair_groupoid(2);
  GroupoidFunction phi(4);
  phi[g.arrow("(1,2)")] = 1.0;
  phi[g.arrow("(2,1)")] = -1.0;
  const auto rep = is_positive_definite(phi, g, counting_haar(g), uniform_measure(2));
  EXPECT_FALSE(rep.is_pd);
  EXPECT_NEAR(rep.min_eigenvalue, -1.0, 1e-12);
  EXPECT_FALSE(rep.borderline);
}

TEST(PositiveDefinite, HermitianNegativeDirection) {
  // phi = 1 at units, -2 off the diagonal gives fiber matrix [[1,-2],[-2,1]].
  const auto g = pair_groupoid(2);
  GroupoidFunction phi(4, -2.0);
  phi[g.arrow("(1,1)")] = phi[g.arrow("(2,2)")] = 1.0;
  const auto rep = is_positive_definite(phi, g, counting_haar(g), uniform_measure(2));
  EXPECT_FALSE(rep.is_pd);
  EXPECT_NEAR(rep.min_eigenvalue, -1.0, 1e-12);
}

TEST(PositiveDefinite, BorderlineFlag) {
  const auto g = unit_groupoid(2);
  const GroupoidFunction phi(std::vector<Complex>{1.0, -5e-10});
  const auto rep = is_positive_definite(phi, g, counting_haar(g), uniform_measure(2));
  EXPECT_TRUE(rep.is_pd);
  EXPECT_TRUE(rep.borderline);
  EXPECT_EQ(rep.worst_unit, std::optional<Unit>(1));
  EXPECT_FALSE(is_positive_definite(GroupoidFunction(std::vector<Complex>{1.0, -2e-9}), g, counting_haar(g),
                                    uniform_measure(2))
                   .is_pd);
}

TEST(PositiveDefinite, OnlySupportMatters) {
  const auto g = unit_groupoid(2);
  const GroupoidFunction phi(std::vector<Complex>{1.0, -3.0});
  EXPECT_TRUE(is_positive_definite(phi, g, counting_haar(g), UnitMeasure{{1.0, 0.0}}).is_pd);
}

TEST(PositiveDefinite, CoefficientWithEqualSectionsIsPd) {
  Rng rng(61);
  const auto samples = testing::zoo();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto& s = samples[seed % samples.size()];
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 3, seed);
    const auto alpha = testing::random_section(t.bundle, rng);
    const auto rep = is_positive_definite(coefficient_function(alpha, alpha, t, s.g), s.g, s.h, mu);
    EXPECT_TRUE(rep.is_pd) << s.name << " seed " << seed << " margin " << rep.min_eigenvalue;
  }
}

TEST(PositiveDefinite, ClosedUnderPointwiseProduct) {
  Rng rng(62);
  for (const auto& s : testing::zoo()) {
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t1 = random_representation_triple(s.g, s.h, mu, 2, 1);
    const auto t2 = random_representation_triple(s.g, s.h, mu, 2, 2);
    const auto a1 = testing::random_section(t1.bundle, rng), a2 = testing::random_section(t2.bundle, rng);
    const auto p = pointwise_product(coefficient_function(a1, a1, t1, s.g), coefficient_function(a2, a2, t2, s.g));
    EXPECT_TRUE(is_positive_definite(p, s.g, s.h, mu).is_pd) << s.name;
  }
}

// ---- coefficient functions and the pointwise algebra ------------------------

TEST(Coefficient, TrivialAllOnes) {
  const auto g = pair_groupoid(3);
  const auto t = trivial_triple(g, uniform_measure(3));
  BundleSection ones = BundleSection::zero(t.bundle);
  for (auto& b : ones.blocks) b.setOnes();
  EXPECT_EQ(max_abs_difference(coefficient_function(ones, ones, t, g), GroupoidFunction(9, 1.0)), 0.0);
  EXPECT_EQ(coefficient_function(BundleSection::zero(t.bundle), ones, t, g).max_abs(), 0.0);
}

TEST(Coefficient, MatrixUnitConstruction) {
  // alpha supported at i, beta at j, both the same unit vector: phi = e_{j,i}.
  const auto g = pair_groupoid(3);
  const auto t = trivial_triple(g, uniform_measure(3), 2);
  CVector zeta(2);
  zeta << Complex(0.6, 0.0), Complex(0.0, 0.8);
  BundleSection alpha = BundleSection::zero(t.bundle), beta = BundleSection::zero(t.bundle);
  alpha[0] = zeta;  // i = 1
  beta[2] = zeta;   // j = 3
  const auto phi = coefficient_function(alpha, beta, t, g);
  EXPECT_EQ(max_abs_difference(phi, GroupoidFunction::delta(9, g.arrow("(3,1)"))), 0.0);
}

TEST(Coefficient, RejectsMismatchedSections) {
  const auto g = pair_groupoid(2);
  const auto t = trivial_triple(g, uniform_measure(2), 2);
  const auto wrong = BundleSection::zero(HilbertBundle({1, 1}));
  EXPECT_THROW(coefficient_function(wrong, wrong, t, g), std::invalid_argument);
}

TEST(PointwiseAlgebra, Identities) {
  Rng rng(63);
  const auto g = pair_groupoid(2);
  const auto phi = testing::random_function(g, rng);
  EXPECT_EQ(max_abs_difference(pointwise_product(phi, GroupoidFunction(4, 1.0)), phi), 0.0);
  EXPECT_EQ(max_abs_difference(pointwise_star(GroupoidFunction::delta(4, g.arrow("(1,2)")), g),
                               GroupoidFunction::delta(4, g.arrow("(2,1)"))),
            0.0);
}

TEST(PointwiseAlgebra, TensorProductRealizesPointwiseProduct) {
  Rng rng(64);
  for (const auto& s : testing::zoo()) {
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t1 = random_representation_triple(s.g, s.h, mu, 2, 5);
    const auto t2 = random_representation_triple(s.g, s.h, mu, 3, 6);
    const auto a1 = testing::random_section(t1.bundle, rng), b1 = testing::random_section(t1.bundle, rng);
    const auto a2 = testing::random_section(t2.bundle, rng), b2 = testing::random_section(t2.bundle, rng);
    const auto t = tensor_product_triple(t1, t2);
    const auto lhs = coefficient_function(tensor(a1, a2), tensor(b1, b2), t, s.g);
    const auto rhs = pointwise_product(coefficient_function(a1, b1, t1, s.g), coefficient_function(a2, b2, t2, s.g));
    EXPECT_LE(max_abs_difference(lhs, rhs), 1e-12 * (1.0 + rhs.max_abs())) << s.name;
    // (alpha, beta)^* = (beta, alpha)
    EXPECT_LE(max_abs_difference(pointwise_star(coefficient_function(a1, b1, t1, s.g), s.g),
                                 coefficient_function(b1, a1, t1, s.g)),
              1e-12)
        << s.name;
  }
}

TEST(TensorTriple, DimsAndTrivial) {
  const auto g = unit_groupoid(2);
  const auto mu = uniform_measure(2);
  RepresentationTriple a{HilbertBundle({2, 1}), {}, mu}, b{HilbertBundle({1, 3}), {}, mu};
  for (Arrow k = 0; k < 2; ++k) {
    a.action.unitaries.push_back(CMatrix::Identity(static_cast<Eigen::Index>(a.bundle.dim(k)), static_cast<Eigen::Index>(a.bundle.dim(k))));
    b.action.unitaries.push_back(CMatrix::Identity(static_cast<Eigen::Index>(b.bundle.dim(k)), static_cast<Eigen::Index>(b.bundle.dim(k))));
  }
  const auto t = tensor_product_triple(a, b);
  EXPECT_EQ(t.bundle.dims(), (std::vector<std::size_t>{2, 3}));
  const auto p = pair_groupoid(3);
  const auto tr = trivial_triple(p, uniform_measure(3));
  const auto tt = tensor_product_triple(tr, tr);
  EXPECT_TRUE(tt.bundle == tr.bundle);
  for (Arrow k = 0; k < p.arrow_count(); ++k) EXPECT_EQ(tt.action[k], tr.action[k]);
  EXPECT_THROW(tensor_product_triple(tr, trivial_triple(p, UnitMeasure{{0.5, 0.25, 0.25}})), std::invalid_argument);
}

TEST(TensorTriple, UnitarityPreserved) {
  Rng rng(65);
  const auto samples = testing::zoo();
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto& s = samples[k % samples.size()];
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = tensor_product_triple(random_representation_triple(s.g, s.h, mu, 2, k),
                                         random_representation_triple(s.g, s.h, mu, 3, k + 100));
    EXPECT_TRUE(validate_action(s.g, t.bundle, t.action).ok()) << s.name;
  }
}

// ---- B-norm ----------------------------------------------------------------

void expect_witness(const BNormResult& r, const GroupoidFunction& phi, const FiniteGroupoid& g,
                    const UnitMeasure& mu) {
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(validate_action(g, r.witness->rep.bundle, r.witness->rep.action).ok());
  const auto realized = coefficient_function(r.witness->alpha, r.witness->beta, r.witness->rep, g);
  EXPECT_LE(max_abs_difference(realized, phi), 1e-6);
  EXPECT_LE(sup_product(r.witness->alpha, r.witness->beta, mu), r.value + 1e-6);
}

TEST(BNorm, AllOnesPairIsOne) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto g = pair_groupoid(n);
    const GroupoidFunction phi(g.arrow_count(), 1.0);
    const auto r = b_norm(phi, g, counting_haar(g), uniform_measure(n));
    EXPECT_EQ(r.method, "sdp");
    EXPECT_NEAR(r.value, 1.0, 1e-6);
    EXPECT_TRUE(r.validated);
    expect_witness(r, phi, g, uniform_measure(n));
  }
}

TEST(BNorm, HadamardIsSqrtTwo) {
  const auto g = pair_groupoid(2);
  CMatrix a(2, 2);
  a << 1, 1, 1, -1;
  const auto phi = matrix_function(g, a);
  const auto r = b_norm(phi, g, counting_haar(g), uniform_measure(2));
  EXPECT_NEAR(r.value, std::numbers::sqrt2, 1e-6);
  expect_witness(r, phi, g, uniform_measure(2));
}

TEST(BNorm, CyclicDeltaIsExactlyOne) {
  const auto g = cyclic_group_bundle(1, 2);
  const auto r = b_norm(GroupoidFunction::delta(2, 0), g, counting_haar(g), uniform_measure(1));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.method, "group-dual");
  EXPECT_EQ(b_norm(GroupoidFunction::delta(6, 0), cyclic_group_bundle(2, 3), counting_haar(cyclic_group_bundle(2, 3)),
                   uniform_measure(2))
                .method,
            "dft-l1");
}

TEST(BNorm, CyclicMatchesIndependentDft) {
  Rng rng(66);
  for (std::size_t base = 1; base <= 3; ++base)
    for (std::size_t m = 1; m <= 6; ++m) {
      const auto g = cyclic_group_bundle(base, m);
      const auto h = counting_haar(g);
      const auto mu = testing::random_full_measure(base, rng);
      const auto phi = testing::random_function(g, rng);
      double oracle = 0.0;
      for (std::size_t n = 0; n < base; ++n) {
        double l1 = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
          Complex c = 0.0;
          for (std::size_t k = 0; k < m; ++k)
            c += phi[n * m + k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(l * k) / static_cast<double>(m));
          l1 += std::abs(c) / static_cast<double>(m);
        }
        oracle = std::max(oracle, l1);
      }
      const auto r = b_norm(phi, g, h, mu);
      EXPECT_NEAR(r.value, oracle, 1e-12 * (1.0 + oracle));
      expect_witness(r, phi, g, mu);
    }
}

TEST(BNorm, UnitGroupoidIsSupNorm) {
  Rng rng(67);
  const auto g = unit_groupoid(5);
  const auto h = counting_haar(g);
  const auto phi = testing::random_function(g, rng);
  const UnitMeasure mu{{0.2, 0.0, 0.3, 0.5, 0.0}};
  double oracle = 0.0;
  for (Unit x : mu.support()) oracle = std::max(oracle, std::abs(phi[x]));
  const auto r = b_norm(phi, g, h, mu);
  EXPECT_EQ(r.value, oracle);
  EXPECT_EQ(r.method, "linfty");
  expect_witness(r, phi, g, mu);
}

TEST(BNorm, ErrorsAndValidation) {
  const auto p = pair_groupoid(2);
  EXPECT_THROW(b_norm(GroupoidFunction(4), p, counting_haar(p), UnitMeasure{{1.0, 0.0}}), std::domain_error);
  const auto o = disjoint_union(pair_groupoid(2), unit_groupoid(1));
  EXPECT_THROW(b_norm(GroupoidFunction(o.arrow_count()), o, counting_haar(o), uniform_measure(3)), UnsupportedGroupoid);
  const auto r = b_norm(GroupoidFunction(4, 1.0), p, counting_haar(p), UnitMeasure{{0.25, 0.75}});
  EXPECT_FALSE(r.validated);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  const auto scaled = b_norm(GroupoidFunction(4, 1.0), p, counting_haar(p), UnitMeasure{{3.0, 3.0}});
  EXPECT_TRUE(scaled.validated);
}

TEST(BNorm, BoundedBySectionSupNorms) {
  Rng rng(68);
  for (const auto& s : testing::zoo()) {
    if (classify(s.g).kind == GroupoidClass::other) continue;
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 2, 13);
    const auto a = testing::random_section(t.bundle, rng), b = testing::random_section(t.bundle, rng);
    const auto phi = coefficient_function(a, b, t, s.g);
    EXPECT_LE(b_norm(phi, s.g, s.h, mu).value, sup_product(a, b, mu) + 1e-6) << s.name;
  }
}

TEST(BNorm, DominatesSupNormAndCstarDuality) {
  // |phi(g)| = |<L_g alpha, beta>| <= ||alpha|| ||beta||, so bNorm >= max |phi|.
  Rng rng(69);
  for (const auto& s : testing::zoo()) {
    if (classify(s.g).kind == GroupoidClass::other) continue;
    const auto mu = uniform_measure(s.g.unit_count());
    const auto phi = testing::random_function(s.g, rng);
    EXPECT_GE(b_norm(phi, s.g, s.h, mu).value, phi.max_abs() - 1e-6) << s.name;
  }
}

TEST(BNorm, InvolutionIsometryAndSubmultiplicativity) {
  Rng rng(70);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(2, 5);
    const auto g = pair_groupoid(n);
    const auto h = counting_haar(g);
    const auto mu = uniform_measure(n);
    const auto phi = testing::random_function(g, rng), psi = testing::random_function(g, rng);
    const double bp = b_norm(phi, g, h, mu).value;
    const double bq = b_norm(psi, g, h, mu).value;
    EXPECT_NEAR(b_norm(pointwise_star(phi, g), g, h, mu).value, bp, 1e-6);
    EXPECT_LE(b_norm(pointwise_product(phi, psi), g, h, mu).value, bp * bq + 1e-5);
  }
}

TEST(BNorm, SdpWitnessRoundTrip) {
  Rng rng(71);
  const auto g = pair_groupoid(4);
  const auto h = counting_haar(g);
  const auto mu = uniform_measure(4);
  const auto phi = testing::random_function(g, rng);
  const auto r = b_norm(phi, g, h, mu);
  expect_witness(r, phi, g, mu);
  const auto realized = coefficient_function(r.witness->alpha, r.witness->beta, r.witness->rep, g);
  EXPECT_NEAR(b_norm(realized, g, h, mu).value, r.value, 1e-5);
}

// ---- duality pairing ---------------------------------------------------------

TEST(Duality, UnitGroupoidTotalMass) {
  const auto g = unit_groupoid(3);
  const auto h = counting_haar(g);
  const auto mu = normalize(UnitMeasure{{1.0, 2.0, 5.0}});
  const auto t = trivial_triple(g, mu);
  BundleSection ones = BundleSection::zero(t.bundle);
  for (auto& b : ones.blocks) b.setOnes();
  const std::vector<Complex> one(3, 1.0);
  const auto phi = coefficient_function(ones, ones, t, g);
  const auto p = duality_pairing(phi, GroupoidFunction::unit_indicator(g), one, one, t, ones, ones, g, h);
  EXPECT_NEAR(std::abs(p.direct - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.representation - 1.0), 0.0, 1e-15);
}

TEST(Duality, ZeroFunction) {
  Rng rng(72);
  const auto g = pair_groupoid(3);
  const auto h = counting_haar(g);
  const auto t = random_representation_triple(g, h, uniform_measure(3), 2, 1);
  const auto a = testing::random_section(t.bundle, rng), b = testing::random_section(t.bundle, rng);
  const std::vector<Complex> one(3, 1.0);
  const auto p = duality_pairing(coefficient_function(a, b, t, g), GroupoidFunction(9), one, one, t, a, b, g, h);
  EXPECT_EQ(p.direct, Complex(0.0));
  EXPECT_EQ(p.representation, Complex(0.0));
}

TEST(Duality, RandomTrials) {
  Rng rng(73);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = trial % 2 ? pair_groupoid(3) : cyclic_group_bundle(2, 3);
    const auto h = counting_haar(g);
    const auto mu = testing::random_full_measure(g.unit_count(), rng);
    const auto t = random_representation_triple(g, h, mu, 3, static_cast<std::uint64_t>(trial));
    const auto a = testing::random_section(t.bundle, rng), b = testing::random_section(t.bundle, rng);
    std::vector<Complex> ua(g.unit_count()), ub(g.unit_count());
    for (auto& z : ua) z = rng.complex_normal();
    for (auto& z : ub) z = rng.complex_normal();
    const auto p = duality_pairing(coefficient_function(a, b, t, g), testing::random_function(g, rng), ua, ub, t, a,
                                   b, g, h);
    worst = std::max(worst, p.difference);
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Duality, RejectsWrongRealization) {
  Rng rng(74);
  const auto g = pair_groupoid(2);
  const auto h = counting_haar(g);
  const auto t = trivial_triple(g, uniform_measure(2));
  const auto a = testing::random_section(t.bundle, rng), b = testing::random_section(t.bundle, rng);
  const std::vector<Complex> one(2, 1.0);
  EXPECT_THROW(duality_pairing(GroupoidFunction(4, 7.0), GroupoidFunction(4, 1.0), one, one, t, a, b, g, h),
               std::invalid_argument);
  EXPECT_THROW(duality_pairing(coefficient_function(a, b, t, g), GroupoidFunction(4), std::vector<Complex>(3), one, t,
                               a, b, g, h),
               std::invalid_argument);
}

}  // namespace
}  // namespace gfs
