#include "support.hpp"

#include <gtest/gtest.h>

namespace gfs {
namespace {

GroupoidFunction random_on(const FiniteGroupoid& g, Rng& rng) { return testing::random_function(g, rng); }

TEST(ValidateAction, TrivialAndRegularTriplesPass) {
  for (const auto& s : testing::zoo()) {
    const auto mu = uniform_measure(s.g.unit_count());
    const auto t = trivial_triple(s.g, mu, 2);
    EXPECT_TRUE(validate_action(s.g, t.bundle, t.action).ok()) << s.name;
    const auto r = regular_triple(s.g, mu);
    EXPECT_TRUE(validate_action(s.g, r.bundle, r.action).ok()) << s.name;
  }
}

TEST(ValidateAction, DetectsBrokenLaws) {
  const auto g = pair_groupoid(2);
  auto t = trivial_triple(g, uniform_measure(2));
  t.action.unitaries[g.arrow("(1,2)")] *= 2.0;
  EXPECT_TRUE(validate_action(g, t.bundle, t.action).cites("unitary", "(1,2)"));

  auto u = trivial_triple(g, uniform_measure(2));
  u.action.unitaries[g.arrow("(1,2)")] *= Complex(0, 1);  // breaks L_{g^-1} = L_g^*
  EXPECT_FALSE(validate_action(g, u.bundle, u.action).ok());

  auto w = trivial_triple(g, uniform_measure(2));
  w.action.unitaries[g.arrow("(1,1)")] *= -1.0;
  EXPECT_TRUE(validate_action(g, w.bundle, w.action).cites("identity", "(1,1)"));

  auto shape = trivial_triple(g, uniform_measure(2));
  shape.action.unitaries[0] = CMatrix::Identity(2, 2);
  EXPECT_FALSE(validate_action(g, shape.bundle, shape.action).ok());
}

TEST(RandomTriple, DeterministicFromSeed) {
  const auto g = cyclic_group_bundle(2, 3);
  const auto h = counting_haar(g);
  const auto mu = uniform_measure(2);
  const auto a = random_representation_triple(g, h, mu, 3, 42);
  const auto b = random_representation_triple(g, h, mu, 3, 42);
  ASSERT_EQ(a.bundle.dims(), b.bundle.dims());
  for (Arrow k = 0; k < g.arrow_count(); ++k) EXPECT_EQ(a.action[k], b.action[k]);
}

TEST(RandomTriple, ValidForManySeeds) {
  Rng rng(41);
  const auto samples = testing::zoo();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto& s = samples[seed % samples.size()];
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 1 + seed % 3, seed);
    const auto rep = validate_action(s.g, t.bundle, t.action);
    EXPECT_TRUE(rep.ok()) << s.name << " seed " << seed;
    for (Unit x = 0; x < s.g.unit_count(); ++x) EXPECT_LE(t.bundle.dim(x), std::max<std::size_t>(1 + seed % 3, 1));
  }
}

TEST(RandomTriple, LineBundleOnPairGroupoidIsUnimodularCocycle) {
  const auto g = pair_groupoid(4);
  const auto h = counting_haar(g);
  const auto t = random_representation_triple(g, h, uniform_measure(4), 1, 7);
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    ASSERT_EQ(t.action[a].rows(), 1);
    EXPECT_NEAR(std::abs(t.action[a](0, 0)), 1.0, 1e-14);
    for (Arrow b : g.range_fiber(g.source(a)))
      EXPECT_NEAR(std::abs(t.action[g.compose(a, b)](0, 0) - t.action[a](0, 0) * t.action[b](0, 0)), 0.0, 1e-14);
  }
}

TEST(RandomTriple, RejectsNonQuasiInvariant) {
  const auto g = pair_groupoid(2);
  EXPECT_THROW(random_representation_triple(g, counting_haar(g), UnitMeasure{{1.0, 0.0}}, 2, 0), std::domain_error);
}

TEST(IntegratedForm, PairGroupoidTrivialBundleIsTheMatrix) {
  Rng rng(43);
  const auto g = pair_groupoid(3);
  const auto h = counting_haar(g);
  const auto f = random_on(g, rng);
  const auto op = integrated_form(f, trivial_triple(g, uniform_measure(3)), g, h);
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    EXPECT_NEAR(std::abs(op.matrix(static_cast<Eigen::Index>(g.range(a)), static_cast<Eigen::Index>(g.source(a))) - f[a]),
                0.0, 1e-15);
}

TEST(IntegratedForm, PairGroupoidNonUniformIsSimilarToTheMatrix) {
  // pi(F) = D^{-1/2} [F] D^{1/2} with D = diag(mu): unitary in L^2(mu) coordinates.
  Rng rng(44);
  const auto g = pair_groupoid(3);
  const auto h = counting_haar(g);
  const auto mu = testing::random_full_measure(3, rng);
  const auto f = random_on(g, rng);
  const auto op = integrated_form(f, trivial_triple(g, mu), g, h);
  const CMatrix plain = integrated_form(f, trivial_triple(g, uniform_measure(3)), g, h).matrix;
  EXPECT_NEAR(op.norm(), operator_norm(plain), 1e-12 * (1.0 + operator_norm(plain)));
}

TEST(IntegratedForm, UnitGroupoidIsDiagonalMultiplication) {
  Rng rng(45);
  const auto g = unit_groupoid(4);
  const auto f = random_on(g, rng);
  const auto op = integrated_form(f, trivial_triple(g, testing::random_full_measure(4, rng)), g, counting_haar(g));
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) EXPECT_EQ(op.matrix(i, j), i == j ? f[static_cast<Arrow>(i)] : Complex(0.0));
}

TEST(IntegratedForm, UnitIndicatorIsIdentity) {
  Rng rng(46);
  for (const auto& s : testing::zoo()) {
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 2, 3);
    const auto op = integrated_form(GroupoidFunction::unit_indicator(s.g), t, s.g, s.h);
    EXPECT_LE((op.matrix - CMatrix::Identity(op.dim(), op.dim())).cwiseAbs().maxCoeff(), 1e-15) << s.name;
  }
}

TEST(IntegratedForm, MatchesPairingForm) {
  Rng rng(47);
  for (const auto& s : testing::zoo()) {
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 2, 5);
    const auto f = random_on(s.g, rng);
    const auto xi = testing::random_section(t.bundle, rng), eta = testing::random_section(t.bundle, rng);
    const auto op = integrated_form(f, t, s.g, s.h);
    const Complex lhs = (op.flatten(eta).array().conjugate() * op.metric.cast<Complex>().array() *
                         (op.matrix * op.flatten(xi)).array())
                            .sum();
    const Complex rhs = representation_pairing(f, t, s.g, s.h, xi, eta);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10 * (1.0 + std::abs(rhs))) << s.name;
  }
}

TEST(IntegratedForm, RejectsNonQuasiInvariantTriple) {
  const auto g = pair_groupoid(2);
  auto t = trivial_triple(g, UnitMeasure{{1.0, 0.0}});
  EXPECT_THROW(integrated_form(GroupoidFunction(4), t, g, counting_haar(g)), std::domain_error);
}

TEST(IntegratedForm, ConventionalDeltaArrowsNeverContribute) {
  // mu vanishes on the second component; changing F there changes nothing.
  Rng rng(48);
  const auto g = disjoint_union(pair_groupoid(2), pair_groupoid(2));
  const auto h = counting_haar(g);
  const UnitMeasure mu{{0.3, 0.7, 0.0, 0.0}};
  const auto t = random_representation_triple(g, h, mu, 2, 9);
  auto f = random_on(g, rng);
  auto f2 = f;
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    if (!mu.in_support(g.range(a))) f2[a] = rng.complex_normal() * 100.0;
  const auto xi = testing::random_section(t.bundle, rng), eta = testing::random_section(t.bundle, rng);
  EXPECT_EQ(integrated_form(f, t, g, h).matrix, integrated_form(f2, t, g, h).matrix);
  EXPECT_EQ(representation_pairing(f, t, g, h, xi, eta), representation_pairing(f2, t, g, h, xi, eta));
}

class StarHomomorphism : public ::testing::TestWithParam<int> {};

TEST_P(StarHomomorphism, OnRandomTriples) {
  Rng rng(static_cast<std::uint64_t>(4900 + GetParam()));
  for (const auto& s : testing::zoo()) {
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto t = random_representation_triple(s.g, s.h, mu, 3, static_cast<std::uint64_t>(GetParam()));
    const auto f = random_on(s.g, rng), k = random_on(s.g, rng);
    const auto pf = integrated_form(f, t, s.g, s.h);
    const auto pk = integrated_form(k, t, s.g, s.h);
    const auto pfk = integrated_form(convolve(f, k, s.g, s.h), t, s.g, s.h);
    const auto pstar = integrated_form(involution(f, s.g), t, s.g, s.h);
    EXPECT_LE(IntegratedOperator::weighted_frobenius(pfk.matrix - pf.matrix * pk.matrix, pf.metric, pf.metric), 1e-9)
        << s.name;
    EXPECT_LE(IntegratedOperator::weighted_frobenius(pstar.matrix - pf.adjoint(), pf.metric, pf.metric), 1e-9) << s.name;
    EXPECT_LE(pf.norm(), i_norm(f, s.g, s.h) + 1e-9) << s.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, StarHomomorphism, ::testing::Range(0, 8));

TEST(CstarNorm, Examples) {
  const auto p = pair_groupoid(2);
  EXPECT_NEAR(cstar_norm(GroupoidFunction::delta(4, p.arrow("(1,2)")), p, counting_haar(p), uniform_measure(2)), 1.0,
              1e-12);
  const auto u = unit_groupoid(3);
  const GroupoidFunction f(std::vector<Complex>{1.0, -2.0, 3.0});
  EXPECT_EQ(cstar_norm(f, u, counting_haar(u), UnitMeasure{{0.2, 0.3, 0.5}}), 3.0);
  EXPECT_EQ(cstar_norm(f, u, counting_haar(u), UnitMeasure{{0.2, 0.3, 0.0}}), 2.0);
  const auto z2 = cyclic_group_bundle(1, 2);
  EXPECT_EQ(cstar_norm(GroupoidFunction::delta(2, 0), z2, counting_haar(z2), uniform_measure(1)), 1.0);
}

TEST(CstarNorm, UnsupportedClassThrows) {
  const auto g = disjoint_union(pair_groupoid(2), unit_groupoid(1));
  EXPECT_THROW(cstar_norm(GroupoidFunction(g.arrow_count()), g, counting_haar(g), uniform_measure(3)),
               UnsupportedGroupoid);
}

TEST(CstarNorm, CyclicBundleMatchesRegularRepresentation) {
  Rng rng(49);
  for (std::size_t base = 1; base <= 3; ++base)
    for (std::size_t m = 1; m <= 5; ++m) {
      const auto g = cyclic_group_bundle(base, m);
      const auto h = counting_haar(g);
      const auto mu = testing::random_full_measure(base, rng);
      const auto f = random_on(g, rng);
      const double dense = integrated_form(f, regular_triple(g, mu), g, h).norm();
      EXPECT_NEAR(cstar_norm(f, g, h, mu), dense, 1e-9 * (1.0 + dense)) << base << "x" << m;
    }
}

TEST(CstarNorm, DominatesEveryTriple) {
  Rng rng(50);
  for (const auto& s : testing::zoo()) {
    const auto cls = classify(s.g);
    if (cls.kind == GroupoidClass::other) continue;
    const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
    const auto f = random_on(s.g, rng);
    const double c = cstar_norm(f, s.g, s.h, mu);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto t = random_representation_triple(s.g, s.h, mu, 3, seed);
      EXPECT_LE(integrated_form(f, t, s.g, s.h).norm(), c + 1e-9) << s.name;
    }
  }
}

TEST(CstarNorm, IsACstarSeminorm) {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial)
    for (const auto& s : testing::zoo()) {
      if (classify(s.g).kind == GroupoidClass::other) continue;
      const auto mu = testing::random_full_measure(s.g.unit_count(), rng);
      const auto f = random_on(s.g, rng), k = random_on(s.g, rng);
      const double nf = cstar_norm(f, s.g, s.h, mu);
      const double nk = cstar_norm(k, s.g, s.h, mu);
      EXPECT_LE(cstar_norm(convolve(f, k, s.g, s.h), s.g, s.h, mu), nf * nk * (1.0 + 1e-10) + 1e-10) << s.name;
      EXPECT_NEAR(cstar_norm(involution(f, s.g), s.g, s.h, mu), nf, 1e-9 * (1.0 + nf)) << s.name;
      EXPECT_NEAR(cstar_norm(convolve(involution(f, s.g), f, s.g, s.h), s.g, s.h, mu), nf * nf, 1e-8 * (1.0 + nf * nf))
          << s.name;
    }
}

TEST(DirectSum, SecondComponentEmpty) {
  const auto g = pair_groupoid(2);
  const auto h = counting_haar(g);
  const auto mu = uniform_measure(2);
  const auto t = random_representation_triple(g, h, mu, 1, 1);
  const auto d = direct_sum_decompose(t, g, h, mu, UnitMeasure{{0.0, 0.0}}, 1.0, 0.0);
  EXPECT_TRUE(d.part0.has_value());
  EXPECT_FALSE(d.part1.has_value());
  EXPECT_EQ(d.report.max_off_block, 0.0);
  EXPECT_LE(d.report.max_block_deviation, 1e-15);
}

TEST(DirectSum, DisjointPairGroupoidsSplitExactly) {
  const auto g = disjoint_union(pair_groupoid(2), pair_groupoid(3));
  const auto h = counting_haar(g);
  const UnitMeasure mu0{{0.5, 0.5, 0.0, 0.0, 0.0}};
  const UnitMeasure mu1{{0.0, 0.0, 0.2, 0.3, 0.5}};
  UnitMeasure mu{std::vector<double>(5)};
  for (Unit x = 0; x < 5; ++x) mu[x] = 0.4 * mu0[x] + 0.6 * mu1[x];
  const auto t = random_representation_triple(g, h, mu, 2, 11);
  const auto d = direct_sum_decompose(t, g, h, mu0, mu1, 0.4, 0.6, 16, 3);
  EXPECT_EQ(d.report.max_off_block, 0.0);
  EXPECT_LE(d.report.max_block_deviation, 1e-12);
  EXPECT_EQ(d.report.samples, g.arrow_count() + 16);
  ASSERT_TRUE(d.part1.has_value());
  EXPECT_EQ(d.part1->scale, 0.6);
}

TEST(DirectSum, RejectsBadHypotheses) {
  const auto g = unit_groupoid(2);
  const auto h = counting_haar(g);
  const auto mu = uniform_measure(2);
  const auto t = trivial_triple(g, mu);
  EXPECT_THROW(direct_sum_decompose(t, g, h, mu, mu, 0.5, 0.5), std::domain_error);
  EXPECT_THROW(direct_sum_decompose(t, g, h, UnitMeasure{{1.0, 0.0}}, UnitMeasure{{0.0, 1.0}}, 0.1, 0.1),
               std::domain_error);
  const auto p = pair_groupoid(2);
  const auto tp = trivial_triple(p, mu);
  EXPECT_THROW(direct_sum_decompose(tp, p, counting_haar(p), UnitMeasure{{1.0, 0.0}}, UnitMeasure{{0.0, 1.0}}, 0.5, 0.5),
               std::domain_error);
}

TEST(Intertwiner, SameMeasureIsExact) {
  Rng rng(52);
  const auto g = cyclic_group_bundle(2, 3);
  const auto h = counting_haar(g);
  const auto mu = testing::random_full_measure(2, rng);
  const auto t = random_representation_triple(g, h, mu, 2, 4);
  EXPECT_EQ(intertwiner_check(t, g, h, mu, random_on(g, rng)), 0.0);
}

TEST(Intertwiner, BundleExample) {
  Rng rng(53);
  const auto g = cyclic_group_bundle(3, 2);
  const auto h = counting_haar(g);
  const auto t = random_representation_triple(g, h, uniform_measure(3), 2, 8);
  EXPECT_LE(intertwiner_check(t, g, h, UnitMeasure{{0.5, 0.25, 0.25}}, random_on(g, rng)), 1e-9);
  EXPECT_LE(intertwiner_check(t, g, h, UnitMeasure{{0.5, 0.0, 0.25}}, random_on(g, rng)), 1e-9);
}

TEST(Intertwiner, RestrictionOnPairGroupoidRejected) {
  Rng rng(54);
  const auto g = pair_groupoid(3);
  const auto h = counting_haar(g);
  const auto mu = testing::random_full_measure(3, rng);
  const auto t = random_representation_triple(g, h, mu, 1, 2);
  const UnitMeasure restricted = normalize(UnitMeasure{{mu[0], mu[1], 0.0}});
  EXPECT_THROW(intertwiner_check(t, g, h, restricted, random_on(g, rng)), std::domain_error);
  EXPECT_THROW(intertwiner_check(trivial_triple(unit_groupoid(2), UnitMeasure{{1.0, 0.0}}), unit_groupoid(2),
                                 counting_haar(unit_groupoid(2)), UnitMeasure{{0.0, 1.0}}, GroupoidFunction(2)),
               std::domain_error);
}

TEST(Intertwiner, RandomInstances) {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = trial % 2 ? cyclic_group_bundle(rng.index(1, 3), rng.index(1, 4)) : unit_groupoid(rng.index(1, 6));
    const auto h = counting_haar(g);
    const auto mu = testing::random_full_measure(g.unit_count(), rng);
    UnitMeasure mp = mu;
    for (auto& w : mp.weights) w = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.05, 1.0);
    const auto t = random_representation_triple(g, h, mu, 3, static_cast<std::uint64_t>(trial));
    EXPECT_LE(intertwiner_check(t, g, h, mp, random_on(g, rng)), 1e-9);
  }
}

}  // namespace
}  // namespace gfs
