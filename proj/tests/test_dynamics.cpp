#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "horo/dynamics.hpp"
#include "oracles.hpp"

using namespace horo;

namespace {

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << error_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

const PlanePoint I(0.0, 1.0);

// z -> ((1 - i) z + i) / (-i z + 1 + i)
MobiusSelfMap parabolic() { return disk_mobius({1.0, -1.0}, I); }

// Disk conjugate of w -> lambda w under w = (1 + z) / (1 - z).
MobiusSelfMap hyperbolic(double lambda) { return to_disk_model(halfplane_mobius(lambda, 0.0, 0.0, 1.0)); }

MobiusSelfMap rotation(double t) { return disk_mobius(std::polar(1.0, t / 2.0), 0.0); }

}  // namespace

TEST(Classify, ParabolicDiskExample) {
  MobiusSelfMap m = parabolic();
  EXPECT_EQ(std::norm(m.a) - std::norm(m.b), 1.0);
  Classification c = classify(m);
  EXPECT_EQ(c.kind, MobiusClass::Parabolic);
  EXPECT_NEAR(c.trace, 2.0, 1e-15);
  ASSERT_EQ(c.fixed_points.size(), 1u);
  EXPECT_LT(std::abs(c.fixed_points[0] - 1.0), 1e-15);
  EXPECT_LT(std::abs(m(1.0) - 1.0), 1e-15);
  // difference quotient from inside the disk
  double h = 1e-6;
  PlanePoint d = (m(1.0 - h) - m(1.0)) / -h;
  EXPECT_LT(std::abs(d - 1.0), 1e-5);
}

TEST(Classify, HalfPlaneTranslationIsParabolicAtInfinity) {
  Classification c = classify(halfplane_mobius(1.0, 1.0, 0.0, 1.0));
  EXPECT_EQ(c.kind, MobiusClass::Parabolic);
  ASSERT_EQ(c.fixed_points.size(), 1u);
  EXPECT_TRUE(is_infinity(c.fixed_points[0]));
  EXPECT_EQ(halfplane_mobius(1.0, 1.0, 0.0, 1.0)(PlanePoint(1.0, 2.0)), PlanePoint(1.0, 3.0));
}

TEST(Classify, HalfPlaneDilationIsHyperbolic) {
  MobiusSelfMap m = halfplane_mobius(2.0, 0.0, 0.0, 1.0);
  EXPECT_LT(std::abs(m(PlanePoint(1.0, 1.0)) - PlanePoint(2.0, 2.0)), 1e-15);
  Classification c = classify(m);
  EXPECT_EQ(c.kind, MobiusClass::HyperbolicAutomorphism);
  ASSERT_EQ(c.fixed_points.size(), 2u);
  EXPECT_TRUE(is_infinity(c.fixed_points[0]));
  EXPECT_LT(std::abs(c.fixed_points[1]), 1e-12);
  EXPECT_NEAR(c.multiplier, 2.0, 1e-12);
}

TEST(Classify, EllipticAndIdentity) {
  Classification r = classify(rotation(0.3));
  EXPECT_EQ(r.kind, MobiusClass::Elliptic);
  EXPECT_EQ(r.fixed_points[0], 0.0);
  Classification id = classify(disk_mobius(1.0, 0.0));
  EXPECT_EQ(id.kind, MobiusClass::Elliptic);
  // elliptic map with an interior fixed point p: conjugate of a rotation
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    PlanePoint p = oracle::random_in_disk(rng, 0.9);
    double t = 0.1 + 5.0 * k / 50.0;
    // T_p o R_t o T_p^{-1} with T_p(z) = (z + p) / (1 + conj(p) z)
    PlanePoint e = std::polar(1.0, t / 2.0), ec = std::conj(e);
    PlanePoint a = e - std::norm(p) * ec, b = p * (ec - e);
    Classification c = classify(disk_mobius(a, b));
    EXPECT_EQ(c.kind, MobiusClass::Elliptic);
    EXPECT_LT(std::abs(c.fixed_points[0] - p), 1e-12) << p;
  }
}

TEST(Classify, HyperbolicFixedPointsAreFixedAndAttractingFirst) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    double lambda = 1.5 + k;
    oracle::Automorphism t{oracle::random_in_disk(rng, 0.8), 1.0 + k};
    // conjugate hyperbolic(lambda) by t, built from the matrices
    MobiusSelfMap h = hyperbolic(lambda);
    PlanePoint e = std::polar(1.0, t.t / 2.0);
    // t(z) = e^2 (z - a) / (1 - conj(a) z) ~ [[e, -e a], [-conj(e) conj(a), conj(e)]]
    PlanePoint p = e, q = -e * t.a, r = -std::conj(e) * std::conj(t.a), s = std::conj(e);
    PlanePoint hp = h.a, hq = h.b, hr = std::conj(h.b), hs = std::conj(h.a);
    // t o h o t^{-1}, t^{-1} ~ [[s, -q], [-r, p]]
    PlanePoint m1p = p * hp + q * hr, m1q = p * hq + q * hs, m1r = r * hp + s * hr, m1s = r * hq + s * hs;
    PlanePoint A = m1p * s - m1q * r;
    PlanePoint B = -m1p * q + m1q * p;
    MobiusSelfMap g = disk_mobius(A, B);
    Classification c = classify(g);
    ASSERT_EQ(c.kind, MobiusClass::HyperbolicAutomorphism);
    EXPECT_NEAR(c.multiplier, lambda, 1e-9 * lambda);
    EXPECT_LT(std::abs(c.fixed_points[0] - t(1.0)), 1e-9);
    EXPECT_LT(std::abs(c.fixed_points[1] - t(-1.0)), 1e-9);
    for (auto z : c.fixed_points) EXPECT_LT(std::abs(g(z) - z), 1e-9);
  }
}

TEST(Classify, RejectsDegenerateCoefficients) {
  expect_code(ErrorCode::NotAnAutomorphism, [] { disk_mobius(1.0, 1.0); });
  expect_code(ErrorCode::NotAnAutomorphism, [] { disk_mobius(0.5, 1.0); });
  expect_code(ErrorCode::NotAnAutomorphism, [] { halfplane_mobius(1.0, 1.0, 1.0, 1.0); });
  MobiusSelfMap raw;
  raw.a = 2.0;
  expect_code(ErrorCode::NotAnAutomorphism, [&] { classify(raw); });
}

TEST(Mobius, HalfPlaneConjugateAgreesWithComposition) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    double al = u(rng), be = u(rng), ga = u(rng), de = u(rng);
    if (al * de - be * ga <= 0.1) continue;
    MobiusSelfMap h = halfplane_mobius(al, be, ga, de);
    MobiusSelfMap d = to_disk_model(h);
    EXPECT_NEAR(std::norm(d.a) - std::norm(d.b), 1.0, 1e-12);
    EXPECT_NEAR(d.trace(), h.trace(), 1e-12);
    PlanePoint z = oracle::random_in_disk(rng, 0.9);
    PlanePoint w = (1.0 + z) / (1.0 - z);
    PlanePoint hw = h(w);
    EXPECT_GT(hw.real(), 0.0);
    EXPECT_LT(std::abs(d(z) - (hw - 1.0) / (hw + 1.0)), 1e-10);
  }
}

TEST(Mobius, PreservesDiskDistance) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    MobiusSelfMap m = disk_mobius(oracle::random_in_disk(rng, 1.0) + 2.5, oracle::random_in_disk(rng, 1.4));
    PlanePoint z = oracle::random_in_disk(rng, 0.9), w = oracle::random_in_disk(rng, 0.9);
    double d = disk_distance(z, w);
    EXPECT_NEAR(disk_distance(m(z), m(w)), d, 1e-12 * std::max(1.0, d) * 100.0);
  }
}

TEST(Iterate, ParabolicOrbitMatchesClosedForm) {
  // Under w = (1 + z) / (1 - z) the map is w -> w + 2i, so z_n = i n / (1 + i n).
  OrbitRecord o = iterate(SelfMap(parabolic()), 0.0, 200);
  ASSERT_EQ(o.points.size(), 201u);
  ASSERT_EQ(o.step_distances.size(), 201u);
  EXPECT_EQ(o.hint, "parabolic");
  EXPECT_FALSE(o.reached_boundary);
  for (int n = 0; n <= 200; ++n) {
    PlanePoint exact = I * double(n) / (1.0 + I * double(n));
    EXPECT_LT(std::abs(o.points[n] - exact), 1e-12) << n;
  }
  EXPECT_LT(std::abs(o.points[200] - 1.0), 0.05);
  for (int n = 1; n <= 200; ++n) EXPECT_LT(std::abs(o.points[n] - 1.0), std::abs(o.points[n - 1] - 1.0));
  // automorphism: constant steps
  for (double d : o.step_distances) EXPECT_NEAR(d, o.step_distances[0], 1e-9);
}

TEST(Iterate, RotationStaysOnCircle) {
  OrbitRecord o = iterate(SelfMap(rotation(M_PI / 2.0)), 0.5, 40);
  EXPECT_EQ(o.hint, "elliptic");
  for (auto z : o.points) EXPECT_NEAR(std::abs(z), 0.5, 1e-15);
  EXPECT_LT(std::abs(o.points[1] - PlanePoint(0.0, 0.5)), 1e-15);
  EXPECT_LT(std::abs(o.points[4] - 0.5), 1e-14);
}

TEST(Iterate, SchwarzPickStepsAreNonIncreasing) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    SelfMap f = [&]() -> SelfMap {
      if (trial % 2) return SelfMap(disk_mobius(oracle::random_in_disk(rng, 1.0) + 1.5, oracle::random_in_disk(rng, 0.5)));
      std::vector<PlanePoint> zeros;
      for (int k = deg(rng); k > 0; --k) zeros.push_back(oracle::random_in_disk(rng, 0.9));
      return SelfMap(make_blaschke(oracle::random_on_circle(rng), zeros));
    }();
    OrbitRecord o = iterate(f, oracle::random_in_disk(rng, 0.9), 12);
    // distances between points at depth 1 - |z| = delta carry rounding errors of order eps / delta
    double delta = 1.0;
    for (auto z : o.points) delta = std::min(delta, 1.0 - std::abs(z));
    delta = std::min(delta, 1.0 - std::abs(f(o.points.back())));
    for (size_t k = 1; k < o.step_distances.size(); ++k) {
      double d = o.step_distances[k - 1];
      EXPECT_LE(o.step_distances[k], d + 1e-12 * std::max(1.0, d) + 1e-15 / delta) << trial << " " << k;
    }
  }
}

TEST(Iterate, BoundaryHitAtDoubleResolutionCutsTheOrbit) {
  SelfMap half(Model::Disk, [](PlanePoint z) { return (1.0 + z) / 2.0; }, "half");
  OrbitRecord o = iterate(half, 0.0, 100);
  EXPECT_TRUE(o.reached_boundary);
  EXPECT_EQ(o.hint, "escaping");
  EXPECT_LT(o.points.size(), 60u);
  EXPECT_EQ(o.points.size(), o.step_distances.size());
  for (auto z : o.points) EXPECT_LT(std::abs(z), 1.0);
}

TEST(Iterate, ContractErrors) {
  SelfMap outward(Model::Disk, [](PlanePoint z) { return 1.5 * z; }, "outward");
  expect_code(ErrorCode::SelfMapViolation, [&] { iterate(outward, 0.9, 5); });
  SelfMap left(Model::HalfPlane, [](PlanePoint w) { return w - 2.0; }, "left");
  expect_code(ErrorCode::SelfMapViolation, [&] { iterate(left, 1.0, 5); });
  expect_code(ErrorCode::PointOutsideDomain, [] { iterate(SelfMap(parabolic()), 1.0, 5); });
  expect_code(ErrorCode::PointOutsideDomain, [] { iterate(SelfMap(halfplane_mobius(2, 0, 0, 1)), -1.0, 5); });
  expect_code(ErrorCode::InvalidParameter, [] { iterate(SelfMap(parabolic()), 0.0, 0); });
}

TEST(DenjoyWolff, ParabolicExample) {
  DenjoyWolffResult r = denjoy_wolff_point(SelfMap(parabolic()));
  EXPECT_TRUE(r.on_boundary);
  EXPECT_EQ(r.tolerance, 1e-4);
  EXPECT_LT(std::abs(r.point - 1.0), 1e-4);
  ASSERT_EQ(r.estimates.size(), 3u);
  for (auto e : r.estimates) EXPECT_LT(std::abs(e - 1.0), 1e-4);
  EXPECT_LE(r.spread, kDenjoyWolffAgreement);
  EXPECT_LE(r.iterations, 100000);
}

TEST(DenjoyWolff, HyperbolicExample) {
  DenjoyWolffResult r = denjoy_wolff_point(SelfMap(hyperbolic(2.0)));
  EXPECT_TRUE(r.on_boundary);
  EXPECT_LT(std::abs(r.point - 1.0), 1e-8);
  EXPECT_LT(r.iterations, 200);
}

TEST(DenjoyWolff, EllipticHasNoBoundaryPoint) {
  DenjoyWolffResult r = denjoy_wolff_point(SelfMap(rotation(0.3)));
  EXPECT_FALSE(r.on_boundary);
  EXPECT_LT(std::abs(r.point), 1e-15);
}

TEST(DenjoyWolff, HalfPlaneMaps) {
  DenjoyWolffResult t = denjoy_wolff_point(SelfMap(halfplane_mobius(1.0, 1.0, 0.0, 1.0)));
  EXPECT_TRUE(t.on_boundary);
  EXPECT_TRUE(is_infinity(t.point));
  DenjoyWolffResult d = denjoy_wolff_point(SelfMap(halfplane_mobius(2.0, 0.0, 0.0, 1.0)));
  EXPECT_TRUE(is_infinity(d.point));
  // w -> w / 2 has its Denjoy-Wolff point at 0
  DenjoyWolffResult h = denjoy_wolff_point(SelfMap(halfplane_mobius(1.0, 0.0, 0.0, 2.0)));
  EXPECT_LT(std::abs(h.point), 1e-7);
}

TEST(DenjoyWolff, GeneralMaps) {
  // interior attracting fixed point 0
  DenjoyWolffResult b = denjoy_wolff_point(SelfMap(make_blaschke(1.0, {0.0, 0.5})));
  EXPECT_FALSE(b.on_boundary);
  EXPECT_LT(std::abs(b.point), 1e-8);
  // z -> (1 + z) / 2 contracts toward 1
  SelfMap half(Model::Disk, [](PlanePoint z) { return (1.0 + z) / 2.0; }, "half");
  DenjoyWolffResult h = denjoy_wolff_point(half);
  EXPECT_TRUE(h.on_boundary);
  EXPECT_LT(std::abs(h.point - 1.0), 1e-8);
  // custom half-plane map w -> w + 1 + i escapes to infinity, algebraically
  SelfMap shift(Model::HalfPlane, [](PlanePoint w) { return w + PlanePoint(1.0, 1.0); }, "shift");
  DenjoyWolffOptions slow;
  slow.tolerance = 1e-4;
  DenjoyWolffResult s = denjoy_wolff_point(shift, slow);
  EXPECT_TRUE(s.on_boundary);
  EXPECT_TRUE(is_infinity(s.point));
}

TEST(DenjoyWolff, BudgetExhaustionIsAConvergenceFailure) {
  DenjoyWolffOptions o;
  o.budget = 100;
  expect_code(ErrorCode::ConvergenceFailure, [&] { denjoy_wolff_point(SelfMap(parabolic()), o); });
  expect_code(ErrorCode::ConvergenceFailure,
              [] { denjoy_wolff_point(SelfMap(Model::Disk, [](PlanePoint z) { return I * z; }, "rot")); });
}

TEST(Divergence, DilationRateIsHalfLogTwo) {
  DivergenceEstimate e = divergence_rate(SelfMap(halfplane_mobius(2.0, 0.0, 0.0, 1.0)), 1.0, 64);
  EXPECT_NEAR(e.rate, 0.5 * std::log(2.0), 1e-10);
  EXPECT_EQ(e.steps, 64);
  EXPECT_LT(e.diagnostic, 1e-12);
}

TEST(Divergence, TranslationRateDecaysToZero) {
  SelfMap t(halfplane_mobius(1.0, 1.0, 0.0, 1.0));
  DivergenceEstimate e3 = divergence_rate(t, 1.0, 1000), e4 = divergence_rate(t, 1.0, 10000),
                     e5 = divergence_rate(t, 1.0, 100000);
  EXPECT_LT(e5.rate, 2e-4);
  EXPECT_GT(e3.diagnostic, e4.diagnostic);
  EXPECT_GT(e4.diagnostic, e5.diagnostic);
  // oracle: k(1, 1 + i n) = asinh(n / 2)
  EXPECT_NEAR(e5.rate, std::asinh(1e5 / 2.0) / 1e5, 1e-15);
}

TEST(Divergence, IdentityIsZero) {
  DivergenceEstimate e = divergence_rate(SelfMap(disk_mobius(1.0, 0.0)), PlanePoint(0.2, 0.1), 10);
  EXPECT_EQ(e.rate, 0.0);
  EXPECT_EQ(e.diagnostic, 0.0);
}

TEST(Divergence, MatchesMultiplierOfHyperbolicMaps) {
  for (double lambda : {1.1, 3.0, 7.5}) {
    MobiusSelfMap m = halfplane_mobius(lambda, 0.0, 0.0, 1.0);
    DivergenceEstimate e = divergence_rate(SelfMap(m), 1.0, 64);
    EXPECT_NEAR(e.rate, 0.5 * std::log(classify(m).multiplier), 1e-10);
  }
}

TEST(Julia, ParabolicHorocyclesAreInvariant) {
  JuliaReport r = julia_invariance_check(SelfMap(parabolic()), 1.0, {0.5, 1.0, 2.0}, 10000);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.total_violations(), 0);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.samples, 10000);
    EXPECT_LE(row.max_increase, 1e-10);
  }
}

TEST(Julia, HyperbolicHorocyclesContract) {
  JuliaReport r = julia_invariance_check(SelfMap(hyperbolic(2.0)), 1.0, {0.5, 1.0, 2.0}, 10000);
  EXPECT_EQ(r.total_violations(), 0);
  for (const auto& row : r.rows) EXPECT_NEAR(row.max_increase, -0.5, 1e-8);
}

TEST(Julia, HalfPlaneTranslationAtInfinity) {
  JuliaReport r = julia_invariance_check(SelfMap(halfplane_mobius(1.0, 1.0, 0.0, 1.0)), kInfinity, {1.0}, 1000);
  EXPECT_EQ(r.total_violations(), 0);
}

TEST(Julia, MisdeclaredPointIsDetected) {
  JuliaReport r = julia_invariance_check(SelfMap(rotation(0.3)), 1.0, {0.5, 1.0, 2.0}, 1000);
  EXPECT_GT(r.total_violations(), 0);
  JuliaReport w = julia_invariance_check(SelfMap(parabolic()), -1.0, {0.5}, 1000);
  EXPECT_GT(w.total_violations(), 0);
}

TEST(SelfMapIo, RoundTrip) {
  for (const char* text : {R"({"model":"disk","kind":"mobius","coeffs":[[1,-1],[0,1]]})",
                           R"({"model":"halfplane","kind":"mobius","coeffs":[1,1,0,1]})",
                           R"({"model":"disk","kind":"blaschke","coeffs":[1,[0.5,0.25],0]})"}) {
    SelfMap f = selfmap_from_json_text(text);
    SelfMap g = selfmap_from_json_text(selfmap_to_json_text(f));
    EXPECT_EQ(selfmap_to_json_text(g), selfmap_to_json_text(f));
    PlanePoint z = f.model() == Model::Disk ? PlanePoint(0.3, 0.2) : PlanePoint(1.0, 0.5);
    EXPECT_EQ(f(z), g(z));
  }
  SelfMap p = selfmap_from_json_text(R"({"model":"disk","kind":"mobius","coeffs":[[1,-1],[0,1]]})");
  EXPECT_LT(std::abs(p(0.3) - parabolic()(0.3)), 1e-16);
}

TEST(SelfMapIo, Errors) {
  expect_code(ErrorCode::FormatError, [] { selfmap_from_json_text("[1"); });
  expect_code(ErrorCode::FormatError, [] { selfmap_from_json_text(R"({"model":"disk","kind":"mobius"})"); });
  expect_code(ErrorCode::FormatError, [] { selfmap_from_json_text(R"({"model":"ball","kind":"mobius","coeffs":[1,0]})"); });
  expect_code(ErrorCode::FormatError, [] { selfmap_from_json_text(R"({"model":"disk","kind":"mobius","coeffs":[1]})"); });
  expect_code(ErrorCode::FormatError,
              [] { selfmap_from_json_text(R"({"model":"halfplane","kind":"blaschke","coeffs":[1]})"); });
  expect_code(ErrorCode::NotAnAutomorphism,
              [] { selfmap_from_json_text(R"({"model":"disk","kind":"mobius","coeffs":[1,[0,1]]})"); });
  expect_code(ErrorCode::InvalidParameter,
              [] { selfmap_from_json_text(R"({"model":"disk","kind":"blaschke","coeffs":[1,1.5]})"); });
  expect_code(ErrorCode::InvalidParameter,
              [] { selfmap_to_json_text(SelfMap(Model::Disk, [](PlanePoint z) { return z; })); });
}

// Conjugated orbits in the truncated comb.

namespace {

const ConformalMap& comb() {
  static const ConformalMap m = fit_map(make_comb(SequenceRule{}, 4), 256, 0.5);
  return m;
}

}  // namespace

TEST(Conjugated, ParabolicOrbitClustersAtTheSlitTip) {
  // z -> -phi(-z) fixes -1, the preimage of the tip 0 of the slit along [-1, 0]
  SelfMap phi(disk_mobius({1.0, -1.0}, -I));
  ConjugatedOrbit a = conjugated_orbit(comb(), phi, PlanePoint(0.5, 0.2), 100);
  ConjugatedOrbit b = conjugated_orbit(comb(), phi, PlanePoint(0.5, 0.2), 400);
  EXPECT_EQ(b.orbit.points.size(), 401u);
  EXPECT_LT(b.tail_diameter, a.tail_diameter);
  EXPECT_LT(std::abs(b.orbit.points.back()), 0.05);
  EXPECT_LT(std::abs(b.orbit.points.back()), std::abs(a.orbit.points.back()));
}

TEST(Conjugated, EllipticOrbitStaysCompact) {
  ConjugatedOrbit c = conjugated_orbit(comb(), SelfMap(rotation(0.3)), PlanePoint(0.5, 0.3), 200);
  EXPECT_GT(c.min_boundary_distance, 1e-3);
  EXPECT_FALSE(c.orbit.reached_boundary);
}

TEST(Conjugated, IdentityOrbitIsConstant) {
  PlanePoint w0(0.3, -0.4);
  ConjugatedOrbit c = conjugated_orbit(comb(), SelfMap(disk_mobius(1.0, 0.0)), w0, 20);
  EXPECT_EQ(c.orbit.points.front(), w0);
  for (auto w : c.orbit.points) EXPECT_LT(std::abs(w - w0), 1e-8);
  for (double d : c.orbit.step_distances) EXPECT_EQ(d, 0.0);
}

TEST(Conjugated, DivergenceRateIsConjugationInvariant) {
  SelfMap phi(disk_mobius({1.0, -1.0}, -I));
  PlanePoint w0(0.5, 0.2);
  ConjugatedOrbit c = conjugated_orbit(comb(), phi, w0, 50);
  double in_domain = conformal_distance(comb(), c.orbit.points.back(), w0) / 50.0;
  double in_disk = divergence_rate(phi, inverse(comb(), w0), 50).rate;
  EXPECT_NEAR(in_domain, in_disk, 1e-7);
}

TEST(Conjugated, RequiresADiskMap) {
  expect_code(ErrorCode::InvalidParameter,
              [] { conjugated_orbit(comb(), SelfMap(halfplane_mobius(2, 0, 0, 1)), 0.5, 5); });
}
