#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "horo/hyperbolic.hpp"
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

}  // namespace

TEST(Densities, DiskValues) {
  EXPECT_DOUBLE_EQ(disk_density(0.0), 1.0);
  EXPECT_NEAR(disk_density(0.5), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(disk_density({0.0, 0.9}), 5.263157894736842, 1e-12);
  expect_code(ErrorCode::PointOutsideDomain, [] { disk_density(1.0); });
}

TEST(Densities, HalfPlaneValues) {
  EXPECT_DOUBLE_EQ(halfplane_density(1.0), 0.5);
  EXPECT_DOUBLE_EQ(halfplane_density({0.25, 7.0}), 2.0);
  EXPECT_DOUBLE_EQ(halfplane_density(10.0), 0.05);
  expect_code(ErrorCode::PointOutsideDomain, [] { halfplane_density({0.0, 1.0}); });
}

TEST(Densities, StripValues) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(strip_density({0.0, pi / 2}, 0.0, pi), 0.5, 1e-15);
  EXPECT_NEAR(strip_density({3.0, pi / 2}, 0.0, pi), 0.5, 1e-15);
  EXPECT_NEAR(strip_density({0.0, 0.5}, 0.0, 1.0), pi / 2, 1e-15);
  expect_code(ErrorCode::PointOutsideDomain, [] { strip_density({0.0, 1.0}, 0.0, 1.0); });
}

TEST(Densities, StripMatchesHalfPlanePushforward) {
  // w = exp(z) maps the strip 0 < Im z < pi/2... onto a sector; for (0, pi) onto the upper
  // half-plane, whose density is 1/(2 Im w). Pull back: |w'| / (2 Im w).
  for (double y : {0.1, 0.7, 1.5, 2.9})
    for (double x : {-1.0, 0.0, 2.0}) {
      std::complex<double> z(x, y);
      std::complex<double> w = std::exp(z);
      double pulled = std::abs(w) / (2.0 * w.imag());
      EXPECT_NEAR(strip_density(z, 0.0, std::numbers::pi), pulled, 1e-12 * pulled);
    }
}

TEST(Distances, DiskExamplesAgainstQuadrature) {
  EXPECT_EQ(disk_distance(0.0, 0.0), 0.0);
  double q = oracle::simpson([](double t) { return 1.0 / (1.0 - t * t); }, 0.0, 0.5);
  EXPECT_NEAR(disk_distance(0.0, 0.5), q, 1e-10);
  EXPECT_NEAR(disk_distance(0.0, 0.5), 0.5 * std::log(3.0), 1e-15);
  double q2 = oracle::simpson([](double t) { return 1.0 / (1.0 - t * t); }, -0.3, 0.3);
  EXPECT_NEAR(disk_distance(0.3, -0.3), q2, 1e-10);
  EXPECT_NEAR(disk_distance(0.3, -0.3), std::atanh(0.6 / 1.09), 1e-15);
}

TEST(Distances, HalfPlaneExamples) {
  EXPECT_EQ(halfplane_distance(1.0, 1.0), 0.0);
  double q = oracle::simpson([](double t) { return 0.5 / t; }, 1.0, std::exp(2.0));
  EXPECT_NEAR(halfplane_distance(1.0, std::exp(2.0)), q, 1e-10);
  EXPECT_NEAR(halfplane_distance(1.0, {1.0, 1.0}), std::atanh(1.0 / std::sqrt(5.0)), 1e-15);
  // Cayley pullback with sigma = 1: z = (w - 1) / (w + 1)
  std::complex<double> w1(0.3, -2.0), w2(4.0, 1.5);
  auto pull = [](std::complex<double> w) { return (w - 1.0) / (w + 1.0); };
  EXPECT_NEAR(halfplane_distance(w1, w2), disk_distance(pull(w1), pull(w2)), 1e-13);
  EXPECT_NEAR(halfplane_distance(1.0, std::ldexp(1.0, 64)), 32.0 * std::numbers::ln2, 1e-13);
}

TEST(Distances, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    auto a = oracle::random_in_disk(rng), b = oracle::random_in_disk(rng), c = oracle::random_in_disk(rng);
    double ab = disk_distance(a, b), ba = disk_distance(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, disk_distance(a, c) + disk_distance(c, b) + 1e-12);
  }
}

TEST(Distances, MobiusInvariance) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    oracle::Automorphism phi{oracle::random_in_disk(rng, 0.9), 6.0 * k / 2000.0};
    auto a = oracle::random_in_disk(rng, 0.95), b = oracle::random_in_disk(rng, 0.95);
    EXPECT_NEAR(disk_distance(phi(a), phi(b)), disk_distance(a, b), 1e-12);
  }
}

TEST(Horocycles, EuclideanForm) {
  auto e = horocycle_euclidean(make_horocycle(1.0, 1.0));
  EXPECT_EQ(e.center, PlanePoint(0.5, 0.0));
  EXPECT_EQ(e.radius, 0.5);
  auto f = horocycle_euclidean(make_horocycle({0.0, 1.0}, 3.0));
  EXPECT_NEAR(std::abs(f.center - PlanePoint(0.0, 0.25)), 0.0, 1e-16);
  EXPECT_EQ(f.radius, 0.75);
  auto g = horocycle_euclidean(make_horocycle(1.0, 1e-6));
  EXPECT_NEAR(g.center.real(), 1.0, 1e-6);
  EXPECT_NEAR(g.radius, 1e-6, 1e-11);
  expect_code(ErrorCode::BasePointNotOnCircle, [] { make_horocycle(0.9, 1.0); });
  expect_code(ErrorCode::InvalidParameter, [] { make_horocycle(1.0, 0.0); });
}

TEST(Horocycles, MembershipExamples) {
  EXPECT_TRUE(horocycle_contains(make_horocycle(1.0, 2.0), 0.0));
  EXPECT_FALSE(horocycle_contains(make_horocycle(1.0, 0.5), 0.0));
  EXPECT_NEAR(horocycle_quotient(1.0, 0.5), 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(horocycle_contains(make_horocycle(1.0, 1.0), 0.5));
  expect_code(ErrorCode::PointOutsideDomain, [] { horocycle_contains(make_horocycle(1.0, 1.0), {0.0, 1.0}); });
}

TEST(Horocycles, MembershipMatchesEuclideanDisc) {
  std::mt19937_64 rng(3);
  for (int pair = 0; pair < 5; ++pair) {
    auto h = make_horocycle(oracle::random_on_circle(rng), std::exp(-3.0 + 1.5 * pair));
    auto e = horocycle_euclidean(h);
    for (int k = 0; k < 100000; ++k) {
      auto z = oracle::random_in_disk(rng, 0.999999);
      ASSERT_EQ(horocycle_contains(h, z), e.contains(z));
    }
  }
}

TEST(Horocycles, BusemannDuality) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50000; ++k) {
    auto s = oracle::random_on_circle(rng);
    double r = std::exp(std::uniform_real_distribution<double>(-4.0, 4.0)(rng));
    auto z = oracle::random_in_disk(rng);
    ASSERT_EQ(horocycle_contains(make_horocycle(s, r), z), busemann_disk(s, z) < 0.5 * std::log(r));
  }
}

TEST(Horocycles, BusemannLevelRadius) {
  auto h = busemann_horocycle({0.0, 1.0, 0.7});
  EXPECT_NEAR(h.radius_param, std::exp(1.4), 1e-14);
  // From another ray base the level is measured relative to that point.
  auto g = busemann_horocycle({0.5, 1.0, 0.0});
  EXPECT_TRUE(std::abs(horocycle_quotient(1.0, 0.5) - g.radius_param) < 1e-15);
}

TEST(Busemann, ExamplesAgainstFiniteDifference) {
  EXPECT_EQ(busemann_disk(1.0, 0.0), 0.0);
  EXPECT_NEAR(busemann_disk(1.0, 0.5), -0.5 * std::log(3.0), 1e-15);
  EXPECT_NEAR(busemann_disk(1.0, -0.5), 0.5 * std::log(3.0), 1e-15);
  auto fd = [](PlanePoint s, PlanePoint z) {
    PlanePoint w = s * (1.0 - 1e-8);
    return std::atanh(std::abs(z - w) / std::abs(1.0 - std::conj(z) * w)) - std::atanh(std::abs(w));
  };
  for (double x : {0.5, -0.5, 0.2}) EXPECT_NEAR(busemann_disk(1.0, x), fd(1.0, x), 1e-6);
  expect_code(ErrorCode::BasePointNotOnCircle, [] { busemann_disk(1.1, 0.0); });
}

TEST(Cayley, ExamplesAndHorocycleImage) {
  EXPECT_EQ(cayley(1.0, 0.0), PlanePoint(1.0));
  EXPECT_NEAR(std::abs(cayley({0.0, 1.0}, 0.0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(cayley(1.0, 1.0 / 3.0).real(), 2.0, 1e-15);
  std::mt19937_64 rng(9);
  for (double r : {0.5, 1.0, 2.0}) {
    for (int k = 0; k < 10000; ++k) {
      auto s = oracle::random_on_circle(rng);
      auto h = make_horocycle(s, r);
      auto e = horocycle_euclidean(h);
      PlanePoint z = e.center + e.radius * oracle::random_in_disk(rng, 0.999999);
      if (!horocycle_contains(h, z)) continue;
      ASSERT_GT(cayley(s, z).real(), 1.0 / r);
    }
  }
  expect_code(ErrorCode::SingularPoint, [] { cayley(1.0, 1.0); });
  EXPECT_NEAR(std::abs(cayley_inverse({0.0, 1.0}, cayley({0.0, 1.0}, {0.2, 0.3})) - PlanePoint(0.2, 0.3)), 0.0, 1e-15);
}

TEST(Quadrature, RadialIntegralOfDensity) {
  for (double r = 0.1; r < 0.995; r += (r < 0.85 ? 0.1 : 0.045)) {
    double q = oracle::simpson([](double t) { return disk_density(t); }, 0.0, r, 200000);
    EXPECT_NEAR(q, std::atanh(r), 1e-8) << r;
  }
}

TEST(Geodesics, VerticesLieOnGeodesic) {
  PlanePoint z(0.3, 0.4), w(-0.6, 0.1);
  auto pts = disk_geodesic(z, w, 16);
  ASSERT_EQ(pts.size(), 17u);
  double total = disk_distance(z, w);
  for (auto p : pts) EXPECT_NEAR(disk_distance(z, p) + disk_distance(p, w), total, 1e-12);
}
