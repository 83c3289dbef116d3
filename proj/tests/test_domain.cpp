#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "horo/domain.hpp"
#include "horo/domain_io.hpp"
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

double seg_dist(double px, double py, double x0, double x1, double y) {
  double cx = std::clamp(px, x0, x1);
  return std::sqrt((px - cx) * (px - cx) + (py - y) * (py - y));
}

// Square sides, L_0 and teeth +-2^-n for n <= depth.
double comb_brute(PlanePoint z, int depth) {
  double x = z.real(), y = z.imag();
  double d = std::min({x + 1.0, 1.0 - x, y + 1.0, 1.0 - y});
  d = std::min(d, seg_dist(x, y, -1.0, 0.0, 0.0));
  for (int n = 1; n <= depth; ++n) {
    double a = std::pow(2.0, -n);
    d = std::min({d, seg_dist(x, y, -1.0, 0.0, a), seg_dist(x, y, -1.0, 0.0, -a)});
  }
  return d;
}

double petersen_brute(PlanePoint z, int depth) {
  double x = z.real(), y = std::abs(z.imag());
  double d = x;
  for (int n = 0; n <= depth; ++n) {
    double xn = std::pow(2.0, -n);
    double yn = std::pow(2.0, -n) * std::exp(-std::pow(3.0, n));
    double dy = y >= yn ? 0.0 : yn - y;
    d = std::min(d, std::sqrt((x - xn) * (x - xn) + dy * dy));
  }
  return d;
}

}  // namespace

TEST(Comb, DefaultOrdinatesAndHalfWidths) {
  auto d = make_comb();
  EXPECT_FALSE(d.truncation());
  EXPECT_EQ(d.comb_rule().a(1), 0.5);
  EXPECT_EQ(d.comb_rule().a(3), 0.125);
  EXPECT_EQ(comb_eps(d.comb_rule(), 3), 0.03125);
  for (int n = 1; n < 20; ++n) EXPECT_EQ(comb_eps(d.comb_rule(), n), std::ldexp(1.0, -(n + 2)));
  EXPECT_FALSE(d.contains({-0.5, 0.0}));
  EXPECT_FALSE(d.contains({-0.3, 0.25}));
  EXPECT_FALSE(d.contains({-0.3, -std::ldexp(1.0, -30)}));
  EXPECT_TRUE(d.contains({0.1, std::ldexp(1.0, -30)}));
  EXPECT_TRUE(d.contains(0.5));
  EXPECT_TRUE(d.contains({-0.5, 0.375}));
}

TEST(Comb, TruncationSemantics) {
  auto d0 = make_comb({}, 0);
  auto s0 = d0.materialized_slits();
  ASSERT_EQ(s0.size(), 3u);
  EXPECT_EQ(s0[0].c, 0.0);
  EXPECT_EQ(s0[1].c, 0.5);
  EXPECT_EQ(s0[2].c, -0.5);
  EXPECT_TRUE(d0.contains({-0.5, 0.25}));
  auto d4 = make_comb({}, 4);
  EXPECT_EQ(d4.materialized_slits().size(), 9u);
  EXPECT_FALSE(d4.contains({-0.5, 0.0625}));
  EXPECT_TRUE(d4.contains({-0.5, 0.03125}));
  expect_code(ErrorCode::InvalidParameter, [] { make_comb().materialized_slits(); });
}

TEST(Comb, RejectsBadSequences) {
  expect_code(ErrorCode::InvalidSequence, [] { SequenceRule::explicit_list({0.5, 0.5, 0.1}); });
  expect_code(ErrorCode::InvalidSequence, [] { SequenceRule::explicit_list({0.5, -0.1}); });
  expect_code(ErrorCode::InvalidSequence, [] { SequenceRule::geometric(1.0, 1.0); });
  expect_code(ErrorCode::InvalidSequence, [] { SequenceRule::geometric(3.0, 0.5); });
  auto d = make_comb(SequenceRule::explicit_list({0.6, 0.3, 0.1}));
  EXPECT_EQ(d.last_family_index(), 3);
  EXPECT_FALSE(d.contains({-0.2, 0.3}));
  EXPECT_NEAR(d.dist_to_boundary({-0.2, 0.2}), 0.1, 1e-15);
}

TEST(Comb, DistanceExamples) {
  auto d = make_comb();
  EXPECT_EQ(d.dist_to_boundary(0.5), 0.5);
  EXPECT_EQ(d.dist_to_boundary({-0.5, 0.375}), 0.125);
  expect_code(ErrorCode::PointOutsideDomain, [&] { d.dist_to_boundary(-0.5); });
}

TEST(Comb, ClosedFormMatchesBruteForce) {
  auto d = make_comb();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0), e(-40.0, 0.0);
  for (int k = 0; k < 10000; ++k) {
    PlanePoint z(u(rng), k % 2 ? u(rng) : std::copysign(std::exp2(e(rng)), u(rng)));
    if (!d.contains(z)) continue;
    double brute = comb_brute(z, 40);
    ASSERT_NEAR(d.dist_to_boundary(z), brute, 1e-14 * brute) << z;
  }
}

TEST(Petersen, Geometry) {
  EXPECT_EQ(petersen_x(3), 0.125);
  EXPECT_NEAR(petersen_y(3), std::exp(-27.0) / 8.0, 1e-27);
  EXPECT_EQ(petersen_c(3), 0.09375);
  EXPECT_EQ(petersen_eps(3), 0.03125);
  EXPECT_NEAR(petersen_log_y(60), -60 * std::log(2.0) - std::pow(3.0, 60), 1.0);
  expect_code(ErrorCode::TruncationUnderflow, [] { make_petersen(6).materialized_slits(); });
  EXPECT_EQ(make_petersen(5).materialized_slits().size(), 12u);
}

TEST(Petersen, ContainmentAndDistance) {
  auto d = make_petersen();
  double y2 = petersen_y(2);
  EXPECT_FALSE(d.contains({0.25, 2.0 * y2}));
  EXPECT_FALSE(d.contains({0.25, -2.0 * y2}));
  EXPECT_TRUE(d.contains({0.25, 0.5 * y2}));
  EXPECT_TRUE(d.contains({std::ldexp(1.0, -40), 0.0}));
  EXPECT_FALSE(d.contains({0.0, 0.0}));
  EXPECT_NEAR(d.dist_to_boundary({0.09375, 1.0}), 0.03125, 1e-16);
  EXPECT_NEAR(d.dist_to_boundary({0.25, 0.0}), y2, 1e-20);
}

TEST(Petersen, ClosedFormMatchesBruteForce) {
  auto d = make_petersen();
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> lx(-30.0, 1.5), ly(-40.0, 2.0), s(-1.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    PlanePoint z(std::exp2(lx(rng)), std::copysign(std::exp2(ly(rng)), s(rng)));
    if (!d.contains(z)) continue;
    double brute = petersen_brute(z, 40);
    ASSERT_NEAR(d.dist_to_boundary(z), brute, 1e-14 * brute) << z;
  }
}

TEST(Distance, MonotoneUnderTruncation) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto inf = make_comb();
  for (int k = 0; k < 2000; ++k) {
    PlanePoint z(u(rng), 0.3 * u(rng));
    if (!inf.contains(z)) continue;
    double prev = INFINITY;
    for (int n = 0; n < 8; ++n) {
      double dn = make_comb({}, n).dist_to_boundary(z);
      ASSERT_LE(dn, prev);
      prev = dn;
    }
    ASSERT_LE(inf.dist_to_boundary(z), prev);
  }
  auto pinf = make_petersen();
  for (int k = 0; k < 2000; ++k) {
    PlanePoint z(std::exp2(-8.0 * (u(rng) + 1.0)), u(rng));
    if (!pinf.contains(z)) continue;
    double prev = INFINITY;
    for (int n = 0; n < 6; ++n) {
      double dn = make_petersen(n).dist_to_boundary(z);
      ASSERT_LE(dn, prev);
      prev = dn;
    }
    ASSERT_LE(pinf.dist_to_boundary(z), prev);
  }
}

TEST(Distance, BallContainsNoBoundary) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& d : {make_comb(), make_comb({}, 3), make_petersen(3)}) {
    for (int k = 0; k < 300; ++k) {
      PlanePoint z = d.base() == BaseKind::HalfPlane ? PlanePoint(1.0 + u(rng), u(rng)) : PlanePoint(u(rng), u(rng));
      if (!d.contains(z)) continue;
      double r = d.dist_to_boundary(z);
      for (int j = 0; j < 64; ++j)
        for (double f : {0.25, 0.9, 0.999999})
          ASSERT_TRUE(d.contains(z + f * r * std::polar(1.0, 2.0 * M_PI * j / 64)));
    }
  }
}

TEST(Distance, VanishesApproachingSlits) {
  auto d = make_comb();
  for (int k = 1; k < 12; ++k) {
    double t = std::pow(10.0, -k);
    EXPECT_NEAR(d.dist_to_boundary({-0.5, 0.5 + t}), t, 1e-15);
    EXPECT_NEAR(d.dist_to_boundary({t, 0.0}), t, 1e-15);
  }
}

TEST(UserSlits, TopologyChecks) {
  auto sq = make_square();
  auto ok = sq.with_extra_slits({Slit::vertical_at(0.5, 0.0, 1.0)});
  EXPECT_FALSE(ok.contains({0.5, 0.5}));
  EXPECT_TRUE(ok.contains({0.5, -0.5}));
  expect_code(ErrorCode::InvalidParameter, [&] { sq.with_extra_slits({Slit::vertical_at(0.5, -0.5, 0.5)}); });
  expect_code(ErrorCode::InvalidParameter, [&] { sq.with_extra_slits({Slit::vertical_at(0.5, -1.0, 1.0)}); });
  expect_code(ErrorCode::InvalidParameter, [&] {
    sq.with_extra_slits({Slit::vertical_at(0.5, 0.0, 1.0), Slit::horizontal_at(0.5, -1.0, 0.5)});
  });
  expect_code(ErrorCode::InvalidParameter, [] { Slit::from_endpoints({0.0, 0.0}, {1.0, 1.0}); });
  auto hp = make_halfplane().with_extra_slits({Slit::vertical_at(1.0, 0.5, INFINITY), Slit::vertical_at(1.0, -INFINITY, -0.5)});
  EXPECT_TRUE(hp.contains(1.0));
  EXPECT_TRUE(hp.symmetric_about_real_axis());
  expect_code(ErrorCode::InvalidParameter, [] { make_halfplane().with_extra_slits({Slit::vertical_at(1.0, -INFINITY, INFINITY)}); });
  auto tee = sq.with_extra_slits({Slit::vertical_at(0.5, 0.0, 1.0), Slit::horizontal_at(0.5, 0.2, 0.8)});
  EXPECT_FALSE(tee.contains({0.7, 0.5}));
}

TEST(Io, JsonRoundTrip) {
  auto d = domain_from_json_text(R"({"base":"square","family":"comb","params":{},"truncation":4,"extra_slits":[]})");
  EXPECT_EQ(d.family(), FamilyKind::Comb);
  EXPECT_EQ(d.truncation(), 4);
  auto again = domain_from_json_text(domain_to_json_text(d));
  EXPECT_EQ(domain_to_json_text(again), domain_to_json_text(d));
  auto p = domain_from_json_text(R"({"base":"halfplane","family":"petersen","truncation":null})");
  EXPECT_EQ(p.family(), FamilyKind::Petersen);
  EXPECT_FALSE(p.truncation());
  auto r = domain_from_json_text(R"({"base":{"rect":[0,2,-1,1]},"family":null,"extra_slits":[[1,0,1,1]]})");
  EXPECT_EQ(r.base(), BaseKind::Rect);
  ASSERT_EQ(r.extra_slits().size(), 1u);
  EXPECT_EQ(r.extra_slits()[0].hi, 1.0);
  auto hp = domain_from_json_text(R"({"base":"halfplane","extra_slits":[[1,0.5,1,"inf"]]})");
  EXPECT_EQ(hp.extra_slits()[0].hi, INFINITY);
  EXPECT_EQ(domain_to_json_text(domain_from_json_text(domain_to_json_text(hp))), domain_to_json_text(hp));
  EXPECT_FALSE(r.contains({1.0, 0.5}));
  auto e = domain_from_json_text(R"({"family":"comb","params":{"rule":"explicit","values":[0.5,0.2]}})");
  EXPECT_EQ(e.last_family_index(), 2);
  expect_code(ErrorCode::FormatError, [] { domain_from_json_text("{\"base\": 3"); });
  expect_code(ErrorCode::FormatError, [] { domain_from_json_text(R"({"base":"triangle"})"); });
  expect_code(ErrorCode::FormatError, [] { domain_from_json_text(R"({"family":"comb","truncation":"x"})"); });
}

TEST(Segments, CertifiedContainment) {
  auto d = make_comb();
  EXPECT_NO_THROW(certify_segment(d, 0.5, {0.5, 0.9}));
  expect_code(ErrorCode::CurveExitsDomain, [&] { certify_segment(d, {-0.5, 0.1}, {-0.5, 0.3}); });
  expect_code(ErrorCode::CurveExitsDomain, [&] { certify_segment(d, {0.5, 0.125}, {-0.5, 0.125}); });
  auto p = make_petersen();
  EXPECT_NO_THROW(certify_segment(p, 1.0, 2.0));
  EXPECT_NO_THROW(certify_segment(p, 0.07, 0.9));
  EXPECT_NO_THROW(certify_segment(d, {0.5, 0.1}, {-0.5, 0.1}));
  // gaps from x_4 on are below double resolution
  expect_code(ErrorCode::CurveExitsDomain, [&] { certify_segment(p, 0.05, 0.9); });
  expect_code(ErrorCode::CurveExitsDomain, [&] { certify_segment(p, 0.005, 0.01); });
  expect_code(ErrorCode::CurveExitsDomain, [&] { certify_segment(p, {0.1, 1.0}, {0.9, 1.0}); });
}
