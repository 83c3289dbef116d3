#include "horo/reports.hpp"

#include <cmath>
#include <string>

#include "horo/bounds.hpp"
#include "horo/errors.hpp"

namespace horo {

namespace {

template <class Row, class Pred>
std::optional<int> first_of_tail(const std::vector<Row>& rows, Pred holds) {
  std::optional<int> first;
  for (const Row& r : rows) {
    if (!holds(r)) {
      first.reset();
    } else if (!first) {
      first = r.n;
    }
  }
  return first;
}

}  // namespace

PetersenReport petersen_report(double y, double M, int n_max) {
  if (!std::isfinite(y)) fail(ErrorCode::InvalidParameter, "petersen report needs a finite y");
  if (!std::isfinite(M)) fail(ErrorCode::InvalidParameter, "petersen report needs a finite M");
  if (n_max < 0 || n_max > kPetersenReportMaxN) fail(ErrorCode::InvalidParameter, "petersen report needs 0 <= n_max <= 60");
  PetersenReport rep;
  rep.y = y;
  rep.M = M;
  const double ln2 = std::log(2.0);
  for (int n = 0; n <= n_max; ++n) {
    PetersenRow r;
    r.n = n;
    double p3 = std::pow(3.0, n);
    r.log_y = -n * ln2 - p3;
    r.lower_sum = 9.0 / 8.0 * p3 - (n + 1) * ln2 / 2.0 - 5.0 / 8.0;
    r.upper = std::ldexp(std::abs(y), n + 2);
    r.T = r.upper - r.lower_sum;
    r.T_rigorous = r.upper - 0.75 * p3 + (n + 1) * ln2 / 4.0 + 0.5;
    r.certified = r.T < M;
    r.certified_rigorous = r.T_rigorous < M;
    rep.rows.push_back(r);
  }
  rep.n_M = first_of_tail(rep.rows, [](const PetersenRow& r) { return r.certified; });
  rep.n_M_rigorous = first_of_tail(rep.rows, [](const PetersenRow& r) { return r.certified_rigorous; });
  return rep;
}

CombReport comb_report(double k, double h, double r0, double M, int n_max, const SequenceRule& rule,
                       std::optional<int> truncation) {
  if (!(0.0 < h && h < k && k < 1.0)) fail(ErrorCode::InvalidParameter, "comb report needs 0 < h < k < 1");
  if (!(r0 > 0.0 && r0 < 1.0)) fail(ErrorCode::InvalidParameter, "comb report needs r0 in (0, 1)");
  if (!std::isfinite(M)) fail(ErrorCode::InvalidParameter, "comb report needs a finite M");
  if (n_max < 1) fail(ErrorCode::InvalidParameter, "comb report needs n_max >= 1");
  rule.validate();
  if (auto len = rule.length(); len && n_max + 1 > *len) {
    fail(ErrorCode::InvalidParameter, "comb report needs a_{n_max + 1}; the rule has " + std::to_string(*len) + " terms");
  }
  int teeth = truncation.value_or(n_max + 1);
  if (teeth < n_max + 1) fail(ErrorCode::InvalidParameter, "comb report needs at least n_max + 1 teeth");
  SlitDomain d = make_comb(rule, teeth);

  CombReport rep;
  rep.k = k;
  rep.h = h;
  rep.r0 = r0;
  rep.M = M;
  rep.threshold = k / 17.0;
  rep.below_threshold = h < rep.threshold;
  if (!rep.below_threshold) {
    rep.warnings.push_back("h >= k/17: the limiting comparison is not expected to give a contradiction");
  }
  rep.limit_lower = (k - h) / 8.0;
  rep.limit_upper = 2.0 * h;
  rep.limit_contradiction = rep.limit_lower > rep.limit_upper;

  GridSpec grid;
  for (int n = 1; n <= n_max; ++n) {
    CombRow r;
    r.n = n;
    r.eps = comb_eps(rule, n);
    r.im_q = rule.a(n + 1) + r.eps;
    r.lower = (k - h) / (8.0 * r.eps);
    r.channel = 2.0 * h / r.eps;
    r.asinh_term = std::asinh(2.0 * r0 / r.eps);
    r.residual = distance_upper(d, PlanePoint(r0, r.im_q), PlanePoint(r0, 0.0), grid);
    r.upper = r.channel + r.asinh_term + r.residual + 2.0 * M;
    r.eps_asinh = r.eps * r.asinh_term;
    r.contradiction = r.lower > r.upper;
    rep.rows.push_back(r);
  }
  rep.n_star = first_of_tail(rep.rows, [](const CombRow& r) { return r.contradiction; });
  return rep;
}

}  // namespace horo
