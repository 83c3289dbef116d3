#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horo/domain.hpp"

namespace horo {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kPetersenReportMaxN = 60;

struct PetersenRow {
  int n = 0;
  // ln y_n = -n ln 2 - 3^n
  double log_y = 0.0;
  // Lower bound for the distance from 1 to c_n along the slit gaps:
  // (9/8) 3^n - (n + 1) ln2 / 2 - 5/8.
  double lower_sum = 0.0;
  // Upper bound 2^{n+2} |y| for the distance from c_n + iy to c_n.
  double upper = 0.0;
  // upper - lower_sum; T_n < M certifies c_n + iy in the Busemann horosphere of level M.
  double T = 0.0;
  // Same chain with the gap estimate (1/4)(3^j - ln 2):
  // 2^{n+2} |y| - (3/4) 3^n + (n + 1) ln2 / 4 + 1/2.
  double T_rigorous = 0.0;
  bool certified = false;
  bool certified_rigorous = false;
};

struct PetersenReport {
  double y = 0.0, M = 0.0;
  std::vector<PetersenRow> rows;
  // First n with T_m < M for every listed m >= n.
  std::optional<int> n_M;
  std::optional<int> n_M_rigorous;
};

// Rows n = 0..n_max; n_max <= 60.
PetersenReport petersen_report(double y, double M, int n_max);

struct CombRow {
  int n = 0;
  double eps = 0.0;
  // Midline of the rectangle between teeth n and n + 1.
  double im_q = 0.0;
  // (k - h) / (8 eps_n)
  double lower = 0.0;
  double channel = 0.0;   // 2h / eps_n
  double asinh_term = 0.0;  // asinh(2 r0 / eps_n)
  // Upper bound for the distance from r0 + i im_q to r0; upper also carries 2M.
  double residual = 0.0;
  double upper = 0.0;
  // eps_n asinh(2 r0 / eps_n), tends to 0
  double eps_asinh = 0.0;
  bool contradiction = false;
};

struct CombReport {
  double k = 0.0, h = 0.0, r0 = 0.0, M = 0.0;
  std::vector<CombRow> rows;
  // First n with lower > upper for every listed m >= n.
  std::optional<int> n_star;
  // (k - h) / 8 against 2h.
  double limit_lower = 0.0;
  double limit_upper = 0.0;
  bool limit_contradiction = false;
  double threshold = 0.0;  // k / 17
  bool below_threshold = false;
  std::vector<std::string> warnings;
};

// Rows n = 1..n_max on comb(rule) truncated after `truncation` teeth
// (default n_max + 1). Requires 0 < h < k < 1 and 0 < r0 < 1.
CombReport comb_report(double k, double h, double r0, double M, int n_max,
                       const SequenceRule& rule = SequenceRule{}, std::optional<int> truncation = std::nullopt);

}  // namespace horo
