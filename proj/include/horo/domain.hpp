#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horo/hyperbolic.hpp"

namespace horo {

enum class BaseKind { Square, HalfPlane, Rect, Disk };
enum class FamilyKind { None, Comb, Petersen };

struct Rect {
  double x0, x1, y0, y1;
};

// Closed axis-parallel segment or ray; lo/hi may be infinite for rays.
struct Slit {
  bool vertical = false;
  double c = 0.0;  // x for vertical slits, y for horizontal ones
  double lo = 0.0, hi = 0.0;

  static Slit horizontal_at(double y, double x0, double x1);
  static Slit vertical_at(double x, double y0, double y1);
  // Endpoints must share a coordinate.
  static Slit from_endpoints(PlanePoint p, PlanePoint q);

  PlanePoint start() const;
  PlanePoint end() const;
  bool contains(PlanePoint z) const;
  double distance(PlanePoint z) const;
};

// a_n = scale * ratio^n (n >= 1), or an explicit finite list a_1, a_2, ...
struct SequenceRule {
  enum class Kind { Geometric, Explicit };
  Kind kind = Kind::Geometric;
  double scale = 1.0;
  double ratio = 0.5;
  std::vector<double> values;

  static SequenceRule geometric(double scale, double ratio);
  static SequenceRule explicit_list(std::vector<double> values);

  double a(int n) const;
  // Number of terms; nullopt for infinite rules.
  std::optional<int> length() const;
  void validate() const;
};

class SlitDomain {
 public:
  BaseKind base() const { return base_; }
  const Rect& rect() const { return rect_; }
  FamilyKind family() const { return family_; }
  const SequenceRule& comb_rule() const { return rule_; }
  // nullopt means the whole (infinite) family.
  std::optional<int> truncation() const { return truncation_; }
  const std::vector<Slit>& extra_slits() const { return extra_; }

  bool contains(PlanePoint z) const;
  // Euclidean distance to the boundary; PointOutsideDomain if z is not in the domain.
  double dist_to_boundary(PlanePoint z) const;
  // Same distance without the containment check (0 on slits, negative never).
  double raw_distance(PlanePoint z) const;

  // Family slits with index in [first, last] (comb teeth come in +/- pairs).
  std::vector<Slit> family_slits(int last) const;
  // Every slit of a finitely truncated domain, family first.
  std::vector<Slit> materialized_slits() const;
  // Largest family index present; nullopt when infinite or no family.
  std::optional<int> last_family_index() const;

  bool symmetric_about_real_axis() const;
  // Euclidean diameter of the base region (infinite for the half-plane).
  double base_diameter() const;

  SlitDomain with_truncation(std::optional<int> n) const;
  SlitDomain with_extra_slits(std::vector<Slit> slits) const;

  friend SlitDomain make_square();
  friend SlitDomain make_rect(Rect r);
  friend SlitDomain make_halfplane();
  friend SlitDomain make_disk();
  friend SlitDomain make_comb(const SequenceRule& rule, std::optional<int> n);
  friend SlitDomain make_petersen(std::optional<int> n);

 private:
  void validate_topology() const;
  double family_distance(PlanePoint z) const;
  bool on_family_slit(PlanePoint z) const;
  double base_distance(PlanePoint z) const;
  bool in_base(PlanePoint z) const;

  BaseKind base_ = BaseKind::Square;
  Rect rect_{-1.0, 1.0, -1.0, 1.0};
  FamilyKind family_ = FamilyKind::None;
  SequenceRule rule_;
  std::optional<int> truncation_;
  std::vector<Slit> extra_;
};

SlitDomain make_square();
SlitDomain make_rect(Rect r);
SlitDomain make_halfplane();
// Unit disk with dist = 1 - |z|; used where closed forms are available.
SlitDomain make_disk();
SlitDomain make_comb(const SequenceRule& rule = SequenceRule{}, std::optional<int> n = std::nullopt);
SlitDomain make_petersen(std::optional<int> n = std::nullopt);

// Comb geometry: eps_n = (a_n - a_{n+1}) / 2.
double comb_eps(const SequenceRule& rule, int n);

// Petersen geometry: x_n = 2^-n, y_n = 2^-n e^{-3^n}.
double petersen_x(int n);
double petersen_log_y(int n);
double petersen_y(int n);
double petersen_c(int n);
double petersen_eps(int n);
inline constexpr int kPetersenMaterializeCap = 5;

struct Polyline {
  std::vector<PlanePoint> vertices;
};

// Certifies the closed segment [p, q] lies in the domain by stepping through
// discs of radius dist/2; returns the step abscissae (arc length from p).
std::vector<double> certify_segment(const SlitDomain& d, PlanePoint p, PlanePoint q);
void validate_polyline(const SlitDomain& d, const Polyline& c);

}  // namespace horo
