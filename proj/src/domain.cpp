#include "horo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "planar.hpp"

namespace horo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kValidationDepth = 30;

std::string show(PlanePoint z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

Slit Slit::horizontal_at(double y, double x0, double x1) {
  return {false, y, std::min(x0, x1), std::max(x0, x1)};
}

Slit Slit::vertical_at(double x, double y0, double y1) {
  return {true, x, std::min(y0, y1), std::max(y0, y1)};
}

Slit Slit::from_endpoints(PlanePoint p, PlanePoint q) {
  if (p.imag() == q.imag() && std::isfinite(p.imag())) return horizontal_at(p.imag(), p.real(), q.real());
  if (p.real() == q.real() && std::isfinite(p.real())) return vertical_at(p.real(), p.imag(), q.imag());
  fail(ErrorCode::InvalidParameter, "slit " + show(p) + " -> " + show(q) + " is not axis-parallel");
}

PlanePoint Slit::start() const { return vertical ? PlanePoint(c, lo) : PlanePoint(lo, c); }
PlanePoint Slit::end() const { return vertical ? PlanePoint(c, hi) : PlanePoint(hi, c); }

bool Slit::contains(PlanePoint z) const {
  double along = vertical ? z.imag() : z.real();
  double across = vertical ? z.real() : z.imag();
  return across == c && along >= lo && along <= hi;
}

double Slit::distance(PlanePoint z) const {
  double along = vertical ? z.imag() : z.real();
  double across = vertical ? z.real() : z.imag();
  double d_along = along < lo ? lo - along : (along > hi ? along - hi : 0.0);
  return std::hypot(d_along, across - c);
}

SequenceRule SequenceRule::geometric(double scale, double ratio) {
  SequenceRule r;
  r.kind = Kind::Geometric;
  r.scale = scale;
  r.ratio = ratio;
  r.validate();
  return r;
}

SequenceRule SequenceRule::explicit_list(std::vector<double> values) {
  SequenceRule r;
  r.kind = Kind::Explicit;
  r.values = std::move(values);
  r.validate();
  return r;
}

double SequenceRule::a(int n) const {
  if (n < 1) fail(ErrorCode::InvalidParameter, "sequence index starts at 1");
  if (kind == Kind::Explicit) {
    if (n > int(values.size())) fail(ErrorCode::InvalidParameter, "sequence index beyond explicit list");
    return values[n - 1];
  }
  if (ratio == 0.5) return std::ldexp(scale, -n);
  return scale * std::pow(ratio, n);
}

std::optional<int> SequenceRule::length() const {
  if (kind == Kind::Explicit) return int(values.size());
  return std::nullopt;
}

void SequenceRule::validate() const {
  if (kind == Kind::Geometric) {
    if (!(scale > 0.0) || !(ratio > 0.0 && ratio < 1.0) || !(scale * ratio < 1.0))
      fail(ErrorCode::InvalidSequence, "geometric rule needs scale > 0, 0 < ratio < 1 and a_1 < 1");
    return;
  }
  if (values.empty()) fail(ErrorCode::InvalidSequence, "explicit sequence is empty");
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(values[i] < 1.0))
      fail(ErrorCode::InvalidSequence, "sequence terms must lie in (0, 1)");
    if (i > 0 && !(values[i] < values[i - 1]))
      fail(ErrorCode::InvalidSequence, "sequence must be strictly decreasing");
  }
}

double comb_eps(const SequenceRule& rule, int n) { return 0.5 * (rule.a(n) - rule.a(n + 1)); }

double petersen_x(int n) { return std::ldexp(1.0, -n); }
double petersen_log_y(int n) { return -n * std::numbers::ln2 - std::pow(3.0, n); }
double petersen_y(int n) { return std::exp(petersen_log_y(n)); }
double petersen_c(int n) { return 3.0 * std::ldexp(1.0, -(n + 2)); }
double petersen_eps(int n) { return std::ldexp(1.0, -(n + 2)); }

namespace {

double petersen_ray_distance(int n, PlanePoint z) {
  double dx = std::abs(z.real() - petersen_x(n));
  double ay = std::abs(z.imag());
  double ly = petersen_log_y(n);
  if (ay > 0.0 && std::log(ay) >= ly) return dx;
  return std::hypot(dx, std::exp(ly) - ay);
}

}  // namespace

std::optional<int> SlitDomain::last_family_index() const {
  if (family_ == FamilyKind::Comb) {
    auto len = rule_.length();
    if (truncation_) {
      int n = std::max(*truncation_, 1);
      return len ? std::min(n, *len) : n;
    }
    return len;
  }
  if (family_ == FamilyKind::Petersen) return truncation_;
  return std::nullopt;
}

bool SlitDomain::in_base(PlanePoint z) const {
  switch (base_) {
    case BaseKind::Square:
    case BaseKind::Rect:
      return z.real() > rect_.x0 && z.real() < rect_.x1 && z.imag() > rect_.y0 && z.imag() < rect_.y1;
    case BaseKind::HalfPlane:
      return z.real() > 0.0 && std::isfinite(z.imag()) && std::isfinite(z.real());
    case BaseKind::Disk:
      return std::abs(z) < 1.0;
  }
  return false;
}

double SlitDomain::base_distance(PlanePoint z) const {
  switch (base_) {
    case BaseKind::Square:
    case BaseKind::Rect:
      return std::min({z.real() - rect_.x0, rect_.x1 - z.real(), z.imag() - rect_.y0, rect_.y1 - z.imag()});
    case BaseKind::HalfPlane:
      return z.real();
    case BaseKind::Disk:
      return 1.0 - std::abs(z);
  }
  return 0.0;
}

bool SlitDomain::on_family_slit(PlanePoint z) const {
  auto last = last_family_index();
  if (family_ == FamilyKind::Comb) {
    double x = z.real(), y = z.imag();
    if (x > 0.0 || x < rect_.x0) return false;
    if (y == 0.0) return true;
    double ay = std::abs(y);
    if (rule_.kind == SequenceRule::Kind::Explicit) {
      for (int n = 1; n <= *last; ++n)
        if (rule_.a(n) == ay) return true;
      return false;
    }
    double nstar = std::log(ay / rule_.scale) / std::log(rule_.ratio);
    if (!(nstar > -1.0)) return false;
    int lo = std::max(1, int(std::floor(nstar)) - 2);
    int hi = int(std::floor(nstar)) + 3;
    if (last) hi = std::min(hi, *last);
    for (int n = lo; n <= hi; ++n)
      if (rule_.a(n) == ay) return true;
    return false;
  }
  if (family_ == FamilyKind::Petersen) {
    int e;
    double m = std::frexp(z.real(), &e);
    if (m != 0.5) return false;
    int n = 1 - e;
    if (n < 0 || (last && n > *last)) return false;
    double ay = std::abs(z.imag());
    return ay > 0.0 && std::log(ay) >= petersen_log_y(n);
  }
  return false;
}

double SlitDomain::family_distance(PlanePoint z) const {
  auto last = last_family_index();
  double best = kInf;
  if (family_ == FamilyKind::Comb) {
    double x0 = rect_.x0;
    best = Slit::horizontal_at(0.0, x0, 0.0).distance(z);
    double ay = std::abs(z.imag());
    if (ay == 0.0) return best;
    PlanePoint q(z.real(), ay);
    int lo = 1, hi = last.value_or(1);
    if (rule_.kind == SequenceRule::Kind::Geometric) {
      double nstar = std::log(ay / rule_.scale) / std::log(rule_.ratio);
      int f = nstar < 0.0 ? 0 : int(std::min(std::floor(nstar), 1e6));
      lo = std::max(1, f - 2);
      hi = f + 3;
      if (last) {
        hi = std::min(hi, *last);
        lo = std::min(lo, *last);
      }
    }
    for (int n = lo; n <= hi; ++n) best = std::min(best, Slit::horizontal_at(rule_.a(n), x0, 0.0).distance(q));
    return best;
  }
  if (family_ == FamilyKind::Petersen) {
    double x = z.real();
    int f = x >= 1.0 ? 0 : int(std::min(std::floor(-std::log2(x)), 1e6));
    int top = last.value_or(1 << 30);
    auto visit = [&](int n) {
      if (n >= 0 && n <= top) best = std::min(best, petersen_ray_distance(n, z));
    };
    for (int n = 0; n <= 2; ++n) visit(n);
    for (int n = std::max(3, f - 2); n <= f + 3; ++n) visit(n);
    if (last && f - 2 > *last) visit(*last);
    return best;
  }
  return best;
}

bool SlitDomain::contains(PlanePoint z) const {
  if (!is_finite(z) || !in_base(z)) return false;
  if (on_family_slit(z)) return false;
  for (const auto& s : extra_)
    if (s.contains(z)) return false;
  return true;
}

double SlitDomain::raw_distance(PlanePoint z) const {
  double d = std::max(0.0, base_distance(z));
  d = std::min(d, family_distance(z));
  for (const auto& s : extra_) d = std::min(d, s.distance(z));
  return d;
}

double SlitDomain::dist_to_boundary(PlanePoint z) const {
  if (!contains(z)) fail(ErrorCode::PointOutsideDomain, "point not in domain: " + show(z));
  return raw_distance(z);
}

std::vector<Slit> SlitDomain::family_slits(int last) const {
  std::vector<Slit> out;
  if (family_ == FamilyKind::Comb) {
    out.push_back(Slit::horizontal_at(0.0, rect_.x0, 0.0));
    for (int n = 1; n <= last; ++n) {
      double a = rule_.a(n);
      out.push_back(Slit::horizontal_at(a, rect_.x0, 0.0));
      out.push_back(Slit::horizontal_at(-a, rect_.x0, 0.0));
    }
  } else if (family_ == FamilyKind::Petersen) {
    for (int n = 0; n <= last; ++n) {
      double y = petersen_y(n);
      if (!(y >= std::numeric_limits<double>::min()))
        fail(ErrorCode::TruncationUnderflow, "petersen slit gap y_" + std::to_string(n) + " underflows double precision");
      out.push_back(Slit::vertical_at(petersen_x(n), y, kInf));
      out.push_back(Slit::vertical_at(petersen_x(n), -kInf, -y));
    }
  }
  return out;
}

std::vector<Slit> SlitDomain::materialized_slits() const {
  std::vector<Slit> out;
  if (family_ != FamilyKind::None) {
    auto last = last_family_index();
    if (!last) fail(ErrorCode::InvalidParameter, "infinite slit family cannot be materialized; set a truncation");
    if (family_ == FamilyKind::Petersen && *last > kPetersenMaterializeCap)
      fail(ErrorCode::TruncationUnderflow, "petersen truncation above " + std::to_string(kPetersenMaterializeCap) +
                                               " cannot be materialized");
    out = family_slits(*last);
  }
  out.insert(out.end(), extra_.begin(), extra_.end());
  return out;
}

bool SlitDomain::symmetric_about_real_axis() const {
  if (base_ == BaseKind::Rect && rect_.y0 != -rect_.y1) return false;
  for (const auto& s : extra_) {
    Slit m = s.vertical ? Slit::vertical_at(s.c, -s.hi, -s.lo) : Slit::horizontal_at(-s.c, s.lo, s.hi);
    bool found = std::any_of(extra_.begin(), extra_.end(), [&](const Slit& t) {
      return t.vertical == m.vertical && t.c == m.c && t.lo == m.lo && t.hi == m.hi;
    });
    if (!found) return false;
  }
  return true;
}

double SlitDomain::base_diameter() const {
  switch (base_) {
    case BaseKind::Square:
    case BaseKind::Rect:
      return std::hypot(rect_.x1 - rect_.x0, rect_.y1 - rect_.y0);
    case BaseKind::HalfPlane:
      return kInf;
    case BaseKind::Disk:
      return 2.0;
  }
  return kInf;
}

SlitDomain SlitDomain::with_truncation(std::optional<int> n) const {
  if (n && *n < 0) fail(ErrorCode::InvalidParameter, "truncation must be nonnegative");
  SlitDomain d = *this;
  d.truncation_ = n;
  d.validate_topology();
  return d;
}

SlitDomain SlitDomain::with_extra_slits(std::vector<Slit> slits) const {
  if (base_ == BaseKind::Disk && !slits.empty()) fail(ErrorCode::InvalidParameter, "the disk model takes no slits");
  SlitDomain d = *this;
  for (auto& s : slits) {
    if (!(s.lo < s.hi)) fail(ErrorCode::InvalidParameter, "degenerate slit");
    d.extra_.push_back(s);
  }
  d.validate_topology();
  return d;
}

// The slit union together with the base boundary must form a connected graph
// with exactly one cycle (the base boundary itself): no floating slits, no cuts.
void SlitDomain::validate_topology() const {
  if (base_ == BaseKind::Disk) return;
  std::vector<Slit> slits = extra_;
  if (family_ != FamilyKind::None) {
    int depth = last_family_index().value_or(kValidationDepth);
    if (family_ == FamilyKind::Petersen) depth = std::min(depth, 3);
    depth = std::min(depth, kValidationDepth);
    auto fam = family_slits(depth);
    slits.insert(slits.end(), fam.begin(), fam.end());
  }
  Rect box = rect_;
  if (base_ == BaseKind::HalfPlane) {
    double m = 1.0;
    for (const auto& s : slits) {
      for (double v : {s.c, s.lo, s.hi})
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
    box = {0.0, 4.0 * m, -4.0 * m, 4.0 * m};
  }
  std::vector<detail::AxisSegment> segs;
  PlanePoint c00(box.x0, box.y0), c10(box.x1, box.y0), c11(box.x1, box.y1), c01(box.x0, box.y1);
  segs.push_back({c00, c10});
  segs.push_back({c10, c11});
  segs.push_back({c11, c01});
  segs.push_back({c01, c00});
  for (const auto& s : slits) {
    double lo = s.lo, hi = s.hi;
    double alo = s.vertical ? box.y0 : box.x0, ahi = s.vertical ? box.y1 : box.x1;
    double clo = s.vertical ? box.x0 : box.y0, chi = s.vertical ? box.x1 : box.y1;
    if (base_ == BaseKind::HalfPlane) {
      lo = std::max(lo, alo);
      hi = std::min(hi, ahi);
    }
    if (lo < alo || hi > ahi || s.c < clo || s.c > chi)
      fail(ErrorCode::InvalidParameter, "slit leaves the closure of the base region");
    if (s.c == clo || s.c == chi) continue;  // lies on the base boundary
    segs.push_back({s.vertical ? PlanePoint(s.c, lo) : PlanePoint(lo, s.c),
                    s.vertical ? PlanePoint(s.c, hi) : PlanePoint(hi, s.c)});
  }
  auto g = detail::build_planar_graph(segs);
  if (detail::component_count(g) != 1)
    fail(ErrorCode::InvalidParameter, "a slit is detached from the boundary; the domain is not simply connected");
  if (g.edge_count != int(g.nodes.size()))
    fail(ErrorCode::InvalidParameter, "slits separate the domain into several components");
}

SlitDomain make_square() { return make_rect({-1.0, 1.0, -1.0, 1.0}); }

SlitDomain make_rect(Rect r) {
  if (!(r.x0 < r.x1 && r.y0 < r.y1) || !std::isfinite(r.x0 + r.x1 + r.y0 + r.y1))
    fail(ErrorCode::InvalidParameter, "rectangle needs x0 < x1 and y0 < y1");
  SlitDomain d;
  d.base_ = (r.x0 == -1.0 && r.x1 == 1.0 && r.y0 == -1.0 && r.y1 == 1.0) ? BaseKind::Square : BaseKind::Rect;
  d.rect_ = r;
  return d;
}

SlitDomain make_halfplane() {
  SlitDomain d;
  d.base_ = BaseKind::HalfPlane;
  d.rect_ = {0.0, kInf, -kInf, kInf};
  return d;
}

SlitDomain make_disk() {
  SlitDomain d;
  d.base_ = BaseKind::Disk;
  d.rect_ = {-1.0, 1.0, -1.0, 1.0};
  return d;
}

SlitDomain make_comb(const SequenceRule& rule, std::optional<int> n) {
  rule.validate();
  if (n && *n < 0) fail(ErrorCode::InvalidParameter, "truncation must be nonnegative");
  SlitDomain d = make_square();
  d.family_ = FamilyKind::Comb;
  d.rule_ = rule;
  d.truncation_ = n;
  return d;
}

SlitDomain make_petersen(std::optional<int> n) {
  if (n && *n < 0) fail(ErrorCode::InvalidParameter, "truncation must be nonnegative");
  SlitDomain d = make_halfplane();
  d.family_ = FamilyKind::Petersen;
  d.truncation_ = n;
  return d;
}

std::vector<double> certify_segment(const SlitDomain& d, PlanePoint p, PlanePoint q) {
  if (!d.contains(p) || !d.contains(q))
    fail(ErrorCode::CurveExitsDomain, "segment endpoint outside the domain: " + show(d.contains(p) ? q : p));
  double len = std::abs(q - p);
  std::vector<double> steps{0.0};
  if (len == 0.0) return steps;
  PlanePoint u = (q - p) / len;
  double t = 0.0;
  for (long it = 0; it < 10'000'000; ++it) {
    PlanePoint z = p + t * u;
    double r = d.contains(z) ? d.raw_distance(z) : 0.0;
    if (!(r > 1e-280))
      fail(ErrorCode::CurveExitsDomain, "segment " + show(p) + " -> " + show(q) + " meets the boundary near " + show(z));
    double next = t + 0.5 * r;
    if (next == t)
      fail(ErrorCode::CurveExitsDomain, "segment " + show(p) + " -> " + show(q) +
                                            " passes closer to the boundary than double resolution near " + show(z));
    t = next;
    if (t >= len) {
      steps.push_back(len);
      return steps;
    }
    steps.push_back(t);
  }
  fail(ErrorCode::CurveExitsDomain, "segment " + show(p) + " -> " + show(q) + " could not be certified");
}

void validate_polyline(const SlitDomain& d, const Polyline& c) {
  if (c.vertices.empty()) fail(ErrorCode::InvalidParameter, "empty polyline");
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i)
    if (c.vertices[i] == c.vertices[i + 1]) fail(ErrorCode::InvalidParameter, "consecutive polyline vertices coincide");
  if (c.vertices.size() == 1 && !d.contains(c.vertices[0]))
    fail(ErrorCode::CurveExitsDomain, "polyline vertex outside the domain");
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) certify_segment(d, c.vertices[i], c.vertices[i + 1]);
}

}  // namespace horo
