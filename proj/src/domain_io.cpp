#include "horo/domain_io.hpp"

#include "json_util.hpp"

namespace horo {

using detail::json;
using detail::number_at;
using detail::number_json;

namespace {

SequenceRule rule_from_params(const json& params) {
  if (params.is_null() || !params.contains("rule")) {
    if (params.is_object() && (params.contains("scale") || params.contains("ratio")))
      return SequenceRule::geometric(number_at(params.value("scale", json(1.0)), "params.scale"),
                                     number_at(params.value("ratio", json(0.5)), "params.ratio"));
    return SequenceRule{};
  }
  auto kind = params.at("rule");
  if (kind == "geometric")
    return SequenceRule::geometric(number_at(params.value("scale", json(1.0)), "params.scale"),
                                   number_at(params.value("ratio", json(0.5)), "params.ratio"));
  if (kind == "explicit") {
    if (!params.contains("values") || !params.at("values").is_array())
      fail(ErrorCode::FormatError, "field 'params.values' must be an array");
    std::vector<double> v;
    for (size_t i = 0; i < params.at("values").size(); ++i)
      v.push_back(number_at(params.at("values")[i], "params.values[" + std::to_string(i) + "]"));
    return SequenceRule::explicit_list(std::move(v));
  }
  fail(ErrorCode::FormatError, "field 'params.rule' must be \"geometric\" or \"explicit\"");
}

}  // namespace

SlitDomain domain_from_json_text(const std::string& text) {
  json j = detail::parse_json(text, "domain spec");
  if (!j.is_object()) fail(ErrorCode::FormatError, "domain spec must be a JSON object");

  std::optional<int> truncation;
  if (j.contains("truncation") && !j.at("truncation").is_null()) {
    if (!j.at("truncation").is_number_integer()) fail(ErrorCode::FormatError, "field 'truncation' must be an integer or null");
    truncation = j.at("truncation").get<int>();
  }

  std::string family = "none";
  if (j.contains("family") && !j.at("family").is_null()) {
    if (!j.at("family").is_string()) fail(ErrorCode::FormatError, "field 'family' must be a string or null");
    family = j.at("family").get<std::string>();
  }
  json params = j.value("params", json());

  SlitDomain d;
  json base = j.value("base", json("square"));
  if (family == "comb") {
    d = make_comb(rule_from_params(params), truncation);
    if (base != "square") fail(ErrorCode::FormatError, "field 'base': the comb family lives on the square");
  } else if (family == "petersen") {
    d = make_petersen(truncation);
    if (base != "halfplane") fail(ErrorCode::FormatError, "field 'base': the petersen family lives on the half-plane");
  } else if (family == "none") {
    if (base == "square") {
      d = make_square();
    } else if (base == "halfplane") {
      d = make_halfplane();
    } else if (base == "disk") {
      d = make_disk();
    } else if (base.is_object() && base.contains("rect")) {
      auto r = base.at("rect");
      if (!r.is_array() || r.size() != 4) fail(ErrorCode::FormatError, "field 'base.rect' must be [x0,x1,y0,y1]");
      d = make_rect({number_at(r[0], "base.rect[0]"), number_at(r[1], "base.rect[1]"), number_at(r[2], "base.rect[2]"),
                     number_at(r[3], "base.rect[3]")});
    } else {
      fail(ErrorCode::FormatError, "field 'base' must be \"square\", \"halfplane\" or {\"rect\": [...]}");
    }
  } else {
    fail(ErrorCode::FormatError, "field 'family' must be \"comb\", \"petersen\" or null");
  }

  if (j.contains("extra_slits") && !j.at("extra_slits").is_null()) {
    const json& xs = j.at("extra_slits");
    if (!xs.is_array()) fail(ErrorCode::FormatError, "field 'extra_slits' must be an array");
    std::vector<Slit> slits;
    for (size_t i = 0; i < xs.size(); ++i) {
      std::string f = "extra_slits[" + std::to_string(i) + "]";
      if (!xs[i].is_array() || xs[i].size() != 4) fail(ErrorCode::FormatError, "field '" + f + "' must be [x0,y0,x1,y1]");
      PlanePoint p(number_at(xs[i][0], f), number_at(xs[i][1], f));
      PlanePoint q(number_at(xs[i][2], f), number_at(xs[i][3], f));
      slits.push_back(Slit::from_endpoints(p, q));
    }
    d = d.with_extra_slits(std::move(slits));
  }
  return d;
}

std::string domain_to_json_text(const SlitDomain& d) {
  json j;
  switch (d.base()) {
    case BaseKind::Square: j["base"] = "square"; break;
    case BaseKind::HalfPlane: j["base"] = "halfplane"; break;
    case BaseKind::Disk: j["base"] = "disk"; break;
    case BaseKind::Rect: {
      const Rect& r = d.rect();
      j["base"] = {{"rect", {r.x0, r.x1, r.y0, r.y1}}};
      break;
    }
  }
  if (d.family() == FamilyKind::Comb) {
    j["family"] = "comb";
    const auto& r = d.comb_rule();
    if (r.kind == SequenceRule::Kind::Geometric)
      j["params"] = {{"rule", "geometric"}, {"scale", r.scale}, {"ratio", r.ratio}};
    else
      j["params"] = {{"rule", "explicit"}, {"values", r.values}};
  } else if (d.family() == FamilyKind::Petersen) {
    j["family"] = "petersen";
    j["params"] = json::object();
  } else {
    j["family"] = nullptr;
    j["params"] = json::object();
  }
  j["truncation"] = d.truncation() ? json(*d.truncation()) : json(nullptr);
  json xs = json::array();
  for (const auto& s : d.extra_slits()) {
    PlanePoint a = s.start(), b = s.end();
    xs.push_back({number_json(a.real()), number_json(a.imag()), number_json(b.real()), number_json(b.imag())});
  }
  j["extra_slits"] = xs;
  return j.dump();
}

SlitDomain load_domain(const std::string& path) { return domain_from_json_text(detail::read_file(path)); }

}  // namespace horo
