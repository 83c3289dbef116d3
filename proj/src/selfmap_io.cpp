#include "horo/dynamics.hpp"
#include "json_util.hpp"

namespace horo {

using detail::json;

namespace {

PlanePoint complex_at(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::FormatError, "field '" + field + "' must be a number or a [re, im] pair");
}

json complex_json(PlanePoint z) { return json::array({z.real(), z.imag()}); }

}  // namespace

SelfMap selfmap_from_json_text(const std::string& text) {
  json j = detail::parse_json(text, "self-map spec");
  if (!j.is_object()) fail(ErrorCode::FormatError, "self-map spec must be a JSON object");
  for (const char* key : {"model", "kind", "coeffs"})
    if (!j.contains(key)) fail(ErrorCode::FormatError, std::string("self-map spec is missing '") + key + "'");
  if (!j["model"].is_string() || !j["kind"].is_string() || !j["coeffs"].is_array())
    fail(ErrorCode::FormatError, "self-map spec fields have the wrong type");
  std::string model = j["model"], kind = j["kind"];
  const json& c = j["coeffs"];
  if (model != "disk" && model != "halfplane") fail(ErrorCode::FormatError, "model must be 'disk' or 'halfplane'");
  if (kind == "mobius") {
    if (model == "disk") {
      if (c.size() != 2) fail(ErrorCode::FormatError, "disk mobius coeffs are [a, b]");
      return SelfMap(disk_mobius(complex_at(c[0], "coeffs[0]"), complex_at(c[1], "coeffs[1]")));
    }
    if (c.size() != 4) fail(ErrorCode::FormatError, "halfplane mobius coeffs are [alpha, beta, gamma, delta]");
    double v[4];
    for (int k = 0; k < 4; ++k) v[k] = detail::number_at(c[k], "coeffs[" + std::to_string(k) + "]");
    return SelfMap(halfplane_mobius(v[0], v[1], v[2], v[3]));
  }
  if (kind == "blaschke") {
    if (model != "disk") fail(ErrorCode::FormatError, "blaschke products are disk maps");
    if (c.empty()) fail(ErrorCode::FormatError, "blaschke coeffs are [unimodular, zero_1, ...]");
    std::vector<PlanePoint> zeros;
    for (size_t k = 1; k < c.size(); ++k) zeros.push_back(complex_at(c[k], "coeffs[" + std::to_string(k) + "]"));
    return SelfMap(make_blaschke(complex_at(c[0], "coeffs[0]"), zeros));
  }
  fail(ErrorCode::FormatError, "kind must be 'mobius' or 'blaschke'");
}

std::string selfmap_to_json_text(const SelfMap& f) {
  json j;
  j["model"] = std::string(model_name(f.model()));
  if (const auto& m = f.mobius()) {
    j["kind"] = "mobius";
    if (m->model == Model::Disk)
      j["coeffs"] = json::array({complex_json(m->a), complex_json(m->b)});
    else
      j["coeffs"] = json::array({m->alpha, m->beta, m->gamma, m->delta});
  } else if (const auto& b = f.blaschke()) {
    j["kind"] = "blaschke";
    json c = json::array({complex_json(b->unimodular)});
    for (auto a : b->zeros) c.push_back(complex_json(a));
    j["coeffs"] = c;
  } else {
    fail(ErrorCode::InvalidParameter, "custom self-maps have no JSON form");
  }
  return j.dump();
}

SelfMap load_selfmap(const std::string& path) { return selfmap_from_json_text(detail::read_file(path)); }

}  // namespace horo
