#include "horo/conformal.hpp"
#include "horo/domain_io.hpp"
#include "json_util.hpp"
#include "map_data.hpp"

namespace horo {

using detail::cdd;
using detail::dd;
using detail::json;
using detail::number_at;

namespace {

json dd_json(dd v) { return json::array({v.hi, v.lo}); }
json cdd_json(cdd v) { return json::array({dd_json(v.re), dd_json(v.im)}); }
json point_json(PlanePoint p) { return json::array({p.real(), p.imag()}); }

const json& field(const json& j, const std::string& name) {
  if (!j.is_object() || !j.contains(name)) fail(ErrorCode::FormatError, "map file: missing field '" + name + "'");
  return j.at(name);
}

dd dd_from(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::FormatError, "map file: field '" + name + "' must be [hi, lo]");
  return {number_at(j[0], name), number_at(j[1], name)};
}

cdd cdd_from(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::FormatError, "map file: field '" + name + "' must be [re, im]");
  return {dd_from(j[0], name), dd_from(j[1], name)};
}

PlanePoint point_from(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::FormatError, "map file: field '" + name + "' must be [x, y]");
  return {number_at(j[0], name), number_at(j[1], name)};
}

}  // namespace

std::string map_to_json_text(const ConformalMap& map) {
  const detail::MapData& m = *map.data();
  json j;
  j["format"] = "horo-conformal-map";
  j["version"] = 1;
  j["target"] = json::parse(domain_to_json_text(m.target));
  j["anchor"] = point_json(m.anchor);
  j["boundary_samples"] = m.samples;
  json opt;
  opt["normalization_point"] = m.options.normalization_point ? point_json(*m.options.normalization_point) : json();
  opt["use_symmetry"] = m.options.use_symmetry;
  opt["halfplane_clip"] = m.options.halfplane_clip;
  opt["channel_cap"] = m.options.channel_cap;
  opt["tip_floor"] = m.options.tip_floor;
  opt["refine_passes"] = m.options.refine_passes;
  j["options"] = opt;
  j["symmetric"] = m.symmetric;
  j["extended_precision"] = m.extended;
  json stages = json::array();
  for (const auto& s : m.zipper.stages) {
    if (s.kind == detail::ZipStage::Kind::Zip)
      stages.push_back({{"kind", "zip"}, {"binv", dd_json(s.binv)}, {"c", dd_json(s.c)}});
    else
      stages.push_back({{"kind", "shift"}, {"shift", dd_json(s.shift)}});
  }
  j["zipper"] = {{"z0", cdd_json(m.zipper.z0)}, {"z1", cdd_json(m.zipper.z1)}, {"p", dd_json(m.zipper.p)},
                 {"stages", stages}};
  if (m.symmetric)
    j["normalization"] = {{"ta", dd_json(m.ta)}, {"tr", dd_json(m.tr)}};
  else
    j["normalization"] = {{"xa", dd_json(m.xa)}, {"ya", dd_json(m.ya)}};
  j["rotation"] = point_json(m.rot);
  j["accuracy"] = m.accuracy;
  json nodes = json::array();
  for (const auto& b : m.nodes) nodes.push_back({point_json(b.point), point_json(b.preimage)});
  j["boundary_nodes"] = nodes;
  return j.dump(1);
}

ConformalMap map_from_json_text(const std::string& text) {
  json j = detail::parse_json(text, "map file");
  if (!j.is_object() || j.value("format", json()) != "horo-conformal-map")
    fail(ErrorCode::FormatError, "map file: not a horo-conformal-map document");
  if (j.value("version", json()) != 1) fail(ErrorCode::FormatError, "map file: unsupported version");
  auto m = std::make_shared<detail::MapData>();
  m->target = domain_from_json_text(field(j, "target").dump());
  m->anchor = point_from(field(j, "anchor"), "anchor");
  const json& ns = field(j, "boundary_samples");
  if (!ns.is_number_integer()) fail(ErrorCode::FormatError, "map file: field 'boundary_samples' must be an integer");
  m->samples = ns.get<int>();
  const json& opt = field(j, "options");
  const json& np = field(opt, "normalization_point");
  if (!np.is_null()) m->options.normalization_point = point_from(np, "options.normalization_point");
  if (!field(opt, "use_symmetry").is_boolean()) fail(ErrorCode::FormatError, "map file: 'options.use_symmetry' must be boolean");
  m->options.use_symmetry = opt.at("use_symmetry").get<bool>();
  m->options.halfplane_clip = number_at(field(opt, "halfplane_clip"), "options.halfplane_clip");
  m->options.channel_cap = number_at(field(opt, "channel_cap"), "options.channel_cap");
  m->options.tip_floor = number_at(field(opt, "tip_floor"), "options.tip_floor");
  m->options.refine_passes = int(number_at(field(opt, "refine_passes"), "options.refine_passes"));
  if (!field(j, "symmetric").is_boolean()) fail(ErrorCode::FormatError, "map file: 'symmetric' must be boolean");
  m->symmetric = j.at("symmetric").get<bool>();
  if (!field(j, "extended_precision").is_boolean()) fail(ErrorCode::FormatError, "map file: 'extended_precision' must be boolean");
  m->extended = j.at("extended_precision").get<bool>();

  const json& z = field(j, "zipper");
  m->zipper.z0 = cdd_from(field(z, "z0"), "zipper.z0");
  m->zipper.z1 = cdd_from(field(z, "z1"), "zipper.z1");
  m->zipper.p = dd_from(field(z, "p"), "zipper.p");
  const json& stages = field(z, "stages");
  if (!stages.is_array()) fail(ErrorCode::FormatError, "map file: 'zipper.stages' must be an array");
  for (const auto& s : stages) {
    detail::ZipStage st;
    const json& kind = field(s, "kind");
    if (kind == "zip") {
      st.binv = dd_from(field(s, "binv"), "stage.binv");
      st.c = dd_from(field(s, "c"), "stage.c");
    } else if (kind == "shift") {
      st.kind = detail::ZipStage::Kind::Shift;
      st.shift = dd_from(field(s, "shift"), "stage.shift");
    } else {
      fail(ErrorCode::FormatError, "map file: stage kind must be \"zip\" or \"shift\"");
    }
    m->zipper.stages.push_back(st);
  }
  const json& norm = field(j, "normalization");
  if (m->symmetric) {
    m->ta = dd_from(field(norm, "ta"), "normalization.ta");
    m->tr = dd_from(field(norm, "tr"), "normalization.tr");
  } else {
    m->xa = dd_from(field(norm, "xa"), "normalization.xa");
    m->ya = dd_from(field(norm, "ya"), "normalization.ya");
  }
  m->rot = point_from(field(j, "rotation"), "rotation");
  m->accuracy = number_at(field(j, "accuracy"), "accuracy");
  const json& nodes = field(j, "boundary_nodes");
  if (!nodes.is_array()) fail(ErrorCode::FormatError, "map file: 'boundary_nodes' must be an array");
  for (const auto& b : nodes) {
    if (!b.is_array() || b.size() != 2) fail(ErrorCode::FormatError, "map file: boundary node must be [point, preimage]");
    m->nodes.push_back({point_from(b[0], "boundary node"), point_from(b[1], "boundary node")});
  }
  m->region = detail::build_fit_region(m->target, m->anchor, m->options);
  if (m->region.symmetric != m->symmetric) fail(ErrorCode::FormatError, "map file: symmetry flag does not match the target");
  return ConformalMap(std::move(m));
}

}  // namespace horo
