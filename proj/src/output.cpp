#include "horo/output.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "horo/errors.hpp"

namespace horo {

namespace {

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return number_value(*d);
  if (auto i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json optional_index(const std::optional<int>& n) { return n ? Json(*n) : Json(nullptr); }

Json point_json(PlanePoint z) { return Json::array({number_value(z.real()), number_value(z.imag())}); }

Json header(const std::string& kind) {
  Json j;
  j["schema"] = kind;
  j["schema_version"] = kReportSchemaVersion;
  return j;
}

Cell idx(int n) { return std::int64_t(n); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_value(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return v;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(cell_text(row[i]));
    out += "\n";
  }
  return out;
}

Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    rows.push_back(r);
  }
  return rows;
}

namespace {

void dump_into(const Json& j, int indent, std::string& out) {
  auto pad = [&](int n) { out.append(size_t(n), ' '); };
  switch (j.type()) {
    case Json::value_t::number_float: out += format_number(j.get<double>()); return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        pad(indent + 2);
        dump_into(j[i], indent + 2, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      pad(indent);
      out += "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        pad(indent + 2);
        out += Json(it.key()).dump() + ": ";
        dump_into(it.value(), indent + 2, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      pad(indent);
      out += "}";
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  return out + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::FormatError, "cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(ErrorCode::FormatError, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::FormatError, "cannot replace " + path);
  }
}

Table petersen_table(const PetersenReport& r) {
  Table t;
  t.columns = {"n", "log_y", "lower_sum", "upper", "T", "T_rigorous", "certified", "certified_rigorous"};
  for (const auto& row : r.rows) {
    t.rows.push_back({idx(row.n), row.log_y, row.lower_sum, row.upper, row.T, row.T_rigorous, row.certified,
                      row.certified_rigorous});
  }
  return t;
}

Json petersen_json(const PetersenReport& r) {
  Json j = header("petersen-report");
  j["y"] = number_value(r.y);
  j["M"] = number_value(r.M);
  j["n_M"] = optional_index(r.n_M);
  j["n_M_rigorous"] = optional_index(r.n_M_rigorous);
  j["rows"] = to_json(petersen_table(r));
  return j;
}

Table comb_table(const CombReport& r) {
  Table t;
  t.columns = {"n", "eps", "im_q", "lower", "channel", "asinh_term", "residual", "upper", "eps_asinh", "contradiction"};
  for (const auto& row : r.rows) {
    t.rows.push_back({idx(row.n), row.eps, row.im_q, row.lower, row.channel, row.asinh_term, row.residual, row.upper,
                      row.eps_asinh, row.contradiction});
  }
  return t;
}

Json comb_json(const CombReport& r) {
  Json j = header("comb-report");
  j["k"] = number_value(r.k);
  j["h"] = number_value(r.h);
  j["r0"] = number_value(r.r0);
  j["M"] = number_value(r.M);
  j["n_star"] = optional_index(r.n_star);
  j["limit_lower"] = number_value(r.limit_lower);
  j["limit_upper"] = number_value(r.limit_upper);
  j["limit_contradiction"] = r.limit_contradiction;
  j["threshold"] = number_value(r.threshold);
  j["below_threshold"] = r.below_threshold;
  j["warnings"] = r.warnings;
  j["rows"] = to_json(comb_table(r));
  return j;
}

Table orbit_table(const OrbitRecord& o) {
  Table t;
  t.columns = {"n", "re", "im", "step_distance"};
  for (size_t k = 0; k < o.points.size(); ++k) {
    double step = k < o.step_distances.size() ? o.step_distances[k] : NAN;
    t.rows.push_back({idx(int(k)), o.points[k].real(), o.points[k].imag(), step});
  }
  return t;
}

Json orbit_json(const OrbitRecord& o) {
  Json j = header("orbit");
  j["start"] = point_json(o.start);
  j["reached_boundary"] = o.reached_boundary;
  j["hint"] = o.hint;
  j["rows"] = to_json(orbit_table(o));
  return j;
}

Table witness_table(const ClusterEstimate& c) {
  Table t;
  t.columns = {"level", "re", "im"};
  for (const auto& w : c.witnesses) t.rows.push_back({idx(w.level), w.point.real(), w.point.imag()});
  return t;
}

Json cluster_summary_json(const ClusterEstimate& c) {
  Json j = header("cluster");
  j["kind"] = std::string(cluster_kind_name(c.kind));
  j["base"] = point_json(c.base);
  j["R"] = number_value(c.params.R);
  j["aperture"] = number_value(c.params.aperture);
  j["arc_samples"] = c.params.arc_samples;
  j["levels"] = c.levels;
  j["metric"] = c.chordal ? "chordal" : "euclidean";
  Json d = Json::array();
  for (double v : c.level_diameters) d.push_back(number_value(v));
  j["level_diameters"] = d;
  j["diameter"] = number_value(c.diameter);
  j["shrinking"] = c.level_diameters.size() >= 2 && c.level_diameters.back() < c.level_diameters.front();
  j["truncation"] = optional_index(c.truncation);
  j["evidence"] = c.evidence;
  return j;
}

}  // namespace horo
