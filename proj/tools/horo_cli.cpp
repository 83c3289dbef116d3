#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "horo/bounds.hpp"
#include "horo/conformal.hpp"
#include "horo/domain_io.hpp"
#include "horo/dynamics.hpp"
#include "horo/horolab.hpp"
#include "horo/output.hpp"
#include "horo/reports.hpp"

using namespace horo;

namespace {

constexpr int kExitContract = 2;
constexpr int kExitConvergence = 3;

struct Global {
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::optional<int> truncation;
};

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) fail(ErrorCode::InvalidParameter, what + ": cannot parse '" + s + "'");
  return v;
}

// "re,im" or "re"
PlanePoint parse_point(const std::string& s, const std::string& what) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_real(s, what), 0.0};
  return {parse_real(s.substr(0, comma), what), parse_real(s.substr(comma + 1), what)};
}

SlitDomain builtin_or_file(const std::string& spec) {
  if (spec == "square") return make_square();
  if (spec == "halfplane") return make_halfplane();
  if (spec == "disk") return make_disk();
  if (spec == "comb") return make_comb();
  if (spec == "petersen") return make_petersen();
  return load_domain(spec);
}

SlitDomain domain_arg(const std::string& spec, const Global& g) {
  SlitDomain d = builtin_or_file(spec);
  return g.truncation ? d.with_truncation(*g.truncation) : d;
}

void emit_table(const Global& g, const Table& t, const Json& j) {
  write_output(g.out, g.format == "json" ? dump_json(j) : to_csv(t));
}

// One-row table holding the scalar fields of a JSON object.
Table scalar_table(const Json& j) {
  Table t;
  std::vector<Cell> row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    Cell c;
    if (v.is_boolean()) {
      c = v.get<bool>();
    } else if (v.is_number_integer()) {
      c = v.get<std::int64_t>();
    } else if (v.is_number()) {
      c = v.get<double>();
    } else if (v.is_string()) {
      c = v.get<std::string>();
    } else if (v.is_null()) {
      c = std::string();
    } else {
      continue;
    }
    t.columns.push_back(it.key());
    row.push_back(c);
  }
  t.rows.push_back(row);
  return t;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FormatError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json point_json(PlanePoint z) { return Json::array({number_value(z.real()), number_value(z.imag())}); }

ConformalMap map_arg(const std::string& map_path, const std::string& domain, int samples, const std::string& anchor,
                     const Global& g) {
  if (!map_path.empty()) return map_from_json_text(read_text(map_path));
  if (domain.empty()) fail(ErrorCode::InvalidParameter, "pass --map or --domain");
  return fit_map(domain_arg(domain, g), samples, parse_point(anchor, "--anchor"));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Horospheres, cluster sets and self-map dynamics in slit domains"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "Output path ('-' for standard output)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed for sampled checks");
  app.add_option("--truncation", g.truncation, "Truncate the slit family after N slits");

  double y = 1.0, M = 0.0;
  int n_max = 60;
  auto* petersen = app.add_subcommand("petersen-report", "T_n certificate for the petersen domain");
  petersen->add_option("--y", y, "Height of the points c_n + iy")->required();
  petersen->add_option("--M", M, "Busemann level");
  petersen->add_option("--n-max", n_max, "Last row (at most 60)");

  double k = 0.5, h = 0.02, r0 = 0.5;
  int comb_n_max = 20;
  auto* comb = app.add_subcommand("comb-report", "Two-sided comb estimates along the channels");
  comb->set_help_flag("--help", "Print this help message and exit");
  comb->add_option("--k", k, "Real part -k of the channel points")->required();
  comb->add_option("--h", h, "Real part -h of the intermediate points")->required();
  comb->add_option("--r0", r0, "Base point on the real axis")->required();
  comb->add_option("--M", M, "Busemann level");
  comb->add_option("--n-max", comb_n_max, "Last channel index");

  std::string domain, z_text, w_text;
  double spacing = 1.0 / 32.0;
  int grid_levels = 1;
  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds for the hyperbolic distance");
  bounds->add_option("--domain", domain, "Domain JSON file or square|halfplane|disk|comb|petersen")->required();
  bounds->add_option("--z", z_text, "First point re,im")->required();
  bounds->add_option("--w", w_text, "Second point re,im")->required();
  bounds->add_option("--spacing", spacing, "Grid spacing for the path search");
  bounds->add_option("--grid-levels", grid_levels, "Grid halvings tried");

  std::string map_path, z0_text = "0";
  int steps = 200;
  auto* orbit = app.add_subcommand("orbit", "Orbit of a self-map");
  orbit->add_option("--map", map_path, "Self-map JSON file")->required();
  orbit->add_option("--z0", z0_text, "Start re,im");
  orbit->add_option("--n", steps, "Number of iterations");

  std::string sigma_text = "1", kind_text = "horospheric", anchor_text = "0.5", summary_path;
  int samples = 512, levels = 6;
  ApproachParams approach;
  auto* cluster = app.add_subcommand("cluster", "Cluster set witnesses of a Riemann map at a boundary point");
  cluster->add_option("--map", map_path, "Fitted map JSON file (from fitmap)");
  cluster->add_option("--domain", domain, "Target domain to fit when --map is absent");
  cluster->add_option("--samples", samples, "Boundary samples for the fit");
  cluster->add_option("--anchor", anchor_text, "Image of 0 for the fit");
  cluster->add_option("--sigma", sigma_text, "Boundary point re,im of the unit circle");
  cluster->add_option("--kind", kind_text, "Approach region")
      ->check(CLI::IsMember({"unrestricted", "nontangential", "horospheric"}));
  cluster->add_option("--R", approach.R, "Horodisc parameter");
  cluster->add_option("--aperture", approach.aperture, "Stolz aperture (> 1)");
  cluster->add_option("--arc-samples", approach.arc_samples, "Samples per arc");
  cluster->add_option("--levels", levels, "Refinement levels (1..8)");
  cluster->add_option("--summary", summary_path, "Summary JSON path (csv format)");

  std::string normalization_text;
  auto* fitmap = app.add_subcommand("fitmap", "Fit a Riemann map from the disk and serialize it");
  fitmap->add_option("--domain", domain, "Domain JSON file or square|halfplane|disk|comb|petersen")->required();
  fitmap->add_option("--samples", samples, "Boundary samples");
  fitmap->add_option("--anchor", anchor_text, "Image of 0");
  fitmap->add_option("--normalization", normalization_text, "Boundary point sent to 1");

  int budget = 100000;
  std::optional<double> tol;
  std::vector<std::string> start_texts;
  std::vector<double> julia_R;
  int julia_samples = 10000;
  auto* dw = app.add_subcommand("dw", "Denjoy-Wolff point of a self-map");
  dw->add_option("--map", map_path, "Self-map JSON file")->required();
  dw->add_option("--budget", budget, "Iteration budget per start");
  dw->add_option("--tol", tol, "Convergence tolerance");
  dw->add_option("--start", start_texts, "Start points re,im (repeatable)");
  dw->add_option("--julia-R", julia_R, "Horodisc parameters for the invariance check");
  dw->add_option("--julia-samples", julia_samples, "Samples per horodisc");

  auto* divergence = app.add_subcommand("divergence", "Divergence rate k(f^n(z0), z0) / n");
  divergence->add_option("--map", map_path, "Self-map JSON file")->required();
  divergence->add_option("--z0", z0_text, "Start re,im");
  divergence->add_option("--n", steps, "Number of iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitContract;
  }

  if (*petersen) {
    PetersenReport r = petersen_report(y, M, n_max);
    emit_table(g, petersen_table(r), petersen_json(r));
  } else if (*comb) {
    CombReport r = comb_report(k, h, r0, M, comb_n_max, SequenceRule{}, g.truncation);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    emit_table(g, comb_table(r), comb_json(r));
  } else if (*bounds) {
    SlitDomain d = domain_arg(domain, g);
    PlanePoint z = parse_point(z_text, "--z"), w = parse_point(w_text, "--w");
    GridSpec grid;
    grid.spacing = spacing;
    grid.levels = grid_levels;
    GridPath p = distance_upper_path(d, z, w, grid);
    Json j;
    j["schema"] = "bounds";
    j["schema_version"] = kReportSchemaVersion;
    j["lower"] = number_value(distance_lower(d, z, w));
    j["upper"] = number_value(p.upper);
    j["grid_level"] = p.level;
    j["path_vertices"] = p.path.vertices.size();
    Json path = Json::array();
    for (auto v : p.path.vertices) path.push_back(point_json(v));
    Table t = scalar_table(j);
    j["path"] = path;
    emit_table(g, t, j);
  } else if (*orbit) {
    SelfMap f = load_selfmap(map_path);
    OrbitRecord o = iterate(f, parse_point(z0_text, "--z0"), steps);
    if (o.reached_boundary) std::cerr << "warning: orbit reached the boundary after " << o.points.size() - 1 << " steps\n";
    emit_table(g, orbit_table(o), orbit_json(o));
  } else if (*cluster) {
    ConformalMap m = map_arg(map_path, domain, samples, anchor_text, g);
    ClusterKind kind = kind_text == "unrestricted"    ? ClusterKind::Unrestricted
                       : kind_text == "nontangential" ? ClusterKind::Nontangential
                                                      : ClusterKind::Horospheric;
    ClusterEstimate c = cluster_set(m, parse_point(sigma_text, "--sigma"), kind, approach, levels);
    Json summary = cluster_summary_json(c);
    if (g.format == "json") {
      summary["witnesses"] = to_json(witness_table(c));
      write_output(g.out, dump_json(summary));
    } else {
      write_output(g.out, to_csv(witness_table(c)));
      if (!summary_path.empty()) write_output(summary_path, dump_json(summary));
    }
  } else if (*fitmap) {
    FitOptions opt;
    if (!normalization_text.empty()) opt.normalization_point = parse_point(normalization_text, "--normalization");
    ConformalMap m = fit_map(domain_arg(domain, g), samples, parse_point(anchor_text, "--anchor"), opt);
    std::cerr << "accuracy " << format_number(m.accuracy()) << "\n";
    write_output(g.out, map_to_json_text(m) + "\n");
  } else if (*dw) {
    SelfMap f = load_selfmap(map_path);
    DenjoyWolffOptions opt;
    opt.budget = budget;
    opt.tolerance = tol;
    for (const auto& s : start_texts) opt.starts.push_back(parse_point(s, "--start"));
    DenjoyWolffResult r = denjoy_wolff_point(f, opt);
    Json j;
    j["schema"] = "dw";
    j["schema_version"] = kReportSchemaVersion;
    j["on_boundary"] = r.on_boundary;
    j["re"] = number_value(r.point.real());
    j["im"] = number_value(r.point.imag());
    j["disk_re"] = number_value(r.disk_point.real());
    j["disk_im"] = number_value(r.disk_point.imag());
    j["spread"] = number_value(r.spread);
    j["iterations"] = r.iterations;
    j["tolerance"] = number_value(r.tolerance);
    if (f.mobius()) {
      Classification c = classify(to_disk_model(*f.mobius()));
      j["class"] = std::string(class_name(c.kind));
      j["trace"] = number_value(c.trace);
    }
    int violations = 0;
    Json rows = Json::array();
    if (!julia_R.empty() && r.on_boundary) {
      JuliaReport jr = julia_invariance_check(f, r.point, julia_R, julia_samples, g.seed);
      violations = jr.total_violations();
      for (const auto& row : jr.rows) {
        rows.push_back({{"R", number_value(row.R)},
                        {"samples", row.samples},
                        {"violations", row.violations},
                        {"max_increase", number_value(row.max_increase)}});
      }
      j["julia_violations"] = violations;
    }
    Table t = scalar_table(j);
    Json est = Json::array();
    for (auto e : r.estimates) est.push_back(point_json(e));
    j["estimates"] = est;
    if (!rows.empty()) j["julia"] = rows;
    emit_table(g, t, j);
  } else if (*divergence) {
    SelfMap f = load_selfmap(map_path);
    DivergenceEstimate e = divergence_rate(f, parse_point(z0_text, "--z0"), steps);
    Json j;
    j["schema"] = "divergence";
    j["schema_version"] = kReportSchemaVersion;
    j["rate"] = number_value(e.rate);
    j["diagnostic"] = number_value(e.diagnostic);
    j["steps"] = e.steps;
    emit_table(g, scalar_table(j), j);
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_convergence_failure(e.code()) ? kExitConvergence : kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
}
