#include "conelab/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "conelab/cross_section.hpp"

namespace conelab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail("unknown key '" + item.key() + "' in " + where);
}

double get_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where + " is missing '" + key + "'");
  if (!obj[key].is_number()) fail(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

int get_integer(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where + " is missing '" + key + "'");
  if (!obj[key].is_number_integer()) fail(where + "." + key + " must be an integer");
  return obj[key].get<int>();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  require_keys(root, "config",
               {"n", "cross_section", "outer_radius", "outer_bc", "warp", "mesh",
                "tau", "solver", "sweep", "output_dir"});

  ExperimentConfig cfg;
  cfg.n = get_integer(root, "config", "n");
  if (cfg.n < 3)
    fail("n must be >= 3 (radial analysis assumes dimension at least 3)");

  if (!root.contains("cross_section")) fail("config is missing 'cross_section'");
  {
    const json& cs = root["cross_section"];
    require_keys(cs, "cross_section", {"round_sphere", "spectrum"});
    const bool has_rs = cs.contains("round_sphere");
    const bool has_sp = cs.contains("spectrum");
    if (has_rs == has_sp)
      fail("cross_section needs exactly one of 'round_sphere' or 'spectrum'");
    if (has_rs) {
      require_keys(cs["round_sphere"], "cross_section.round_sphere", {"a"});
      cfg.cross_section.round_sphere = true;
      cfg.cross_section.a = get_number(cs["round_sphere"], "round_sphere", "a");
      if (!(cfg.cross_section.a > 0.0)) fail("round_sphere.a must be positive");
    } else {
      const json& sp = cs["spectrum"];
      require_keys(sp, "cross_section.spectrum", {"R_h0", "volume", "eigenvalues"});
      cfg.cross_section.round_sphere = false;
      cfg.cross_section.r_h0 = get_number(sp, "spectrum", "R_h0");
      cfg.cross_section.volume = get_number(sp, "spectrum", "volume");
      if (!sp.contains("eigenvalues") || !sp["eigenvalues"].is_array())
        fail("spectrum.eigenvalues must be an array");
      for (const json& v : sp["eigenvalues"]) {
        if (!v.is_number()) fail("spectrum.eigenvalues entries must be numbers");
        cfg.cross_section.eigenvalues.push_back(v.get<double>());
      }
      if (cfg.cross_section.eigenvalues.empty())
        fail("spectrum.eigenvalues must be non-empty");
    }
  }

  cfg.outer_radius = get_number(root, "config", "outer_radius");
  if (!(cfg.outer_radius > 0.0)) fail("outer_radius must be positive");

  if (!root.contains("outer_bc") || !root["outer_bc"].is_string())
    fail("outer_bc must be \"neumann\" or \"dirichlet\"");
  {
    const std::string bc = root["outer_bc"].get<std::string>();
    if (bc == "neumann")
      cfg.outer_bc = OuterBc::neumann;
    else if (bc == "dirichlet")
      cfg.outer_bc = OuterBc::dirichlet;
    else
      fail("outer_bc must be \"neumann\" or \"dirichlet\"");
  }

  if (!root.contains("warp")) fail("config is missing 'warp'");
  {
    const json& w = root["warp"];
    require_keys(w, "warp", {"exact", "perturbed"});
    const bool has_exact = w.contains("exact");
    const bool has_pert = w.contains("perturbed");
    if (has_exact == has_pert)
      fail("warp needs exactly one of 'exact' or 'perturbed'");
    if (has_exact) {
      require_keys(w["exact"], "warp.exact", {});
      cfg.warp.kind = WarpKind::exact;
    } else {
      const json& p = w["perturbed"];
      require_keys(p, "warp.perturbed", {"alpha", "c"});
      cfg.warp.kind = WarpKind::perturbed;
      cfg.warp.alpha = get_number(p, "warp.perturbed", "alpha");
      cfg.warp.c = get_number(p, "warp.perturbed", "c");
      if (!(cfg.warp.alpha > 0.0)) fail("warp.perturbed.alpha must be positive");
    }
  }

  if (root.contains("mesh")) {
    const json& m = root["mesh"];
    require_keys(m, "mesh", {"points", "grading"});
    if (m.contains("points")) cfg.mesh.points = get_integer(m, "mesh", "points");
    if (m.contains("grading")) cfg.mesh.grading = get_number(m, "mesh", "grading");
  }
  if (cfg.mesh.points < 2) fail("mesh.points must be >= 2");
  if (!(cfg.mesh.grading > 0.0 && cfg.mesh.grading < 1.0))
    fail("mesh.grading must lie in (0, 1)");

  if (root.contains("tau")) {
    const json& t = root["tau"];
    cfg.taus.clear();
    if (t.is_number()) {
      cfg.taus.push_back(t.get<double>());
    } else if (t.is_array()) {
      for (const json& v : t) {
        if (!v.is_number()) fail("tau entries must be numbers");
        cfg.taus.push_back(v.get<double>());
      }
    } else {
      fail("tau must be a number or an array of numbers");
    }
    if (cfg.taus.empty()) fail("tau list must be non-empty");
  }
  for (double t : cfg.taus)
    if (!(t > 0.0)) fail("tau values must be positive");

  if (root.contains("solver")) {
    const json& s = root["solver"];
    require_keys(s, "solver", {"max_iters", "tol", "step0"});
    if (s.contains("max_iters"))
      cfg.solver.max_iters = get_integer(s, "solver", "max_iters");
    if (s.contains("tol")) cfg.solver.tol = get_number(s, "solver", "tol");
    if (s.contains("step0")) cfg.solver.step0 = get_number(s, "solver", "step0");
  }
  if (cfg.solver.max_iters < 1) fail("solver.max_iters must be >= 1");
  if (!(cfg.solver.tol > 0.0)) fail("solver.tol must be positive");
  if (!(cfg.solver.step0 > 0.0)) fail("solver.step0 must be positive");

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    require_keys(s, "sweep", {"a", "M"});
    SweepConfig sweep;
    if (s.contains("a")) {
      if (!s["a"].is_array()) fail("sweep.a must be an array");
      for (const json& v : s["a"]) {
        if (!v.is_number()) fail("sweep.a entries must be numbers");
        sweep.a.push_back(v.get<double>());
      }
      if (sweep.a.empty()) fail("sweep.a must be non-empty when present");
      if (!cfg.cross_section.round_sphere)
        fail("sweep.a requires a round_sphere cross section");
      for (double a : sweep.a)
        if (!(a > 0.0)) fail("sweep.a entries must be positive");
    }
    if (s.contains("M")) {
      if (!s["M"].is_array()) fail("sweep.M must be an array");
      for (const json& v : s["M"]) {
        if (!v.is_number_integer()) fail("sweep.M entries must be integers");
        sweep.m.push_back(v.get<int>());
      }
      if (sweep.m.empty()) fail("sweep.M must be non-empty when present");
      for (int m : sweep.m)
        if (m < 2) fail("sweep.M entries must be >= 2");
    }
    if (sweep.a.empty() && sweep.m.empty())
      fail("sweep must contain 'a' and/or 'M'");
    cfg.sweep = std::move(sweep);
  }

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) fail("output_dir must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
    if (cfg.output_dir.empty()) fail("output_dir must be non-empty");
  }

  make_model(cfg).validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ConeModel make_model(const ExperimentConfig& config) {
  if (config.cross_section.round_sphere)
    return make_model_with_a(config, config.cross_section.a);
  CrossSection cs;
  cs.dim = config.n - 1;
  cs.scalar_curvature = config.cross_section.r_h0;
  cs.volume = config.cross_section.volume;
  cs.laplace_eigenvalues = config.cross_section.eigenvalues;
  cs.round_sphere_radius = 0.0;
  return make_cone_model(config.n, cs, config.outer_radius, config.warp,
                         config.outer_bc);
}

ConeModel make_model_with_a(const ExperimentConfig& config, double a) {
  if (!config.cross_section.round_sphere)
    fail("radius sweep needs a round_sphere cross section");
  return make_cone_model(config.n,
                         make_round_sphere_cross_section(config.n, a),
                         config.outer_radius, config.warp, config.outer_bc);
}

ordered_json canonical_config(const ExperimentConfig& config) {
  ordered_json out;
  out["n"] = config.n;
  if (config.cross_section.round_sphere) {
    out["cross_section"] = {{"round_sphere", {{"a", config.cross_section.a}}}};
  } else {
    out["cross_section"] = {
        {"spectrum",
         {{"R_h0", config.cross_section.r_h0},
          {"volume", config.cross_section.volume},
          {"eigenvalues", config.cross_section.eigenvalues}}}};
  }
  out["outer_radius"] = config.outer_radius;
  out["outer_bc"] =
      config.outer_bc == OuterBc::dirichlet ? "dirichlet" : "neumann";
  if (config.warp.kind == WarpKind::exact) {
    out["warp"] = {{"exact", ordered_json::object()}};
  } else {
    out["warp"] = {
        {"perturbed", {{"alpha", config.warp.alpha}, {"c", config.warp.c}}}};
  }
  out["mesh"] = {{"points", config.mesh.points}, {"grading", config.mesh.grading}};
  out["tau"] = config.taus;
  out["solver"] = {{"max_iters", config.solver.max_iters},
                   {"tol", config.solver.tol},
                   {"step0", config.solver.step0}};
  if (config.sweep) {
    ordered_json sw = ordered_json::object();
    if (!config.sweep->a.empty()) sw["a"] = config.sweep->a;
    if (!config.sweep->m.empty()) sw["M"] = config.sweep->m;
    out["sweep"] = sw;
  }
  out["output_dir"] = config.output_dir;
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string dump = canonical_config(config).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace conelab
