#include "conelab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "conelab/asymptotics.hpp"
#include "conelab/cross_section.hpp"
#include "conelab/functionals.hpp"
#include "conelab/inequality_checks.hpp"
#include "conelab/mode_operator.hpp"
#include "conelab/version.hpp"
#include "conelab/weighted_norms.hpp"

namespace conelab {

namespace {

using nlohmann::ordered_json;

// Fixed seed for the built-in random families; part of the report stamp.
constexpr std::uint64_t kSeed = 20260816ULL;

// xorshift64* stream; deterministic across runs of the same binary.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 1) {}
  std::uint64_t next() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return s * 0x2545F4914F6CDD1DULL;
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

unsigned pool_size(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("CONELAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = unsigned(v);
  }
  if (n < 1) n = 1;
  return unsigned(std::min<std::size_t>(n, jobs));
}

// Runs fn(0..jobs-1) on a small work pool; results must be written to
// pre-sized slots so assembly order never depends on scheduling.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned nt = pool_size(jobs);
  if (nt <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (unsigned t = 0; t < nt; ++t)
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::string series_csv(const GridFunction& u) {
  std::string out = "r,u,mode\n";
  char buf[96];
  for (std::size_t j = 0; j < u.modes(); ++j)
    for (std::size_t i = 0; i < u.points(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", u.mesh->nodes[i],
                    u.values[j][i], j);
      out += buf;
    }
  return out;
}

ordered_json base_report(const ExperimentConfig& config, const char* command) {
  ordered_json report;
  report["command"] = command;
  report["stamp"] = {{"version", kVersion}, {"seed", kSeed}};
  report["config_hash"] = config_hash(config);
  report["config"] = canonical_config(config);
  return report;
}

ordered_json fit_json(const DecayFit& fit) {
  return ordered_json{{"window", {fit.window.lo, fit.window.hi}},
                      {"fitted_exponent", fit.fitted_exponent},
                      {"residual", fit.residual},
                      {"bound", fit.bound},
                      {"indicial_root", fit.indicial_root},
                      {"theorem_consistent", fit.theorem_consistent}};
}

// --- built-in test families -------------------------------------------------

GridFunction log_bump(std::shared_ptr<const RadialMesh> mesh, double center,
                      double width) {
  return make_radial(mesh, [=](double r) {
    const double t = (std::log(r) - center) / width;
    return std::exp(-t * t);
  });
}

std::vector<GridFunction> radial_family(std::shared_ptr<const RadialMesh> mesh) {
  std::vector<GridFunction> fam;
  fam.push_back(make_radial(mesh, [](double) { return 1.0; }));
  fam.push_back(make_radial(mesh, [](double r) { return r; }));
  fam.push_back(make_radial(mesh, [](double r) { return std::sqrt(r); }));
  fam.push_back(make_radial(mesh, [](double r) { return std::pow(r, -0.2); }));
  fam.push_back(make_radial(mesh, [](double r) { return 2.0 + std::sin(std::log(r)); }));
  fam.push_back(make_radial(mesh, [](double r) {
    const double t = std::log(r) + 3.0;
    return std::exp(-0.5 * t * t);
  }));
  fam.push_back(make_radial(mesh, [](double r) { return 1.0 / (1.0 + r); }));
  fam.push_back(make_radial(mesh, [](double r) { return r * r - 0.5 * r + 0.1; }));
  fam.push_back(make_radial(mesh, [](double r) { return std::cos(3.0 * std::log(r)); }));
  fam.push_back(make_radial(mesh, [](double r) {
    return std::pow(r, 0.3) * (2.0 + std::sin(2.0 * std::log(r)));
  }));
  return fam;
}

GridFunction random_two_mode(std::shared_ptr<const RadialMesh> mesh, Rng& rng) {
  const double c1 = rng.range(-6.0, -0.5), w1 = rng.range(0.4, 1.5);
  const double p1 = rng.range(-0.3, 1.0), k1 = rng.range(0.5, 3.0);
  const double a0 = rng.range(-1.0, 1.0), b0 = rng.range(-1.0, 1.0);
  const double a1 = rng.range(-0.5, 0.5), b1 = rng.range(-0.5, 0.5);
  GridFunction u = make_zero(mesh, 2);
  for (std::size_t i = 0; i < mesh->size(); ++i) {
    const double r = mesh->nodes[i];
    const double t = (std::log(r) - c1) / w1;
    const double bump = std::exp(-t * t);
    u.values[0][i] = a0 * bump + b0 * std::pow(r, p1);
    u.values[1][i] = a1 * std::sin(k1 * std::log(r)) * r + b1 * bump;
  }
  return u;
}

// --- lambda sweep -----------------------------------------------------------

}  // namespace

RunResult run_lambda_sweep(const ExperimentConfig& config) {
  if (!config.sweep || (config.sweep->a.empty() && config.sweep->m.empty()))
    throw std::invalid_argument("lambda-sweep: config has no sweep grid");

  std::vector<std::optional<double>> radii;
  if (config.sweep->a.empty())
    radii.push_back(std::nullopt);
  else
    for (double a : config.sweep->a) radii.emplace_back(a);
  std::vector<int> sizes =
      config.sweep->m.empty() ? std::vector<int>{config.mesh.points}
                              : config.sweep->m;

  struct Cell {
    ordered_json row;
    bool ok = false;
    double lambda = 0.0;
  };
  const std::size_t jobs = radii.size() * sizes.size();
  std::vector<Cell> cells(jobs);
  const std::string hash = config_hash(config);

  parallel_for(jobs, [&](std::size_t idx) {
    const std::size_t ia = idx / sizes.size();
    const std::size_t im = idx % sizes.size();
    Cell& cell = cells[idx];
    ordered_json& row = cell.row;
    row["check"] = "lambda";
    if (radii[ia]) row["a"] = *radii[ia];
    row["M"] = sizes[im];
    row["tolerance"] = config.solver.tol;
    row["config_hash"] = hash;
    try {
      const ConeModel model = radii[ia] ? make_model_with_a(config, *radii[ia])
                                        : make_model(config);
      const auto mesh =
          build_mesh(config.outer_radius, sizes[im], config.mesh.grading);
      const SolveReport rep = lambda_functional(model, mesh, config.solver.tol);
      cell.ok = true;
      cell.lambda = rep.value;
      row["status"] = "ok";
      row["lambda"] = rep.value;
      row["mode"] = rep.mode;
      row["residual"] = rep.el_residual;
      row["iterations"] = rep.iterations;
      row["subcritical"] = model.subcritical();
    } catch (const std::exception& e) {
      row["status"] = "failed";
      row["error"] = e.what();
    }
  });

  RunResult out;
  out.report = base_report(config, "lambda-sweep");
  bool all = true;
  ordered_json rows = ordered_json::array();
  for (auto& c : cells) {
    all = all && c.ok;
    rows.push_back(std::move(c.row));
  }

  // Dichotomy classification per radius, over ascending mesh sizes.
  std::vector<std::size_t> order(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return sizes[x] < sizes[y]; });
  ordered_json summary = ordered_json::array();
  for (std::size_t ia = 0; ia < radii.size(); ++ia) {
    ordered_json entry;
    if (radii[ia]) entry["a"] = *radii[ia];
    std::vector<double> lams;
    bool complete = true;
    for (std::size_t im : order) {
      const Cell& c = cells[ia * sizes.size() + im];
      if (!c.ok) complete = false;
      lams.push_back(c.lambda);
    }
    if (!complete || lams.size() < 2) {
      entry["classification"] = complete ? "single-mesh" : "incomplete";
    } else {
      bool shrinking = true;
      for (std::size_t k = 0; k + 2 < lams.size(); ++k)
        if (!(std::abs(lams[k + 2] - lams[k + 1]) < std::abs(lams[k + 1] - lams[k])))
          shrinking = false;
      bool decreasing = true;
      for (std::size_t k = 0; k + 1 < lams.size(); ++k)
        if (!(lams[k + 1] < lams[k])) decreasing = false;
      if (lams.size() >= 3 && shrinking)
        entry["classification"] = "cauchy";
      else if (decreasing && lams.back() < -100.0)
        entry["classification"] = "divergent";
      else
        entry["classification"] = "inconclusive";
      entry["lambdas"] = lams;
    }
    summary.push_back(std::move(entry));
  }

  out.report["rows"] = std::move(rows);
  out.report["summary"] = std::move(summary);
  out.report["all_passed"] = all;
  out.all_passed = all;
  return out;
}

// --- mu solve ---------------------------------------------------------------

RunResult run_mu_solve(const ExperimentConfig& config) {
  if (config.sweep)
    throw std::invalid_argument(
        "mu-solve: sweep grids are not supported here; use lambda-sweep");
  const ConeModel model = make_model(config);
  const auto mesh =
      build_mesh(config.outer_radius, config.mesh.points, config.mesh.grading);
  const std::string hash = config_hash(config);

  struct Job {
    ordered_json row;
    bool pass = false;
    std::string series;
  };
  std::vector<Job> jobs(config.taus.size());

  parallel_for(jobs.size(), [&](std::size_t i) {
    const double tau = config.taus[i];
    Job& job = jobs[i];
    ordered_json& row = job.row;
    row["check"] = "mu";
    row["tau"] = tau;
    row["tolerance"] = config.solver.tol;
    row["config_hash"] = hash;
    try {
      const SolveReport rep = mu_functional(model, mesh, tau, config.solver);
      const bool converged = rep.status == SolveStatus::converged;
      row["status"] = converged ? "converged" : "diverging";
      row["mu"] = rep.value;
      row["el_residual"] = rep.el_residual;
      row["el_residual_printed_eq"] = rep.el_residual_printed_eq;
      row["constraint_error"] = rep.constraint_error;
      row["iterations"] = rep.iterations;
      if (converged) {
        job.pass = true;
        try {
          const DecayFit fit = fit_decay_exponent(
              rep.minimizer, model, default_decay_window(model, *mesh));
          row["decay_fit"] = fit_json(fit);
        } catch (const std::exception& e) {
          row["decay_fit"] = {{"error", e.what()}};
        }
        job.series = series_csv(rep.minimizer);
      } else {
        job.pass = !model.subcritical();
        row["expected"] = job.pass;
      }
    } catch (const std::exception& e) {
      row["status"] = "failed";
      row["error"] = e.what();
    }
    row["passed"] = job.pass;
  });

  RunResult out;
  out.report = base_report(config, "mu-solve");
  bool all = true;
  ordered_json rows = ordered_json::array();
  ordered_json series_names = ordered_json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    all = all && jobs[i].pass;
    rows.push_back(std::move(jobs[i].row));
    if (!jobs[i].series.empty()) {
      const std::string name = "series_mu_tau" + std::to_string(i) + ".csv";
      series_names.push_back(name);
      out.files.emplace_back(name, std::move(jobs[i].series));
    }
  }
  out.report["rows"] = std::move(rows);
  out.report["series_files"] = std::move(series_names);
  out.report["all_passed"] = all;
  out.all_passed = all;
  return out;
}

// --- decay fit --------------------------------------------------------------

RunResult run_decay_fit(const ExperimentConfig& config) {
  if (config.sweep)
    throw std::invalid_argument("decay-fit: sweep grids are not supported here");
  const ConeModel model = make_model(config);
  const auto mesh =
      build_mesh(config.outer_radius, config.mesh.points, config.mesh.grading);
  const std::string hash = config_hash(config);

  struct Job {
    ordered_json row;
    bool pass = false;
    std::string series;
  };
  std::vector<Job> jobs(config.taus.size());

  parallel_for(jobs.size(), [&](std::size_t i) {
    const double tau = config.taus[i];
    Job& job = jobs[i];
    ordered_json& row = job.row;
    row["check"] = "decay_fit";
    row["tau"] = tau;
    row["tolerance"] = 0.02;  // nested-window stability threshold
    row["config_hash"] = hash;
    try {
      const SolveReport rep = mu_functional(model, mesh, tau, config.solver);
      const bool converged = rep.status == SolveStatus::converged;
      row["status"] = converged ? "converged" : "diverging";
      row["mu"] = rep.value;
      if (!converged) {
        job.pass = !model.subcritical();
        row["expected"] = job.pass;
        row["passed"] = job.pass;
        return;
      }
      const DecayWindow base = default_decay_window(model, *mesh);
      const DecayFit fit = fit_decay_exponent(rep.minimizer, model, base);
      row["decay_fit"] = fit_json(fit);

      // Nested windows share the inner edge and halve the outer one.
      ordered_json nested = ordered_json::array();
      double spread = 0.0;
      int fitted = 0;
      for (int k = 1; k <= 2; ++k) {
        const DecayWindow w{base.lo, base.hi / std::pow(2.0, k)};
        try {
          const DecayFit f = fit_decay_exponent(rep.minimizer, model, w);
          nested.push_back(f.fitted_exponent);
          spread = std::max(spread,
                            std::abs(f.fitted_exponent - fit.fitted_exponent));
          ++fitted;
        } catch (const std::exception& e) {
          nested.push_back(ordered_json{{"error", e.what()}});
        }
      }
      const bool stable = fitted == 2 && spread < 0.02;
      row["nested_exponents"] = std::move(nested);
      row["window_spread"] = spread;
      row["non_asymptotic_window"] = !stable;
      job.pass = fit.theorem_consistent && stable;
      job.series = series_csv(rep.minimizer);
    } catch (const std::exception& e) {
      row["status"] = "failed";
      row["error"] = e.what();
    }
    row["passed"] = job.pass;
  });

  RunResult out;
  out.report = base_report(config, "decay-fit");
  bool all = true;
  ordered_json rows = ordered_json::array();
  ordered_json series_names = ordered_json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    all = all && jobs[i].pass;
    rows.push_back(std::move(jobs[i].row));
    if (!jobs[i].series.empty()) {
      const std::string name = "series_decay_tau" + std::to_string(i) + ".csv";
      series_names.push_back(name);
      out.files.emplace_back(name, std::move(jobs[i].series));
    }
  }
  out.report["rows"] = std::move(rows);
  out.report["series_files"] = std::move(series_names);
  out.report["all_passed"] = all;
  out.all_passed = all;
  return out;
}

// --- inequality suite -------------------------------------------------------

namespace {

struct RowBuild {
  ordered_json row;
  std::optional<GridFunction> witness;
  bool passed = false;
};

void push_row(std::vector<RowBuild>& rows, ordered_json row, bool passed,
              std::optional<GridFunction> witness = std::nullopt) {
  row["passed"] = passed;
  rows.push_back({std::move(row), std::move(witness), passed});
}

}  // namespace

RunResult run_inequality_suite(const ExperimentConfig& config) {
  const ConeModel model = make_model(config);
  const auto mesh =
      build_mesh(config.outer_radius, config.mesh.points, config.mesh.grading);
  const std::string hash = config_hash(config);
  const int n = model.n;
  const double L = model.outer_radius;
  const double q = config.mesh.grading;
  const std::size_t M = mesh->size();
  const double tau = config.taus.front();
  Rng rng(kSeed);
  std::vector<RowBuild> rows;

  const bool has_modes =
      model.cross_section.laplace_eigenvalues.size() >= 2;
  std::vector<GridFunction> family = radial_family(mesh);
  if (has_modes) {
    family.push_back(random_two_mode(mesh, rng));
    family.push_back(random_two_mode(mesh, rng));
  }
  // Tip-concentrated and outer-region members exercise both weight regimes.
  const double log_r1 = std::log(mesh->nodes.front());
  family.push_back(log_bump(mesh, 0.7 * log_r1, 0.8));
  family.push_back(log_bump(mesh, std::log(0.9 * L), 0.1));

  // Hardy validity rows.
  {
    const std::vector<std::pair<double, int>> pk_pairs = {
        {2.0, 1}, {2.0, 2}, {1.5, 1}, {3.0, 2}};
    for (const auto& [p, k] : pk_pairs) {
      if (std::abs(p * k - double(n)) < 1e-9) continue;
      for (std::size_t fi = 0; fi < family.size(); ++fi) {
        ordered_json row{{"check", "hardy"},
                         {"p", p},
                         {"k", k},
                         {"function", fi},
                         {"tolerance", 1e-8},
                         {"config_hash", hash}};
        const HardyReport rep = hardy_check(family[fi], model, p, k);
        row["lhs"] = rep.lhs;
        row["rhs"] = rep.rhs;
        row["constant"] = rep.constant;
        row["ratio"] = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
        push_row(rows, std::move(row), rep.satisfied, family[fi]);
      }
    }
  }

  // Hardy sharpness on a dedicated deep mesh (p = 2, k = 1, n = 3).
  {
    const ConeModel sharp_model =
        make_cone_model(3, make_round_sphere_cross_section(3, 1.0), 1.0,
                        Warp{WarpKind::exact, 0.0, 0.0}, OuterBc::neumann);
    const auto sharp_mesh = build_mesh(1.0, 1024, std::exp(-36.0 / 1023.0));
    const std::size_t sm = sharp_mesh->size();
    const std::size_t i0 = std::size_t(0.16 * double(sm - 1));
    const std::size_t i1 = std::size_t(0.84 * double(sm - 1));
    const double expo = (2.0 * 1.0 - 3.0) / 2.0;  // (pk - n)/p
    auto member = [&](const std::function<double(double)>& w) {
      GridFunction u = make_zero(sharp_mesh, 1);
      for (std::size_t i = i0; i <= i1; ++i) {
        const double s = double(i - i0) / double(i1 - i0);
        u.values[0][i] = std::pow(sharp_mesh->nodes[i], expo) * w(s);
      }
      return u;
    };
    const double pi = 3.14159265358979323846;
    std::vector<GridFunction> members;
    members.push_back(member([&](double s) { return std::sin(pi * s); }));
    members.push_back(member([&](double s) {
      const double v = std::sin(pi * s);
      return v * v;
    }));
    members.push_back(member([](double s) { return s * (1.0 - s); }));
    members.push_back(member([](double s) {
      const double v = s * (1.0 - s);
      return v * v;
    }));
    double best = 0.0;
    bool all_valid = true;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const HardyReport rep = hardy_check(members[i], sharp_model, 2.0, 1);
      all_valid = all_valid && rep.satisfied;
      const double ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
      if (ratio > best) {
        best = ratio;
        best_idx = i;
      }
    }
    ordered_json row{{"check", "hardy_sharpness"},
                     {"n", 3},
                     {"p", 2.0},
                     {"k", 1},
                     {"mesh_points", 1024},
                     {"best_ratio", best},
                     {"threshold", 0.9},
                     {"tolerance", 0.9},
                     {"config_hash", hash}};
    push_row(rows, std::move(row), all_valid && best >= 0.9, members[best_idx]);
  }

  // Norm equivalence rows.
  {
    const std::vector<std::pair<int, double>> kp = {
        {0, 2.0}, {1, 2.0}, {2, 2.0}, {1, 2.5}};
    for (const auto& [k, p] : kp) {
      bool admissible = true;
      for (int i = 1; i <= k; ++i)
        if (std::abs(p * i - double(n)) < 1e-9) admissible = false;
      if (!admissible) continue;
      for (std::size_t fi = 0; fi < family.size(); ++fi) {
        ordered_json row{{"check", "norm_equivalence"},
                         {"k", k},
                         {"p", p},
                         {"function", fi},
                         {"tolerance", 0.0},
                         {"config_hash", hash}};
        const NormEquivalenceReport rep =
            norm_equivalence_check(family[fi], model, k, p);
        row["lower_ok"] = rep.lower_ok;
        row["ratio"] = rep.ratio;
        push_row(rows, std::move(row), rep.lower_ok && std::isfinite(rep.ratio),
                 family[fi]);
      }
    }
  }

  // Embedding ratio rows (aggregated over the family).
  {
    const WeightSpec from{1, 2.0, 1.0 - 0.5 * double(n)};
    const std::vector<WeightSpec> tos = {
        {0, 2.0, from.delta},
        {0, 2.0 * double(n) / double(n - 2), from.delta}};
    for (const WeightSpec& to : tos) {
      double max_ratio = 0.0;
      bool finite = true;
      for (const GridFunction& f : family) {
        const EmbeddingReport rep = embedding_check(f, model, from, to);
        max_ratio = std::max(max_ratio, rep.rhs_ratio);
        finite = finite && std::isfinite(rep.rhs_ratio);
      }
      ordered_json row{{"check", "embedding"},
                       {"from", {from.k, from.p, from.delta}},
                       {"to", {to.k, to.p, to.delta}},
                       {"max_ratio", max_ratio},
                       {"tolerance", 0.0},
                       {"config_hash", hash}};
      push_row(rows, std::move(row), finite);
    }
  }

  // Scaling homogeneity grid (exact-warp sibling when the config is perturbed).
  {
    const ConeModel scal_model =
        model.warp.kind == WarpKind::exact
            ? model
            : make_cone_model(n, model.cross_section, L,
                              Warp{WarpKind::exact, 0.0, 0.0}, model.outer_bc);
    GridFunction u_scal = make_radial(mesh, [](double r) {
      return std::pow(r, 0.3) * (2.0 + std::sin(2.0 * std::log(r)));
    });
    const long m1 = std::lround(0.55 * double(M - 1));
    const double r1 = L * std::pow(q, double(m1));
    const double r2 = L * std::pow(q, 16.0);
    for (const long mp : {16L, 64L, 128L}) {
      if (mp > long(M - 1) - m1 - 1) continue;
      const double a = std::pow(q, double(mp));
      for (const double delta : {0.0, 1.0, 1.0 - 0.5 * double(n)}) {
        for (const int k : {0, 1}) {
          for (const double p : {1.0, 2.0}) {
            ordered_json row{{"check", "scaling_homogeneity"},
                             {"a", a},
                             {"delta", delta},
                             {"k", k},
                             {"p", p},
                             {"tolerance", 1e-8},
                             {"config_hash", hash}};
            const ScalingReport rep = scaling_homogeneity_check(
                u_scal, scal_model, WeightSpec{k, p, delta}, a, r1, r2);
            row["lhs"] = rep.lhs;
            row["rhs"] = rep.rhs;
            row["rel_err"] = rep.rel_err;
            push_row(rows, std::move(row), rep.rel_err <= 1e-8, u_scal);
          }
        }
      }
    }

    // Dyadic additivity of the p-th powers over a split annulus.
    for (const WeightSpec spec :
         {WeightSpec{0, 2.0, 0.0}, WeightSpec{1, 2.0, 1.0 - 0.5 * double(n)}}) {
      const double r_max = L / 2.0;
      const auto annuli = dyadic_annulus_decompose(r_max, 4);
      const WeightFunction chi = WeightFunction::cone();
      const double union_norm = weighted_norm(
          u_scal, spec, scal_model, Annulus{annuli.back().lo, r_max}, chi);
      double sum_p = 0.0;
      for (const Annulus& ann : annuli)
        sum_p += std::pow(weighted_norm(u_scal, spec, scal_model, ann, chi), spec.p);
      const double union_p = std::pow(union_norm, spec.p);
      const double rel =
          union_p > 0.0 ? std::abs(sum_p - union_p) / union_p : 0.0;
      ordered_json row{{"check", "dyadic_additivity"},
                       {"k", spec.k},
                       {"p", spec.p},
                       {"delta", spec.delta},
                       {"rel_err", rel},
                       {"tolerance", 1e-12},
                       {"config_hash", hash}};
      push_row(rows, std::move(row), rel <= 1e-12, u_scal);
    }
  }

  // Norm axioms: triangle inequality and scalar homogeneity per WeightSpec.
  {
    const std::vector<WeightSpec> specs = {{0, 2.0, 0.0},
                                           {1, 2.0, 1.0 - 0.5 * double(n)},
                                           {2, 2.0, 2.0 - 0.5 * double(n)},
                                           {0, 3.0, -0.5},
                                           {1, 1.5, 0.2}};
    for (const WeightSpec& spec : specs) {
      double worst_triangle = 0.0, worst_hom = 0.0;
      std::optional<GridFunction> worst_fn;
      for (int pair = 0; pair < 20; ++pair) {
        const GridFunction u = has_modes ? random_two_mode(mesh, rng)
                                         : family[pair % family.size()];
        const GridFunction v = has_modes ? random_two_mode(mesh, rng)
                                         : family[(pair + 3) % family.size()];
        const double nu = weighted_norm(u, spec, model);
        const double nv = weighted_norm(v, spec, model);
        const double nuv = weighted_norm(u + v, spec, model);
        const double tri =
            (nuv - (nu + nv)) / std::max(1e-300, nu + nv);
        worst_triangle = std::max(worst_triangle, tri);
        double c = rng.range(-3.0, 3.0);
        if (std::abs(c) < 0.25) c = 0.25;
        const double nc = weighted_norm(u * c, spec, model);
        const double hom =
            std::abs(nc - std::abs(c) * nu) / std::max(1e-300, std::abs(c) * nu);
        if (hom > worst_hom) worst_fn = u;
        worst_hom = std::max(worst_hom, hom);
        if (tri > worst_triangle - 1e-300 && !worst_fn) worst_fn = u;
      }
      ordered_json row{{"check", "norm_axioms"},
                       {"k", spec.k},
                       {"p", spec.p},
                       {"delta", spec.delta},
                       {"max_triangle_excess", worst_triangle},
                       {"max_homogeneity_err", worst_hom},
                       {"tolerance", 1e-12},
                       {"config_hash", hash}};
      push_row(rows, std::move(row),
               worst_triangle <= 1e-12 && worst_hom <= 1e-12, worst_fn);
    }
  }

  // Pointwise sup-norm rows: exact powers under the pure cone weight.
  {
    const GridFunction u1 = make_radial(mesh, [](double r) { return std::pow(r, 0.3); });
    const double v1 = c_k_delta_norm(u1, 0, 0.3);
    ordered_json row1{{"check", "c_k_delta_power"},
                      {"k", 0},
                      {"delta", 0.3},
                      {"value", v1},
                      {"expected", 1.0},
                      {"tolerance", 1e-10},
                      {"config_hash", hash}};
    push_row(rows, std::move(row1), std::abs(v1 - 1.0) <= 1e-10, u1);

    const GridFunction u2 = make_radial(mesh, [](double r) { return std::pow(r, 0.7); });
    const double expect = std::pow(L, 0.4);
    const double v2 = c_k_delta_norm(u2, 0, 0.3);
    ordered_json row2{{"check", "c_k_delta_power"},
                      {"k", 0},
                      {"delta", 0.3},
                      {"value", v2},
                      {"expected", expect},
                      {"tolerance", 1e-10},
                      {"config_hash", hash}};
    push_row(rows, std::move(row2), std::abs(v2 - expect) <= 1e-10 * expect, u2);
  }

  // Uniform decay classification of exact powers.
  {
    const double delta = 0.3;
    const GridFunction above =
        make_radial(mesh, [](double r) { return std::pow(r, 0.4); });
    const GridFunction boundary =
        make_radial(mesh, [](double r) { return std::pow(r, 0.3); });
    const UniformDecayReport ra = weighted_uniform_check(above, 0, delta, &model);
    const UniformDecayReport rb = weighted_uniform_check(boundary, 0, delta, &model);
    ordered_json row{{"check", "weighted_uniform"},
                     {"delta", delta},
                     {"above_vanishing", ra.vanishing},
                     {"boundary_vanishing", rb.vanishing},
                     {"tolerance", 1e-6},
                     {"config_hash", hash}};
    push_row(rows, std::move(row), ra.vanishing && !rb.vanishing);
  }

  // Log-Sobolev monotonicity over a concentrating bump family.
  const ModeOperator op_grad =
      assemble_mode_operator(model, *mesh, 0, FormScaling::gradient);
  std::vector<GridFunction> bump_family;
  {
    const double depth = std::log(L) - log_r1;
    for (int k = 0; k < 8; ++k) {
      GridFunction b =
          log_bump(mesh, std::log(L) - depth * (0.15 + 0.08 * double(k)), 1.0);
      const double mass = quadratic_form(op_grad.mass, b.values[0]);
      b *= 1.0 / std::sqrt(mass);
      bump_family.push_back(std::move(b));
    }
    const double c01 = log_sobolev_check(model, 0.1, bump_family).empirical_c;
    const double c05 = log_sobolev_check(model, 0.5, bump_family).empirical_c;
    const double c10 = log_sobolev_check(model, 1.0, bump_family).empirical_c;
    ordered_json row{{"check", "log_sobolev_monotone"},
                     {"a", {0.1, 0.5, 1.0}},
                     {"empirical_C", {c01, c05, c10}},
                     {"tolerance", 0.0},
                     {"config_hash", hash}};
    const bool mono = std::isfinite(c01) && c01 >= c05 && c05 >= c10;
    push_row(rows, std::move(row), mono);
  }

  // Lower-bound chain over random positive normalized functions.
  {
    const double T = std::pow(4.0 * 3.14159265358979323846 * tau, 0.5 * n);
    std::vector<GridFunction> randoms;
    std::vector<GridFunction> hatted;
    for (int i = 0; i < 20; ++i) {
      GridFunction u = make_zero(mesh, 1);
      for (std::size_t idx = 0; idx < M; ++idx)
        u.values[0][idx] = 0.25 + rng.uniform();
      const double mass = quadratic_form(op_grad.mass, u.values[0]);
      u *= std::sqrt(T / mass);
      GridFunction hat = u * (1.0 / std::sqrt(T));
      randoms.push_back(std::move(u));
      hatted.push_back(std::move(hat));
    }
    const double a = 0.5;
    const double c_half = log_sobolev_check(model, a / 2.0, hatted).empirical_c;
    const double c_a = 2.0 * c_half;
    bool all_hold = true;
    double min_slack = std::numeric_limits<double>::infinity();
    std::size_t worst = 0;
    for (std::size_t i = 0; i < randoms.size(); ++i) {
      const ChainResult res =
          lower_bound_chain_check(model, randoms[i], tau, a, c_a);
      all_hold = all_hold && res.holds;
      const double slack = res.w_value - res.bound;
      if (slack < min_slack) {
        min_slack = slack;
        worst = i;
      }
    }
    ordered_json row{{"check", "lower_bound_chain"},
                     {"tau", tau},
                     {"a", a},
                     {"C_a", c_a},
                     {"count", 20},
                     {"min_slack", min_slack},
                     {"tolerance", 1e-10},
                     {"config_hash", hash}};
    push_row(rows, std::move(row), all_hold, randoms[worst]);
  }

  // Inner-product equivalence and the norm property of (., .)_A.
  {
    const double A = a_for_model(model, *mesh);
    std::vector<GridFunction> fam;
    fam.push_back(family[0]);
    fam.push_back(family[4]);
    fam.push_back(family[5]);
    if (has_modes) fam.push_back(random_two_mode(mesh, rng));
    const InnerProductResult rep =
        inner_product_equivalence_check(model, A, fam);
    ordered_json row{{"check", "inner_product_equivalence"},
                     {"A", A},
                     {"C1_hat", rep.c1_hat},
                     {"C2_hat", rep.c2_hat},
                     {"form_min_eig", rep.form_min_eig},
                     {"tolerance", 0.0},
                     {"config_hash", hash}};
    const bool ok = rep.c1_hat > 0.0 && rep.c2_hat >= rep.c1_hat &&
                    std::isfinite(rep.c2_hat);
    push_row(rows, std::move(row), ok);

    // Triangle inequality of the A-norm on random pairs.
    const ModeOperator op_pe =
        assemble_mode_operator(model, *mesh, 0, FormScaling::perelman);
    auto norm_a = [&](const GridFunction& u) {
      const double s = quadratic_form(op_pe.stiffness, u.values[0]) +
                       A * quadratic_form(op_pe.mass, u.values[0]);
      return std::sqrt(std::max(0.0, s));
    };
    double worst_tri = 0.0;
    for (int i = 0; i < 10; ++i) {
      GridFunction u = make_zero(mesh, 1);
      GridFunction v = make_zero(mesh, 1);
      for (std::size_t idx = 0; idx < M; ++idx) {
        u.values[0][idx] = rng.range(-1.0, 1.0);
        v.values[0][idx] = rng.range(-1.0, 1.0);
      }
      const double nu = norm_a(u), nv = norm_a(v), nuv = norm_a(u + v);
      worst_tri = std::max(worst_tri, (nuv - nu - nv) / std::max(1e-300, nu + nv));
    }
    ordered_json row2{{"check", "inner_product_triangle"},
                      {"A", A},
                      {"max_excess", worst_tri},
                      {"tolerance", 1e-12},
                      {"config_hash", hash}};
    push_row(rows, std::move(row2), worst_tri <= 1e-12);
  }

  // Rayleigh consistency of the lambda solve.
  {
    const SolveReport rep = lambda_functional(model, mesh, 1e-10);
    const double ray =
        f_functional(model, rep.minimizer) / mass_integral(model, rep.minimizer);
    const double err = std::abs(rep.value - ray);
    ordered_json row{{"check", "lambda_rayleigh"},
                     {"lambda", rep.value},
                     {"rayleigh", ray},
                     {"error", err},
                     {"mode", rep.mode},
                     {"tolerance", 1e-10},
                     {"config_hash", hash}};
    push_row(rows, std::move(row),
             err <= 1e-10 * std::max(1.0, std::abs(rep.value)));
  }

  // First-order residual is strictly positive away from stationarity.
  {
    GridFunction u = make_radial(mesh, [](double r) { return 1.0 + r; });
    const double T = std::pow(4.0 * 3.14159265358979323846 * tau, 0.5 * n);
    const double mass = mass_integral(model, u);
    u *= std::sqrt(T / mass);
    const double w = w_functional(model, u, tau);
    const ElResidual res = el_residual(model, u, tau, w);
    ordered_json row{{"check", "el_residual_nonstationary"},
                     {"tau", tau},
                     {"discrete", res.discrete},
                     {"printed_equation", res.printed_equation},
                     {"tolerance", 0.0},
                     {"config_hash", hash}};
    push_row(rows, std::move(row), res.discrete > 0.0, u);
  }

  RunResult out;
  out.report = base_report(config, "inequalities");
  bool all = true;
  ordered_json jrows = ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    all = all && rows[i].passed;
    jrows.push_back(std::move(rows[i].row));
    if (!rows[i].passed && rows[i].witness) {
      const std::string name = "witness_row" + std::to_string(i) + ".csv";
      jrows.back()["witness_file"] = name;
      out.files.emplace_back(name, series_csv(*rows[i].witness));
    }
  }
  out.report["rows"] = std::move(jrows);
  out.report["all_passed"] = all;
  out.all_passed = all;
  return out;
}

// --- report emission --------------------------------------------------------

std::string write_report(const RunResult& result, const std::string& out_dir,
                         const std::string& name) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path json_path = fs::path(out_dir) / (name + ".json");
  {
    std::ofstream o(json_path, std::ios::binary);
    if (!o) throw std::runtime_error("cannot write " + json_path.string());
    o << result.report.dump(2) << "\n";
  }
  for (const auto& [fname, content] : result.files) {
    const fs::path p = fs::path(out_dir) / fname;
    std::ofstream o(p, std::ios::binary);
    if (!o) throw std::runtime_error("cannot write " + p.string());
    o << content;
  }
  return json_path.string();
}

}  // namespace conelab
