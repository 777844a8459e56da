#include "steklov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "steklov/dtn.hpp"
#include "steklov/harmonic.hpp"
#include "steklov/random_instances.hpp"

namespace steklov {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exact ratio of a witness subset, for closed-loop re-evaluation.
double witness_ratio(const Window& w, const std::vector<int>& subset,
                     bool jammes) {
  std::vector<char> in(w.window_size(), 0);
  for (int v : subset) in[v] = 1;
  const double den = jammes ? subset_boundary_measure(w, in)
                            : subset_measure(w, in);
  if (den == 0.0) return kInf;
  return relative_edge_boundary(w, in) / den;
}

}  // namespace

std::vector<CheckRecord> structural_checks(const Window& w, uint64_t salt) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(salt);
  auto rec = [&out](std::string name, double gap, double tol) {
    out.push_back({std::move(name), gap, tol, tol - gap, gap <= tol});
  };

  const int p = w.boundary_size();
  const int nw = w.window_size();
  const int total = w.total_size();

  // Operator assembly: Schur complement against per-column extensions.
  const DtnForm form = assemble_dtn(w);
  const SymMatrix cols = dtn_matrix_via_extensions(w);
  double gap = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j)
      gap = std::max(gap, std::fabs(form.b.at(i, j) - cols.at(i, j)));
  rec("dtn_schur_vs_columns", gap, 1e-10);

  // Random boundary data: harmonicity, pairing = energy, minimality.
  std::vector<double> f(p);
  for (double& v : f) v = unit_draw(rng);
  const Extension u = harmonic_extension(w, f);
  gap = 0.0;
  for (int v : w.interior())
    gap = std::max(gap, std::fabs(laplacian_at(w, u.values, v)));
  rec("harmonic_interior", gap, 1e-10);

  const double energy = dirichlet_energy(w, u.values);
  const std::vector<double> mass = w.boundary_measures();
  const BoundaryData lf = apply_dtn(w, f);
  double pairing = 0.0;
  double form_value = 0.0;
  for (int i = 0; i < p; ++i) {
    pairing += mass[i] * lf.values[i] * f[i];
    for (int j = 0; j < p; ++j)
      form_value += form.b.at(i, j) * f[i] * f[j];
  }
  const double scale = std::max(1.0, std::fabs(energy));
  rec("pairing_eq_energy", std::fabs(pairing - energy) / scale, 1e-10);
  rec("dtn_form_eq_energy", std::fabs(form_value - energy) / scale, 1e-10);

  gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> phi(total, 0.0);
    for (int v = 0; v < nw; ++v) phi[v] = unit_draw(rng);
    for (int i = 0; i < p; ++i) phi[w.boundary()[i]] = f[i];
    gap = std::max(gap, energy - dirichlet_energy(w, phi));
  }
  rec("dirichlet_minimality", std::max(0.0, gap), 1e-10);

  // Green identity on arbitrary data.
  std::vector<double> gu(total), gg(total);
  for (double& v : gu) v = unit_draw(rng);
  for (double& v : gg) v = unit_draw(rng);
  rec("green_identity", green_residual(w, gu, gg), 1e-10);

  // Spectra: ranges, domain comparison, blow-up monotonicity.
  const std::vector<double> sigma = dtn_spectrum(w);
  const std::vector<double> lambda = dirichlet_laplacian_spectrum(w);
  rec("sigma_range",
      std::max(-sigma.front(), sigma.back() - 1.0), 1e-12);
  rec("lambda_range",
      std::max(-lambda.front(), lambda.back() - 2.0), 1e-12);
  gap = 0.0;
  for (int k = 0; k < p; ++k) gap = std::max(gap, lambda[k] - sigma[k]);
  rec("sigma_ge_lambda", gap, 1e-10);

  const std::vector<double> lam10 = blowup_spectrum(w, 10.0);
  const std::vector<double> lam100 = blowup_spectrum(w, 100.0);
  gap = 0.0;
  for (int k = 0; k < nw; ++k) gap = std::max(gap, lam10[k] - lam100[k]);
  rec("blowup_monotone_in_r", gap, 1e-12);
  gap = 0.0;
  for (int k = 0; k < p; ++k) gap = std::max(gap, lam100[k] - sigma[k]);
  rec("blowup_below_sigma", gap, 1e-10);

  // Coarea and level-set identities for a random nonnegative function.
  std::vector<double> h(total, 0.0);
  for (int v = 0; v < nw; ++v) h[v] = unit_draw(rng);
  const CoareaReport co = coarea_check(w, h);
  const double cs = std::max(1.0, std::fabs(co.perimeter_sum));
  rec("coarea_perimeter",
      std::fabs(co.perimeter_integral - co.perimeter_sum) / cs, 1e-12);
  rec("coarea_mass",
      std::fabs(co.mass_integral - co.mass_sum) /
          std::max(1.0, std::fabs(co.mass_sum)),
      1e-12);
  rec("coarea_boundary_mass",
      std::fabs(co.boundary_mass_integral - co.boundary_mass_sum) /
          std::max(1.0, std::fabs(co.boundary_mass_sum)),
      1e-12);

  // Both cut solvers agree exactly; witnesses reproduce reported values.
  std::vector<int> universe(nw);
  for (int v = 0; v < nw; ++v) universe[v] = v;
  for (const bool jammes : {false, true}) {
    const RatioResult en = min_ratio_enumeration(w, universe, jammes);
    const RatioResult cut = min_ratio_parametric_cut(w, universe, jammes);
    const std::string tag = jammes ? "jammes" : "classic";
    if (en.value == kInf || cut.value == kInf) {
      rec("enum_eq_cut_" + tag, en.value == cut.value ? 0.0 : kInf, 1e-12);
      continue;
    }
    rec("enum_eq_cut_" + tag, std::fabs(en.value - cut.value), 1e-12);
    rec("witness_roundtrip_" + tag,
        std::fabs(witness_ratio(w, cut.witness, jammes) - cut.value), 1e-12);
  }

  // Dirichlet eigenvalue shrinks when the support grows.
  std::vector<int> big;
  while (big.empty())
    for (int v = 0; v < nw; ++v)
      if (unit_draw(rng) < 0.7) big.push_back(v);
  std::vector<int> small;
  while (small.empty()) {
    small.clear();
    for (int v : big)
      if (unit_draw(rng) < 0.6) small.push_back(v);
  }
  rec("dirichlet_domain_monotone",
      first_dirichlet_eigenvalue(w, big) -
          first_dirichlet_eigenvalue(w, small),
      1e-12);

  return out;
}

std::vector<Fixture> built_in_fixtures() {
  std::vector<Fixture> out;
  {
    Fixture fx;
    fx.name = "halfline5";
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, i + 1, 1.0);
    fx.graph.graph = WeightedGraph(6, edges);
    for (int i = 0; i <= 5; ++i) fx.graph.names.push_back(std::to_string(i));
    fx.graph.interior = {1, 2, 3, 4, 5};
    fx.graph.source = "fixture:halfline5";
    fx.window = {0, 1, 2, 3, 4};
    out.push_back(std::move(fx));
  }
  {
    Fixture fx;
    fx.name = "star";
    fx.graph.graph = WeightedGraph(
        4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    fx.graph.names = {"c", "b1", "b2", "o"};
    fx.graph.interior = {0};
    fx.graph.source = "fixture:star";
    fx.window = {0, 1, 2};
    out.push_back(std::move(fx));
  }
  {
    Fixture fx;
    fx.name = "loop_triangle";
    fx.graph.graph = WeightedGraph(
        3, {{0, 1, 2.0}, {0, 2, 1.0}, {1, 2, 3.0}, {0, 0, 4.0}});
    fx.graph.names = {"a", "b", "c"};
    fx.graph.interior = {0};
    fx.graph.source = "fixture:loop_triangle";
    fx.window = {0, 1, 2};
    out.push_back(std::move(fx));
  }
  for (Fixture& fx : out)
    fx.graph.content_hash = hash_hex(graph_to_json(fx.graph));
  return out;
}

namespace {

// Pinned constants for the built-in fixtures.
std::vector<CheckRecord> fixture_value_checks(const std::string& name,
                                              const Window& w) {
  std::vector<CheckRecord> out;
  auto close = [&out](std::string check, double got, double want,
                      double tol) {
    out.push_back(
        {std::move(check), got, want, tol - std::fabs(got - want),
         std::fabs(got - want) <= tol});
  };
  const std::vector<double> sigma = dtn_spectrum(w);
  const CheegerResult ch = cheeger_constants(w);
  const std::vector<double> ones(w.boundary_size(), 1.0);
  const double cap = capacity(w, ones);

  if (name == "halfline5") {
    close("sigma1", sigma.at(0), 0.2, 1e-12);
    close("jammes", ch.jammes, 1.0, 0.0);
    close("classic", ch.classic, 1.0 / 9.0, 1e-15);
    close("capacity_ones", cap, 0.2, 1e-12);
  } else if (name == "star") {
    close("sigma1", sigma.at(0), 1.0 / 3.0, 1e-12);
    close("sigma2", sigma.at(1), 1.0, 1e-12);
    close("jammes", ch.jammes, 0.5, 0.0);
    close("classic", ch.classic, 0.2, 0.0);
    const HigherOrderResult ho = higher_order_constants(w, 2);
    close("jammes2", ho.jammes_k, 1.0, 0.0);
    close("product2", ho.product_k, 1.0, 0.0);
  } else if (name == "loop_triangle") {
    close("sigma1", sigma.at(0), 0.0, 1e-12);
    close("sigma2", sigma.at(1), 1.0, 1e-12);
    close("jammes", ch.jammes, 0.0, 0.0);
    close("classic", ch.classic, 0.0, 0.0);
    close("capacity_ones", cap, 0.0, 1e-12);
  }
  return out;
}

ordered_json check_json(const CheckRecord& c) {
  ordered_json j;
  j["name"] = c.name;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["pass"] = c.pass;
  return j;
}

struct Tally {
  std::vector<std::string> order;
  std::map<std::string, int> runs, failures;
  std::map<std::string, double> min_slack;

  void add(const CheckRecord& c) {
    if (!runs.count(c.name)) {
      order.push_back(c.name);
      min_slack[c.name] = c.slack;
    }
    ++runs[c.name];
    if (!c.pass) ++failures[c.name];
    min_slack[c.name] = std::min(min_slack[c.name], c.slack);
  }
};

void fold_min(double& acc, const std::vector<double>& values) {
  for (double v : values)
    if (v < kInf) acc = std::min(acc, v);
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& opt) {
  VerifyOutcome outcome;
  ordered_json rep = report_envelope("verify");
  rep["seed"] = opt.seed;
  rep["requested_instances"] = opt.fixtures_only ? 0 : opt.instances;
  rep["k_max"] = opt.k_max;

  double c_hat_sigma = kInf, c_hat_lambda = kInf;
  auto absorb = [&outcome](const std::vector<CheckRecord>& checks,
                           ordered_json& into) {
    for (const CheckRecord& c : checks) {
      into.push_back(check_json(c));
      ++outcome.checks;
      if (!c.pass) ++outcome.failures;
    }
  };

  rep["fixtures"] = ordered_json::array();
  for (const Fixture& fx : built_in_fixtures()) {
    const Domain dom = domain_from(fx.graph);
    const Window w = dom.make_window(fx.window);
    ordered_json entry;
    entry["name"] = fx.name;
    entry["graph_hash"] = fx.graph.content_hash;
    entry["window_size"] = w.window_size();
    entry["checks"] = ordered_json::array();
    absorb(fixture_value_checks(fx.name, w), entry["checks"]);
    absorb(structural_checks(w, opt.seed ^ fnv1a64(fx.name)),
           entry["checks"]);
    const InequalityReport ineq = verify_inequalities(w, opt.k_max);
    absorb(ineq.checks, entry["checks"]);
    entry["sigma"] = ineq.sigma;
    entry["jammes"] = ineq.jammes;
    entry["classic"] = ineq.classic;
    fold_min(c_hat_sigma, ineq.c_hat_sigma);
    fold_min(c_hat_lambda, ineq.c_hat_lambda);
    rep["fixtures"].push_back(std::move(entry));
  }

  ordered_json random_section;
  random_section["count"] = 0;
  random_section["assertions"] = ordered_json::array();
  random_section["failed_instances"] = ordered_json::array();
  if (!opt.fixtures_only && opt.instances > 0) {
    Tally tally;
    std::mt19937_64 master(opt.seed);
    for (int i = 0; i < opt.instances; ++i) {
      const uint64_t inst_seed = master();
      const RandomInstance inst = random_instance(inst_seed);
      const Domain dom = domain_from(inst.graph);
      const Window w = dom.make_window(inst.window);

      std::vector<CheckRecord> checks =
          structural_checks(w, inst_seed ^ 0x9e3779b97f4a7c15ull);
      const InequalityReport ineq = verify_inequalities(w, opt.k_max);
      checks.insert(checks.end(), ineq.checks.begin(), ineq.checks.end());
      fold_min(c_hat_sigma, ineq.c_hat_sigma);
      fold_min(c_hat_lambda, ineq.c_hat_lambda);

      std::vector<std::string> failed;
      for (const CheckRecord& c : checks) {
        tally.add(c);
        ++outcome.checks;
        if (!c.pass) {
          ++outcome.failures;
          failed.push_back(c.name);
        }
      }
      if (!failed.empty()) {
        const std::string path = opt.dump_dir + "/steklov-failed-" +
                                 std::to_string(inst_seed) + ".json";
        std::ofstream(path) << graph_to_json(inst.graph);
        ordered_json bad;
        bad["seed"] = inst_seed;
        bad["dump"] = path;
        bad["failed_checks"] = failed;
        random_section["failed_instances"].push_back(std::move(bad));
      }
    }
    random_section["count"] = opt.instances;
    for (const std::string& name : tally.order) {
      ordered_json row;
      row["name"] = name;
      row["runs"] = tally.runs[name];
      row["failures"] = tally.failures.count(name) ? tally.failures[name] : 0;
      row["min_slack"] = tally.min_slack[name];
      random_section["assertions"].push_back(std::move(row));
    }
  }
  rep["random"] = std::move(random_section);
  rep["c_hat_sigma"] = c_hat_sigma;
  rep["c_hat_lambda"] = c_hat_lambda;
  rep["checks"] = outcome.checks;
  rep["failures"] = outcome.failures;
  rep["all_pass"] = outcome.failures == 0;
  outcome.report = std::move(rep);
  return outcome;
}

}  // namespace steklov
