#include "steklov/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/errors.hpp"
#include "steklov/exhaustion.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"
#include "steklov/verify.hpp"

namespace steklov {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

int64_t env_vertex_budget() {
  const char* env = std::getenv("STEKLOV_VERTEX_BUDGET");
  if (!env) return 2'000'000;
  try {
    return std::stoll(env);
  } catch (...) {
    throw input_error("STEKLOV_VERTEX_BUDGET is not an integer");
  }
}

std::vector<std::string> local_names(const Window& w, const NamedGraph& g,
                                     const std::vector<int>& locals) {
  std::vector<std::string> out;
  out.reserve(locals.size());
  for (int l : locals) out.push_back(g.names.at(static_cast<size_t>(w.id(l))));
  return out;
}

struct LoadedWindow {
  NamedGraph graph;
  Window window;
};

LoadedWindow load_window(const std::string& graph_path,
                         const std::string& window_spec) {
  NamedGraph g = load_graph_json(graph_path);
  const Domain dom = domain_from(g);
  Window w = dom.make_window(parse_window_spec(g, window_spec));
  return {std::move(g), std::move(w)};
}

ordered_json window_header(const std::string& graph_path,
                           const LoadedWindow& lw,
                           const std::string& window_spec,
                           const std::string& command) {
  ordered_json rep = report_envelope(command);
  rep["graph"] = graph_path;
  rep["graph_hash"] = lw.graph.content_hash;
  rep["window"] = window_spec;
  rep["window_size"] = lw.window.window_size();
  rep["boundary_size"] = lw.window.boundary_size();
  rep["collar_size"] = lw.window.collar_size();
  return rep;
}

struct SpectrumArgs {
  std::string graph, window, schedule;
  double blowup = 0.0;
  bool has_blowup = false;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const LoadedWindow lw = load_window(a.graph, a.window);
  ordered_json rep = window_header(a.graph, lw, a.window, "spectrum");

  const std::vector<double> sigma = dtn_spectrum(lw.window);
  rep["sigma"] = sigma;
  rep["lambdaD"] = dirichlet_laplacian_spectrum(lw.window);

  std::vector<BlowupRow> rows;
  if (!a.schedule.empty()) {
    double r0, r1, factor;
    char c1, c2;
    std::istringstream ss(a.schedule);
    if (!(ss >> r0 >> c1 >> r1 >> c2 >> factor) || c1 != ':' || c2 != ':' ||
        !ss.eof())
      throw input_error("bad --schedule, expected r0:r1:factor");
    rows = blowup_convergence(lw.window, r0, r1, factor);
  } else if (a.has_blowup) {
    rows.push_back({a.blowup, blowup_spectrum(lw.window, a.blowup)});
  }
  rep["blowup"] = ordered_json::array();
  const int p = lw.window.boundary_size();
  for (const BlowupRow& row : rows) {
    ordered_json jr;
    jr["r"] = row.r;
    jr["lambda"] = row.lambda;
    ordered_json gaps = ordered_json::array();   // k <= P: |λ^(r)_k − σ_k|
    ordered_json ratios = ordered_json::array(); // k > P: λ^(r)_k / r
    for (size_t k = 0; k < row.lambda.size(); ++k) {
      if (static_cast<int>(k) < p)
        gaps.push_back(std::fabs(row.lambda[k] - sigma[k]));
      else
        ratios.push_back(row.lambda[k] / row.r);
    }
    jr["gap"] = std::move(gaps);
    jr["ratio"] = std::move(ratios);
    rep["blowup"].push_back(std::move(jr));
  }
  rep["wall_ms"] = elapsed_ms(start);
  out << dump_json(rep) << "\n";
  return 0;
}

struct CheegerArgs {
  std::string graph, window, method = "auto";
  int order = 1;
  bool heuristic = false;
};

int cmd_cheeger(const CheegerArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const LoadedWindow lw = load_window(a.graph, a.window);
  ordered_json rep = window_header(a.graph, lw, a.window, "cheeger");

  CutMethod method = CutMethod::Auto;
  if (a.method == "enum") method = CutMethod::Enumeration;
  else if (a.method == "cut") method = CutMethod::ParametricCut;
  else if (a.method != "auto")
    throw input_error("unknown --method '" + a.method + "'");

  const CheegerResult ch = cheeger_constants(lw.window, method);
  rep["jammes"] = ch.jammes;
  rep["classic"] = ch.classic;
  rep["witness_jammes"] = local_names(lw.window, lw.graph, ch.witness_jammes);
  rep["witness_classic"] =
      local_names(lw.window, lw.graph, ch.witness_classic);
  rep["method"] = ch.method;

  if (a.order >= 2) {
    const HigherOrderResult ho =
        higher_order_constants(lw.window, a.order, a.heuristic);
    ordered_json hj;
    hj["k"] = ho.k;
    hj["jammes_k"] = ho.jammes_k;
    hj["product_k"] = ho.product_k;
    ordered_json wj = ordered_json::array(), wp = ordered_json::array();
    for (const auto& part : ho.witness_jammes)
      wj.push_back(local_names(lw.window, lw.graph, part));
    for (const auto& part : ho.witness_product)
      wp.push_back(local_names(lw.window, lw.graph, part));
    hj["witness_jammes"] = std::move(wj);
    hj["witness_product"] = std::move(wp);
    hj["method"] = ho.heuristic ? "heuristic-upper-bound" : "enumeration";
    rep["higher"] = std::move(hj);
  } else if (a.order < 1) {
    throw input_error("--order must be positive");
  }
  rep["wall_ms"] = elapsed_ms(start);
  out << dump_json(rep) << "\n";
  return 0;
}

struct ExhaustArgs {
  std::string family, quantity;
  int k = 1;
  double tol = 1e-6;
  int depth = 64;
  int step = 1;
  int start = 1;
  int64_t budget = 0;  // resolved against the env var by the caller
  bool heuristic = false;
};

ordered_json exhaust_json(const ExhaustResult& r) {
  ordered_json j;
  j["quantity"] = r.quantity;
  j["rows"] = r.rows.size();
  j["estimate"] = r.estimate;
  j["error_bar"] = r.error_bar;
  j["converged"] = r.converged;
  j["stop_reason"] = r.stop_reason;
  j["heuristic"] = r.heuristic;
  return j;
}

void stack_rows(CsvTable& csv, const ExhaustResult& r) {
  for (const ConvergenceRow& row : r.rows)
    csv.add_row({r.quantity, std::to_string(row.radius),
                 std::to_string(row.closed_size), format_double(row.value),
                 format_double(row.gap)});
}

int cmd_exhaust(const ExhaustArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const std::unique_ptr<GraphFamily> fam = make_family(a.family);
  ExhaustOptions opt;
  opt.first_radius = a.start;
  opt.radius_step = a.step;
  opt.max_steps = a.depth;
  opt.tolerance = a.tol;
  opt.vertex_budget = a.budget;
  opt.allow_heuristic = a.heuristic;

  ordered_json rep = report_envelope("exhaust");
  rep["family"] = fam->name();
  rep["quantity"] = a.quantity;
  rep["tolerance"] = a.tol;
  CsvTable csv;

  if (a.quantity == "sigma" || a.quantity == "lambda") {
    const ExhaustResult r = a.quantity == "sigma"
                                ? exhaust_spectrum(*fam, a.k, opt)
                                : exhaust_lambda(*fam, a.k, opt);
    csv.header = {"quantity", "radius", "closed_size", "value", "gap"};
    stack_rows(csv, r);
    rep["result"] = exhaust_json(r);
  } else if (a.quantity == "cheeger") {
    const ExhaustResult rj = exhaust_cheeger(*fam, true, opt);
    const ExhaustResult rc = exhaust_cheeger(*fam, false, opt);
    csv.header = {"quantity", "radius", "closed_size", "value", "gap"};
    stack_rows(csv, rj);
    stack_rows(csv, rc);
    rep["jammes"] = exhaust_json(rj);
    rep["classic"] = exhaust_json(rc);
  } else if (a.quantity == "higher") {
    const HigherExhaust he = exhaust_higher_table(*fam, a.k, opt);
    csv.header = {"radius", "closed_size", "h_k", "h_j_k", "sigma_k"};
    for (const HigherRow& row : he.rows)
      csv.add_row({std::to_string(row.radius),
                   std::to_string(row.closed_size), format_double(row.h_k),
                   format_double(row.h_j_k), format_double(row.sigma_k)});
    ordered_json j;
    j["k"] = a.k;
    j["rows"] = he.rows.size();
    j["c_hat"] = he.c_hat;
    j["stop_reason"] = he.stop_reason;
    j["heuristic"] = he.heuristic;
    rep["result"] = std::move(j);
  } else if (a.quantity == "capacity") {
    const ExhaustResult r = exhaust_capacity(*fam, opt);
    csv.header = {"quantity", "radius", "closed_size", "value", "gap"};
    stack_rows(csv, r);
    rep["result"] = exhaust_json(r);
  } else if (a.quantity == "recurrence") {
    const RecurrenceResult r = recurrence_test(*fam, opt);
    csv.header = {"radius", "closed_size", "capacity"};
    for (const RecurrenceRow& row : r.rows)
      csv.add_row({std::to_string(row.radius),
                   std::to_string(row.closed_size),
                   format_double(row.capacity)});
    ordered_json j;
    j["verdict"] = r.verdict;
    j["stop_reason"] = r.stop_reason;
    j["final_capacity"] = r.final_capacity;
    j["rows"] = r.rows.size();
    rep["result"] = std::move(j);
  } else {
    throw input_error("unknown --quantity '" + a.quantity +
                      "', expected sigma|cheeger|higher|lambda|capacity|"
                      "recurrence");
  }

  out << csv.str();
  rep["wall_ms"] = elapsed_ms(start);
  out << dump_json(rep) << "\n";
  return 0;
}

struct VerifyArgs {
  uint64_t seed = 1;
  int count = 100;
  int k_max = 3;
  std::string fixtures;  // "only" restricts the run to fixtures
  std::string dump_dir = ".";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  if (!a.fixtures.empty() && a.fixtures != "only")
    throw input_error("--fixtures accepts only the value 'only'");
  VerifyOptions opt;
  opt.instances = a.count;
  opt.seed = a.seed;
  opt.k_max = a.k_max;
  opt.fixtures_only = a.fixtures == "only" || a.count == 0;
  opt.dump_dir = a.dump_dir;
  VerifyOutcome res = run_verify(opt);
  res.report["wall_ms"] = elapsed_ms(start);
  out << dump_json(res.report) << "\n";
  return res.failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Steklov spectra, Cheeger constants, capacities, and "
               "recurrence diagnostics on weighted graphs"};
  app.set_version_flag("--version", "0.1.0");
  app.require_subcommand(1);

  SpectrumArgs sa;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Steklov and Dirichlet spectra of a window");
  spectrum->add_option("--graph", sa.graph, "graph JSON file")->required();
  spectrum->add_option("--window", sa.window, "window spec: all | i..j | a,b")
      ->required();
  CLI::Option* ob =
      spectrum->add_option("--blowup", sa.blowup, "single blow-up factor r");
  spectrum
      ->add_option("--schedule", sa.schedule,
                   "geometric blow-up schedule r0:r1:factor")
      ->excludes(ob);

  CheegerArgs ca;
  CLI::App* cheeger = app.add_subcommand(
      "cheeger", "isoperimetric constants of a window");
  cheeger->add_option("--graph", ca.graph, "graph JSON file")->required();
  cheeger->add_option("--window", ca.window, "window spec")->required();
  cheeger->add_option("--order", ca.order, "also compute k-th order constants");
  cheeger->add_option("--method", ca.method, "enum | cut | auto");
  cheeger->add_flag("--heuristic", ca.heuristic,
                    "allow heuristic upper bounds beyond the exact budget");

  ExhaustArgs ea;
  CLI::App* exhaust = app.add_subcommand(
      "exhaust", "limits along a growing ball exhaustion");
  exhaust->add_option("--family", ea.family, "family spec (JSON or file)")
      ->required();
  exhaust
      ->add_option("--quantity", ea.quantity,
                   "sigma | cheeger | higher | lambda | capacity | recurrence")
      ->required();
  exhaust->add_option("--k", ea.k, "eigenvalue / tuple order");
  exhaust->add_option("--tol", ea.tol, "successive-gap stopping tolerance");
  exhaust->add_option("--depth", ea.depth, "maximum number of radius steps");
  exhaust->add_option("--step", ea.step, "radius increment per step");
  exhaust->add_option("--start", ea.start, "first radius");
  CLI::Option* eb = exhaust->add_option("--budget", ea.budget,
                                        "vertex budget for |W| + |collar|");
  exhaust->add_flag("--heuristic", ea.heuristic,
                    "allow heuristic higher-order bounds");

  ExhaustArgs ra;
  ra.quantity = "recurrence";
  CLI::App* recurrence = app.add_subcommand(
      "recurrence", "capacity-based recurrence test (exhaust alias)");
  recurrence->add_option("--family", ra.family, "family spec (JSON or file)")
      ->required();
  recurrence->add_option("--tol", ra.tol, "capacity tolerance");
  recurrence->add_option("--depth", ra.depth, "maximum number of rows");
  recurrence->add_option("--step", ra.step, "initial radius increment");
  recurrence->add_option("--start", ra.start, "first radius");
  CLI::Option* rb = recurrence->add_option("--budget", ra.budget,
                                           "vertex budget");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the full identity and inequality suite");
  verify->add_option("--seed", va.seed, "random instance seed");
  verify->add_option("--count", va.count, "number of random instances");
  verify->add_option("--k-max", va.k_max, "highest tuple order checked");
  verify->add_option("--fixtures", va.fixtures, "'only' skips random runs");
  verify->add_option("--dump-dir", va.dump_dir,
                     "directory for failing-instance replay files");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      sa.has_blowup = ob->count() > 0;
      return cmd_spectrum(sa, out);
    }
    if (cheeger->parsed()) return cmd_cheeger(ca, out);
    if (exhaust->parsed()) {
      if (eb->count() == 0) ea.budget = env_vertex_budget();
      return cmd_exhaust(ea, out);
    }
    if (recurrence->parsed()) {
      if (rb->count() == 0) ra.budget = env_vertex_budget();
      return cmd_exhaust(ra, out);
    }
    if (verify->parsed()) return cmd_verify(va, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const convergence_error& e) {
    err << "numerical failure: " << e.what()
        << " (residual " << format_double(e.achieved_residual) << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace steklov
