#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "steklov/cheeger.hpp"
#include "steklov/cli.hpp"
#include "steklov/dtn.hpp"
#include "steklov/exhaustion.hpp"
#include "steklov/harmonic.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"
#include "steklov/verify.hpp"

namespace py = pybind11;
using namespace steklov;

namespace {

py::object json_to_py(const ordered_json& j) {
  using value_t = nlohmann::detail::value_t;
  switch (j.type()) {
    case value_t::object: {
      py::dict d;
      for (const auto& [key, value] : j.items())
        d[py::str(key)] = json_to_py(value);
      return d;
    }
    case value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(json_to_py(v));
      return l;
    }
    case value_t::string:
      return py::str(j.get<std::string>());
    case value_t::boolean:
      return py::bool_(j.get<bool>());
    case value_t::number_integer:
      return py::int_(j.get<int64_t>());
    case value_t::number_unsigned:
      return py::int_(j.get<uint64_t>());
    case value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

struct PyGraph {
  NamedGraph g;
};

struct PyWindow {
  NamedGraph g;  // keeps names for witness translation
  Window w;
};

std::vector<std::string> names_of(const PyWindow& s,
                                  const std::vector<int>& locals) {
  std::vector<std::string> out;
  out.reserve(locals.size());
  for (int l : locals)
    out.push_back(s.g.names.at(static_cast<size_t>(s.w.id(l))));
  return out;
}

py::dict exhaust_dict(const ExhaustResult& r) {
  py::dict d;
  d["quantity"] = r.quantity;
  py::list rows;
  for (const ConvergenceRow& row : r.rows)
    rows.append(py::make_tuple(row.radius, row.closed_size, row.value,
                               row.gap));
  d["rows"] = rows;
  d["estimate"] = r.estimate;
  d["error_bar"] = r.error_bar;
  d["converged"] = r.converged;
  d["stop_reason"] = r.stop_reason;
  d["heuristic"] = r.heuristic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steklov spectra, Cheeger constants, and recurrence diagnostics "
            "on weighted graphs";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<convergence_error>(m, "ConvergenceError",
                                            PyExc_RuntimeError);

  py::class_<PyGraph>(m, "Graph")
      .def_static(
          "load", [](const std::string& path) {
            return PyGraph{load_graph_json(path)};
          },
          py::arg("path"))
      .def_static(
          "parse",
          [](const std::string& text, const std::string& origin) {
            return PyGraph{parse_graph_json(text, origin)};
          },
          py::arg("text"), py::arg("origin") = "inline")
      .def_property_readonly("names",
                             [](const PyGraph& s) { return s.g.names; })
      .def_property_readonly("interior",
                             [](const PyGraph& s) { return s.g.interior; })
      .def_property_readonly("content_hash",
                             [](const PyGraph& s) { return s.g.content_hash; })
      .def("to_json", [](const PyGraph& s) { return graph_to_json(s.g); })
      .def(
          "window",
          [](const PyGraph& s, const std::string& spec) {
            const Domain dom = domain_from(s.g);
            return PyWindow{s.g,
                            dom.make_window(parse_window_spec(s.g, spec))};
          },
          py::arg("spec") = "all");

  py::class_<PyWindow>(m, "Window")
      .def_property_readonly("size",
                             [](const PyWindow& s) { return s.w.window_size(); })
      .def_property_readonly(
          "boundary_size",
          [](const PyWindow& s) { return s.w.boundary_size(); })
      .def_property_readonly(
          "collar_size", [](const PyWindow& s) { return s.w.collar_size(); })
      .def("sigma", [](const PyWindow& s) { return dtn_spectrum(s.w); })
      .def("dirichlet_spectrum",
           [](const PyWindow& s) { return dirichlet_laplacian_spectrum(s.w); })
      .def(
          "blowup_spectrum",
          [](const PyWindow& s, double r) { return blowup_spectrum(s.w, r); },
          py::arg("r"))
      .def("dtn_matrix",
           [](const PyWindow& s) {
             const DtnForm form = assemble_dtn(s.w);
             const int p = form.b.size();
             py::list rows;
             for (int i = 0; i < p; ++i) {
               py::list row;
               for (int j = 0; j < p; ++j) row.append(form.b.at(i, j));
               rows.append(row);
             }
             py::dict d;
             d["matrix"] = rows;
             d["mass"] = form.mass;
             return d;
           })
      .def(
          "capacity",
          [](const PyWindow& s, const std::vector<double>& f) {
            return capacity(s.w, f);
          },
          py::arg("boundary_values"))
      .def(
          "harmonic_extension",
          [](const PyWindow& s, const std::vector<double>& f) {
            return harmonic_extension(s.w, f).values;
          },
          py::arg("boundary_values"))
      .def(
          "cheeger",
          [](const PyWindow& s, const std::string& method) {
            CutMethod cm = CutMethod::Auto;
            if (method == "enum") cm = CutMethod::Enumeration;
            else if (method == "cut") cm = CutMethod::ParametricCut;
            else if (method != "auto")
              throw input_error("unknown method '" + method + "'");
            const CheegerResult c = cheeger_constants(s.w, cm);
            py::dict d;
            d["jammes"] = c.jammes;
            d["classic"] = c.classic;
            d["witness_jammes"] = names_of(s, c.witness_jammes);
            d["witness_classic"] = names_of(s, c.witness_classic);
            d["method"] = c.method;
            return d;
          },
          py::arg("method") = "auto")
      .def(
          "higher_order",
          [](const PyWindow& s, int k, bool heuristic) {
            const HigherOrderResult h =
                higher_order_constants(s.w, k, heuristic);
            py::dict d;
            d["k"] = h.k;
            d["jammes_k"] = h.jammes_k;
            d["product_k"] = h.product_k;
            py::list wj, wp;
            for (const auto& part : h.witness_jammes)
              wj.append(names_of(s, part));
            for (const auto& part : h.witness_product)
              wp.append(names_of(s, part));
            d["witness_jammes"] = wj;
            d["witness_product"] = wp;
            d["heuristic"] = h.heuristic;
            return d;
          },
          py::arg("k"), py::arg("heuristic") = false)
      .def(
          "coarea",
          [](const PyWindow& s, const std::vector<double>& f) {
            const CoareaReport r = coarea_check(s.w, f);
            py::dict d;
            d["perimeter_integral"] = r.perimeter_integral;
            d["perimeter_sum"] = r.perimeter_sum;
            d["mass_integral"] = r.mass_integral;
            d["mass_sum"] = r.mass_sum;
            d["boundary_mass_integral"] = r.boundary_mass_integral;
            d["boundary_mass_sum"] = r.boundary_mass_sum;
            return d;
          },
          py::arg("values"))
      .def(
          "verify",
          [](const PyWindow& s, int k_max) {
            const InequalityReport rep = verify_inequalities(s.w, k_max);
            py::list checks;
            for (const CheckRecord& c : rep.checks) {
              py::dict e;
              e["name"] = c.name;
              e["lhs"] = c.lhs;
              e["rhs"] = c.rhs;
              e["slack"] = c.slack;
              e["pass"] = c.pass;
              checks.append(e);
            }
            py::dict d;
            d["checks"] = checks;
            d["sigma"] = rep.sigma;
            d["jammes"] = rep.jammes;
            d["classic"] = rep.classic;
            d["c_hat_sigma"] = rep.c_hat_sigma;
            d["c_hat_lambda"] = rep.c_hat_lambda;
            d["all_pass"] = rep.all_pass;
            return d;
          },
          py::arg("k_max") = 3);

  m.def(
      "exhaust",
      [](const std::string& family, const std::string& quantity, int k,
         double tol, int depth, int step, int start, int64_t budget,
         bool heuristic) -> py::object {
        const std::unique_ptr<GraphFamily> fam = make_family(family);
        ExhaustOptions opt;
        opt.first_radius = start;
        opt.radius_step = step;
        opt.max_steps = depth;
        opt.tolerance = tol;
        opt.vertex_budget = budget;
        opt.allow_heuristic = heuristic;
        if (quantity == "sigma") return exhaust_dict(exhaust_spectrum(*fam, k, opt));
        if (quantity == "lambda") return exhaust_dict(exhaust_lambda(*fam, k, opt));
        if (quantity == "capacity") return exhaust_dict(exhaust_capacity(*fam, opt));
        if (quantity == "cheeger") {
          py::dict d;
          d["jammes"] = exhaust_dict(exhaust_cheeger(*fam, true, opt));
          d["classic"] = exhaust_dict(exhaust_cheeger(*fam, false, opt));
          return d;
        }
        if (quantity == "higher") {
          const HigherExhaust h = exhaust_higher_table(*fam, k, opt);
          py::dict d;
          d["k"] = k;
          py::list rows;
          for (const HigherRow& row : h.rows)
            rows.append(py::make_tuple(row.radius, row.closed_size, row.h_k,
                                       row.h_j_k, row.sigma_k));
          d["rows"] = rows;
          d["c_hat"] = h.c_hat;
          d["stop_reason"] = h.stop_reason;
          d["heuristic"] = h.heuristic;
          return d;
        }
        if (quantity == "recurrence") {
          const RecurrenceResult r = recurrence_test(*fam, opt);
          py::dict d;
          py::list rows;
          for (const RecurrenceRow& row : r.rows)
            rows.append(py::make_tuple(row.radius, row.closed_size,
                                       row.capacity));
          d["rows"] = rows;
          d["verdict"] = r.verdict;
          d["stop_reason"] = r.stop_reason;
          d["final_capacity"] = r.final_capacity;
          return d;
        }
        throw input_error("unknown quantity '" + quantity + "'");
      },
      py::arg("family"), py::arg("quantity"), py::arg("k") = 1,
      py::arg("tol") = 1e-6, py::arg("depth") = 64, py::arg("step") = 1,
      py::arg("start") = 1, py::arg("budget") = 2'000'000,
      py::arg("heuristic") = false);

  m.def(
      "verify",
      [](uint64_t seed, int count, int k_max, bool fixtures_only,
         const std::string& dump_dir) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.instances = count;
        opt.k_max = k_max;
        opt.fixtures_only = fixtures_only;
        opt.dump_dir = dump_dir;
        return json_to_py(run_verify(opt).report);
      },
      py::arg("seed") = 1, py::arg("count") = 100, py::arg("k_max") = 3,
      py::arg("fixtures_only") = false, py::arg("dump_dir") = ".");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int rc = run_cli(args, out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"));
}
