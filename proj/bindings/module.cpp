#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "merb/dense.hpp"
#include "merb/exprb.hpp"
#include "merb/methods.hpp"
#include "merb/problems.hpp"
#include "merb/step.hpp"
#include "merb/sweep.hpp"
#include "merb/tableau.hpp"

namespace py = pybind11;
using namespace merb;

namespace {

DenseMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
            throw std::invalid_argument("matrix must be square");
        }
        for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

std::vector<std::vector<double>> matrix_to_rows(const DenseMatrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.n),
                                          std::vector<double>(static_cast<std::size_t>(m.n)));
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multirate exponential Rosenbrock (MERB) time integrators";

    py::class_<CallCounters>(m, "CallCounters")
        .def_readonly("slow_calls", &CallCounters::slow_calls)
        .def_readonly("fast_calls", &CallCounters::fast_calls)
        .def_readonly("jac_action_calls", &CallCounters::jac_action_calls)
        .def_readonly("fast_solves", &CallCounters::fast_solves)
        .def_property_readonly("total_calls", &CallCounters::total_calls);

    py::class_<MerbMethod>(m, "MerbMethod")
        .def_readonly("name", &MerbMethod::name)
        .def_readonly("order", &MerbMethod::order)
        .def_readonly("nodes", &MerbMethod::c)
        .def_property_readonly("num_fast_ivps", &MerbMethod::num_fast_ivps)
        .def_property_readonly("traversal", &MerbMethod::traversal)
        .def_property_readonly("slow_evals_per_step", &MerbMethod::slow_evals_per_step)
        .def("__repr__", [](const MerbMethod& mm) { return "<MerbMethod " + mm.name + ">"; });

    m.def("merb2", &merb2);
    m.def("merb3", &merb3, py::arg("c2") = 0.5);
    m.def("merb4", &merb4);
    m.def("merb5", &merb5, py::arg("c2") = 0.25, py::arg("c3") = 33.0 / 40.0);
    m.def("merb6", &merb6, py::arg("c2") = 1.0 / 9.0, py::arg("c3") = 0.1, py::arg("c4") = 1.0 / 7.0,
          py::arg("c5") = 0.1, py::arg("c6") = 1.0 / 9.0, py::arg("c7") = 0.125);
    m.def("method_by_name", &method_by_name, py::arg("name"));
    m.def("method_names", &method_names);

    py::class_<IvpProblem>(m, "IvpProblem")
        .def_readonly("name", &IvpProblem::name)
        .def_readonly("dim", &IvpProblem::dim)
        .def_readonly("t0", &IvpProblem::t0)
        .def_readonly("tf", &IvpProblem::tf)
        .def_readonly("u0", &IvpProblem::u0)
        .def("f", [](const IvpProblem& p, double t, const Vec& u) { return p.f(t, u); })
        .def("exact",
             [](const IvpProblem& p, double t) {
                 if (!p.has_exact()) throw std::invalid_argument("problem has no exact solution");
                 return p.exact(t);
             })
        .def_property_readonly("has_exact", &IvpProblem::has_exact);

    py::class_<ReactionDiffusionConfig>(m, "ReactionDiffusionConfig")
        .def(py::init<>())
        .def_readwrite("gamma", &ReactionDiffusionConfig::gamma)
        .def_readwrite("epsilon", &ReactionDiffusionConfig::epsilon)
        .def_readwrite("grid_points", &ReactionDiffusionConfig::grid_points);

    py::class_<BidirectionalConfig>(m, "BidirectionalConfig")
        .def(py::init<>())
        .def_readwrite("a", &BidirectionalConfig::a)
        .def_readwrite("b", &BidirectionalConfig::b)
        .def_readwrite("beta", &BidirectionalConfig::beta)
        .def_readwrite("lam", &BidirectionalConfig::lambda)
        .def_readwrite("sigma", &BidirectionalConfig::sigma);

    m.def("reaction_diffusion", [](const ReactionDiffusionConfig& c) { return reaction_diffusion(c); },
          py::arg("config") = ReactionDiffusionConfig{});
    m.def("bidirectional", [](const BidirectionalConfig& c) { return bidirectional(c); },
          py::arg("config") = BidirectionalConfig{});
    m.def("linear_problem",
          [](const std::vector<std::vector<double>>& a, const Vec& u0, double t0, double tf) {
              return linear_problem(matrix_from_rows(a), u0, t0, tf);
          },
          py::arg("a"), py::arg("u0"), py::arg("t0") = 0.0, py::arg("tf") = 1.0);
    m.def("evenly_spaced_outputs", &evenly_spaced_outputs, py::arg("problem"), py::arg("n"));

    py::class_<StepOptions>(m, "StepOptions")
        .def(py::init<>())
        .def_readwrite("stage_tableau_order", &StepOptions::stage_tableau_order)
        .def_readwrite("final_tableau_order", &StepOptions::final_tableau_order)
        .def_readwrite("inner_order_drop", &StepOptions::inner_order_drop)
        .def_readwrite("exact_fast_solves", &StepOptions::exact_fast_solves)
        .def_property(
            "force_fd", [](const StepOptions& o) { return o.lin.force_fd; },
            [](StepOptions& o, bool v) { o.lin.force_fd = v; })
        .def_property(
            "use_direct_forms", [](const StepOptions& o) { return o.lin.use_direct_forms; },
            [](StepOptions& o, bool v) { o.lin.use_direct_forms = v; });

    m.def("merb_step",
          [](const MerbMethod& method, const IvpProblem& problem, double t_n, const Vec& u_n,
             double H, int mm, const StepOptions& opts) {
              CallCounters counters;
              Vec u = merb_step(method, problem, t_n, u_n, H, mm, opts, &counters);
              return py::make_tuple(u, counters);
          },
          py::arg("method"), py::arg("problem"), py::arg("t_n"), py::arg("u_n"), py::arg("H"),
          py::arg("m"), py::arg("options") = StepOptions{});

    py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
        .def_readonly("t", &TrajectoryPoint::t)
        .def_readonly("u", &TrajectoryPoint::u);

    py::class_<IntegrationResult>(m, "IntegrationResult")
        .def_readonly("trajectory", &IntegrationResult::trajectory)
        .def_readonly("counters", &IntegrationResult::counters)
        .def_readonly("steps", &IntegrationResult::steps)
        .def_readonly("ok", &IntegrationResult::ok)
        .def_readonly("error", &IntegrationResult::error);

    m.def("integrate",
          [](const MerbMethod& method, const IvpProblem& problem, double H, int mm,
             const std::vector<double>& output_times, const StepOptions& opts) {
              return integrate(method, problem, H, mm, output_times, opts);
          },
          py::arg("method"), py::arg("problem"), py::arg("H"), py::arg("m"),
          py::arg("output_times"), py::arg("options") = StepOptions{});

    m.def("exprb_step",
          [](const MerbMethod& method, const IvpProblem& problem, double t_n, const Vec& u_n,
             double H) {
              const ExprbResult r = exprb_step(method, problem, t_n, u_n, H);
              return py::make_tuple(r.u_next, r.stages);
          },
          py::arg("method"), py::arg("problem"), py::arg("t_n"), py::arg("u_n"), py::arg("H"));

    m.def("phi_stack",
          [](const std::vector<std::vector<double>>& z, int K) {
              const PhiStack stack = phi_stack(matrix_from_rows(z), K);
              std::vector<std::vector<std::vector<double>>> out;
              for (const auto& mat : stack.values) out.push_back(matrix_to_rows(mat));
              return out;
          },
          py::arg("z"), py::arg("K"));

    m.def("check_order_conditions",
          [](const MerbMethod& method, const std::vector<std::vector<double>>& z,
             const std::vector<std::vector<double>>& k, const std::vector<std::vector<double>>& mm) {
              return check_order_conditions(method, matrix_from_rows(z), matrix_from_rows(k),
                                            matrix_from_rows(mm));
          },
          py::arg("method"), py::arg("Z"), py::arg("K"), py::arg("M"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("H", &SweepRow::H)
        .def_readonly("m", &SweepRow::m)
        .def_readonly("max_error", &SweepRow::max_error)
        .def_readonly("slow_calls", &SweepRow::slow_calls)
        .def_readonly("total_calls", &SweepRow::total_calls)
        .def_readonly("wall_time_s", &SweepRow::wall_time_s);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("rows", &ConvergenceReport::rows)
        .def_readonly("fitted_rate", &ConvergenceReport::fitted_rate)
        .def_readonly("fitted_points", &ConvergenceReport::fitted_points);

    m.def("run_sweep",
          [](const std::string& problem_id, const std::string& method_id,
             const std::vector<double>& H_list, int mm, int output_count, const StepOptions& opts,
             int threads) {
              SweepSpec spec;
              spec.problem_id = problem_id;
              spec.method_id = method_id;
              spec.H_list = H_list;
              spec.m = mm;
              spec.output_count = output_count;
              spec.step = opts;
              return run_sweep(spec, threads);
          },
          py::arg("problem"), py::arg("method"), py::arg("H_list") = std::vector<double>{},
          py::arg("m") = 0, py::arg("output_count") = 0, py::arg("options") = StepOptions{},
          py::arg("threads") = 1);

    m.def("optimal_m_search", &optimal_m_search, py::arg("problem"), py::arg("method"),
          py::arg("H"), py::arg("m_candidates"), py::arg("output_count") = 0,
          py::arg("options") = StepOptions{});

    m.def("fit_rate", &fit_rate, py::arg("H"), py::arg("errors"));

    m.attr("__version__") = "0.1.0";
}
