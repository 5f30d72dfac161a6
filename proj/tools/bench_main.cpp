// Convergence / efficiency benchmark driver.
//
//   bench --problem bidirectional --method merb5 --H default --m 10 --out results/
//
// Writes <out>/<problem>-<method>.csv, <out>/summary.json and, with --plot,
// <out>/<problem>-<method>.svg.  BENCH_THREADS caps concurrent rows.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "merb/sweep.hpp"

namespace {

std::vector<double> parse_h_list(const std::string& text, const std::string& problem) {
    if (text.empty() || text == "default") return merb::default_H_list(problem);
    std::vector<double> hs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) hs.push_back(std::stod(item));
    }
    if (hs.empty()) throw CLI::ValidationError("--H", "expected 'default' or a comma-separated list");
    return hs;
}

int env_threads() {
    const char* raw = std::getenv("BENCH_THREADS");
    if (raw == nullptr) return 1;
    const int n = std::atoi(raw);
    return n >= 1 ? n : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MERB multirate integrator benchmarks"};

    std::string problem = "bidirectional";
    std::string method = "merb3";
    std::string h_text = "default";
    std::string m_text;
    std::string out_dir = ".";
    bool plot = false;
    bool inner_order_drop = false;
    bool fd_jacobian = false;

    app.add_option("--problem", problem, "Test problem")
        ->check(CLI::IsMember({"reaction-diffusion", "bidirectional"}));
    app.add_option("--method", method, "Integrator")
        ->check(CLI::IsMember(merb::method_names()));
    app.add_option("--H", h_text, "'default' or comma-separated slow steps (decreasing)");
    app.add_option("--m", m_text, "Time-scale separation factor, or 'search'");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--plot", plot, "Also emit a log-log SVG plot");
    app.add_flag("--inner-order-drop", inner_order_drop, "Stage micro-solves at order p-1");
    app.add_flag("--fd-jacobian", fd_jacobian, "Finite-difference the Jacobian action and V");

    CLI11_PARSE(app, argc, argv);

    try {
        merb::SweepSpec spec;
        spec.problem_id = problem;
        spec.method_id = method;
        spec.H_list = parse_h_list(h_text, problem);
        if (m_text == "search") {
            spec.m_search = true;
        } else if (!m_text.empty()) {
            spec.m = std::stoi(m_text);
            if (spec.m < 1) throw CLI::ValidationError("--m", "must be a positive integer or 'search'");
        }
        spec.step.inner_order_drop = inner_order_drop;
        spec.step.lin.force_fd = fd_jacobian;

        const merb::ConvergenceReport report = merb::run_sweep(spec, env_threads());
        const int m_used = report.rows.empty() ? spec.m : report.rows.front().m;

        std::filesystem::create_directories(out_dir);
        const std::string stem = out_dir + "/" + problem + "-" + method;
        merb::write_csv(report, stem + ".csv");
        merb::write_summary_json(spec, merb::method_by_name(method), m_used, report,
                                 out_dir + std::string("/summary.json"));
        if (plot) merb::write_svg_plot(report, problem + " / " + method, stem + ".svg");

        std::printf("# %s / %s, m = %d\n", problem.c_str(), method.c_str(), m_used);
        std::printf("%-14s %-14s %-12s %-12s %-10s\n", "H", "max_error", "slow_calls", "total_calls",
                    "wall_s");
        for (const auto& row : report.rows) {
            std::printf("%-14.6g %-14.6g %-12lld %-12lld %-10.4f\n", row.H, row.max_error,
                        static_cast<long long>(row.slow_calls),
                        static_cast<long long>(row.total_calls), row.wall_time_s);
        }
        std::printf("fitted rate: %.3f (over %d points)\n", report.fitted_rate, report.fitted_points);
        std::printf("wrote %s.csv\n", stem.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bench: %s\n", e.what());
        return 1;
    }
    return 0;
}
