#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "merb/methods.hpp"
#include "merb/problems.hpp"
#include "merb/step.hpp"

namespace merb {

struct SweepRow {
    double H = 0.0;
    int m = 0;
    double max_error = 0.0;  // infinity for a diverged run
    std::int64_t slow_calls = 0;
    std::int64_t total_calls = 0;
    double wall_time_s = 0.0;
};

struct ConvergenceReport {
    std::vector<SweepRow> rows;  // sorted by decreasing H
    double fitted_rate = 0.0;
    int fitted_points = 0;  // rows kept after dropping the error floor
};

struct SweepSpec {
    std::string problem_id;  // "reaction-diffusion" or "bidirectional"
    std::string method_id;   // "merb2" .. "merb6"
    std::vector<double> H_list;  // strictly decreasing; empty -> problem default
    int m = 0;                   // <= 0 with m_search false -> table default
    bool m_search = false;
    int output_count = 0;  // 0 -> problem default (10 or 20)
    StepOptions step;
};

IvpProblem problem_by_id(const std::string& id);
std::vector<double> default_H_list(const std::string& problem_id);
int default_output_count(const std::string& problem_id);

/// Default time-scale separation factor per problem/method (dynamic
/// linearization).
int default_m(const std::string& problem_id, const std::string& method_id);

/// Least-squares slope of log(error) vs log(H).
double fit_rate(const std::vector<double>& H, const std::vector<double>& err);

/// Drops trailing rows sitting on the error floor (error not improving by at
/// least 20% per halving of H), then fits the rate on what remains.
void fit_report_rate(ConvergenceReport& report);

/// Integrates at every H in the spec, measuring max-norm error against the
/// exact or certified reference solution.  `threads` caps concurrent rows.
ConvergenceReport run_sweep(const SweepSpec& spec, int threads = 1);

/// Smallest candidate m whose error is within 5% of the error at the largest
/// candidate.  Candidates must be increasing.
int optimal_m_search(const std::string& problem_id, const std::string& method_id, double H,
                     const std::vector<int>& m_candidates, int output_count = 0,
                     const StepOptions& opts = {});

/// CSV with header "H,m,max_error,slow_calls,total_calls,wall_time_s"; bit
/// identical across runs except the wall_time_s column.  Throws on an empty
/// report (no file is written).
void write_csv(const ConvergenceReport& report, const std::string& path);
ConvergenceReport read_csv(const std::string& path);

/// Method metadata (nodes, traversal, modified-IVP count) plus the fitted
/// rate and rows.
void write_summary_json(const SweepSpec& spec, const MerbMethod& method, int m_used,
                        const ConvergenceReport& report, const std::string& path);

/// Static log-log error-vs-H plot.
void write_svg_plot(const ConvergenceReport& report, const std::string& title,
                    const std::string& path);

}  // namespace merb
