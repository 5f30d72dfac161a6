#include "merb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace merb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

IvpProblem problem_by_id(const std::string& id) {
    if (id == "reaction-diffusion") return reaction_diffusion();
    if (id == "bidirectional") return bidirectional();
    throw std::invalid_argument("unknown problem '" + id + "'");
}

std::vector<double> default_H_list(const std::string& problem_id) {
    std::vector<double> hs;
    if (problem_id == "reaction-diffusion") {
        for (int k = 0; k <= 6; ++k) hs.push_back(0.5 * std::ldexp(1.0, -k));
    } else if (problem_id == "bidirectional") {
        for (int k = 0; k <= 7; ++k) hs.push_back(0.05 * std::ldexp(1.0, -k));
    } else {
        throw std::invalid_argument("unknown problem '" + problem_id + "'");
    }
    return hs;
}

int default_output_count(const std::string& problem_id) {
    if (problem_id == "reaction-diffusion") return 10;
    if (problem_id == "bidirectional") return 20;
    throw std::invalid_argument("unknown problem '" + problem_id + "'");
}

int default_m(const std::string& problem_id, const std::string& method_id) {
    const bool rd = problem_id == "reaction-diffusion";
    if (method_id == "merb2") return 10;
    if (method_id == "merb3") return rd ? 10 : 80;
    if (method_id == "merb4") return rd ? 10 : 40;
    if (method_id == "merb5") return rd ? 5 : 10;
    if (method_id == "merb6") return 5;
    throw std::invalid_argument("unknown method '" + method_id + "'");
}

double fit_rate(const std::vector<double>& H, const std::vector<double>& err) {
    if (H.size() != err.size() || H.size() < 2) {
        throw std::invalid_argument("fit_rate: need at least two (H, error) pairs");
    }
    const std::size_t n = H.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(H[i]);
        y[i] = std::log(err[i]);
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

void fit_report_rate(ConvergenceReport& report) {
    std::vector<double> hs, errs;
    for (const auto& row : report.rows) {
        if (std::isfinite(row.max_error) && row.max_error > 0.0) {
            hs.push_back(row.H);
            errs.push_back(row.max_error);
        }
    }
    // Trailing rows that stopped improving by >= 20% per halving sit at the
    // error floor and are excluded.
    while (errs.size() >= 2 && !(errs.back() <= 0.8 * errs[errs.size() - 2])) {
        errs.pop_back();
        hs.pop_back();
    }
    report.fitted_points = static_cast<int>(errs.size());
    report.fitted_rate = errs.size() >= 2 ? fit_rate(hs, errs) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

double sweep_error(const IntegrationResult& run, const std::vector<Vec>& reference) {
    if (!run.ok || run.trajectory.size() != reference.size() + 1) return kInf;
    double err = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        err = std::max(err, max_abs_diff(run.trajectory[i + 1].u, reference[i]));
    }
    return err;
}

}  // namespace

ConvergenceReport run_sweep(const SweepSpec& spec, int threads) {
    const IvpProblem problem = problem_by_id(spec.problem_id);
    const MerbMethod method = method_by_name(spec.method_id);
    std::vector<double> hs = spec.H_list.empty() ? default_H_list(spec.problem_id) : spec.H_list;
    for (std::size_t i = 1; i < hs.size(); ++i) {
        if (!(hs[i] < hs[i - 1])) throw std::invalid_argument("run_sweep: H list must be strictly decreasing");
    }
    const int outputs = spec.output_count > 0 ? spec.output_count : default_output_count(spec.problem_id);
    const std::vector<double> times = evenly_spaced_outputs(problem, outputs);

    int m = spec.m;
    if (spec.m_search) {
        const double h_mid = hs[hs.size() / 2];
        m = optimal_m_search(spec.problem_id, spec.method_id, h_mid, {1, 2, 5, 10, 20, 40}, outputs,
                             spec.step);
    } else if (m <= 0) {
        m = default_m(spec.problem_id, spec.method_id);
    }

    const ReferenceResult reference = reference_solution(problem, times);

    ConvergenceReport report;
    report.rows.assign(hs.size(), SweepRow{});
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= hs.size()) return;
            SweepRow row;
            row.H = hs[i];
            row.m = m;
            const auto start = std::chrono::steady_clock::now();
            const IntegrationResult run = integrate(method, problem, hs[i], m, times, spec.step);
            row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.max_error = sweep_error(run, reference.states);
            row.slow_calls = run.counters.slow_calls;
            row.total_calls = run.counters.total_calls();
            report.rows[i] = row;
        }
    };

    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(hs.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    fit_report_rate(report);
    return report;
}

int optimal_m_search(const std::string& problem_id, const std::string& method_id, double H,
                     const std::vector<int>& m_candidates, int output_count,
                     const StepOptions& opts) {
    if (m_candidates.empty()) throw std::invalid_argument("optimal_m_search: no candidates");
    for (std::size_t i = 1; i < m_candidates.size(); ++i) {
        if (m_candidates[i] <= m_candidates[i - 1]) {
            throw std::invalid_argument("optimal_m_search: candidates must be increasing");
        }
    }
    const IvpProblem problem = problem_by_id(problem_id);
    const MerbMethod method = method_by_name(method_id);
    const int outputs = output_count > 0 ? output_count : default_output_count(problem_id);
    const std::vector<double> times = evenly_spaced_outputs(problem, outputs);
    const ReferenceResult reference = reference_solution(problem, times);

    std::vector<double> errors;
    errors.reserve(m_candidates.size());
    for (int m : m_candidates) {
        errors.push_back(sweep_error(integrate(method, problem, H, m, times, opts), reference.states));
    }
    const double floor_err = errors.back();
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i] <= 1.05 * floor_err) return m_candidates[i];
    }
    return m_candidates.back();
}

void write_csv(const ConvergenceReport& report, const std::string& path) {
    if (report.rows.empty()) throw std::invalid_argument("write_csv: empty report");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    out << "H,m,max_error,slow_calls,total_calls,wall_time_s\n";
    char buf[256];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%lld,%lld,%.6f\n", row.H, row.m,
                      row.max_error, static_cast<long long>(row.slow_calls),
                      static_cast<long long>(row.total_calls), row.wall_time_s);
        out << buf;
    }
}

ConvergenceReport read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "H,m,max_error,slow_calls,total_calls,wall_time_s") {
        throw std::runtime_error("read_csv: bad header in '" + path + "'");
    }
    ConvergenceReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SweepRow row;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        long long slow = 0, total = 0;
        if (!(ss >> row.H >> row.m >> row.max_error >> slow >> total >> row.wall_time_s)) {
            throw std::runtime_error("read_csv: bad row '" + line + "'");
        }
        row.slow_calls = slow;
        row.total_calls = total;
        report.rows.push_back(row);
    }
    fit_report_rate(report);
    return report;
}

void write_summary_json(const SweepSpec& spec, const MerbMethod& method, int m_used,
                        const ConvergenceReport& report, const std::string& path) {
    nlohmann::json j;
    j["problem"] = spec.problem_id;
    j["method"] = method.name;
    j["order"] = method.order;
    j["nodes"] = method.c;
    j["traversal"] = method.traversal();
    j["num_fast_ivps"] = method.num_fast_ivps();
    j["m"] = m_used;
    j["fitted_rate"] = report.fitted_rate;
    j["fitted_points"] = report.fitted_points;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"H", row.H},
                        {"max_error", row.max_error},
                        {"slow_calls", row.slow_calls},
                        {"total_calls", row.total_calls},
                        {"wall_time_s", row.wall_time_s}});
    }
    j["rows"] = rows;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_summary_json: cannot open '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_svg_plot(const ConvergenceReport& report, const std::string& title,
                    const std::string& path) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : report.rows) {
        if (std::isfinite(row.max_error) && row.max_error > 0.0) {
            pts.push_back({std::log10(row.H), std::log10(row.max_error)});
        }
    }
    if (pts.size() < 2) throw std::invalid_argument("write_svg_plot: need two finite rows");

    double x0 = pts[0].first, x1 = pts[0].first, y0 = pts[0].second, y1 = pts[0].second;
    for (const auto& [x, y] : pts) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    const double w = 480, h = 360, margin = 50;
    auto sx = [&](double x) { return margin + (x - x0) / std::max(1e-12, x1 - x0) * (w - 2 * margin); };
    auto sy = [&](double y) { return h - margin - (y - y0) / std::max(1e-12, y1 - y0) * (h - 2 * margin); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_plot: cannot open '" + path + "'");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title << "</text>\n";
    out << "<text x='" << w / 2 << "' y='" << h - 10 << "' text-anchor='middle' font-size='12'>log10 H</text>\n";
    out << "<text x='15' y='" << h / 2 << "' font-size='12' transform='rotate(-90 15 " << h / 2
        << ")' text-anchor='middle'>log10 max error</text>\n";
    out << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (const auto& [x, y] : pts) out << sx(x) << "," << sy(y) << " ";
    out << "'/>\n";
    for (const auto& [x, y] : pts) {
        out << "<circle cx='" << sx(x) << "' cy='" << sy(y) << "' r='3' fill='steelblue'/>\n";
    }
    out << "<line x1='" << margin << "' y1='" << h - margin << "' x2='" << w - margin << "' y2='"
        << h - margin << "' stroke='black'/>\n";
    out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
        << h - margin << "' stroke='black'/>\n";
    out << "</svg>\n";
}

}  // namespace merb
