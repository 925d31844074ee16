#include "cpg/study.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "cpg/assembly.hpp"
#include "cpg/problems.hpp"
#include "cpg/projection.hpp"
#include "cpg/solve.hpp"

namespace cpg {

const char* const kCsvHeader =
    "level,M,N,h_max,n_dof,L2,H1,H2,e_un,e_gradn,e_uJ,e_gradl,e_lapg,e_u_max,e_grad_max,"
    "e_lap_max,sc_L2,sc_H1,sc_H2";

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    for (;;) {
        const auto next = line.find(sep, pos);
        out.push_back(line.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

void check_config(const StudyConfig& c) {
    if (c.k < 3 || c.k > 6)
        throw std::invalid_argument("study: degree must be in [3, 6]");
    if (c.meshes.empty()) throw std::invalid_argument("study: mesh list is empty");
    for (std::size_t i = 0; i < c.meshes.size(); ++i) {
        if (c.meshes[i] < 1) throw std::invalid_argument("study: mesh sizes must be >= 1");
        if (i > 0 && c.meshes[i] <= c.meshes[i - 1])
            throw std::invalid_argument("study: mesh list must increase strictly");
    }
    if (!(c.eps >= 0.0 && c.eps < 0.5))
        throw std::invalid_argument("study: eps must lie in [0, 0.5)");
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
    check_config(config);
    const ProblemSpec problem = make_problem(config.problem);

    StudyResult result;
    result.config = config;
    result.quad_points =
        config.quad_points > 0 ? config.quad_points : default_quad_points(problem, config.k);
    result.line_samples = config.line_samples > 0 ? config.line_samples : config.k + 1;
    result.warnings = validate(problem);

    for (int M : config.meshes) {
        const auto t0 = std::chrono::steady_clock::now();
        LevelRun run;
        run.M = run.N = M;

        const TensorMesh mesh = make_mesh(M, M, problem.ax, problem.bx, problem.ay, problem.by,
                                          config.eps, config.seed);
        const auto space = std::make_shared<TrialSpace>(mesh, config.k, true);

        Eigen::VectorXd coeffs;
        try {
            const SparseSystem sys = assemble(*space, problem, result.quad_points);
            coeffs = solve_linear(sys);
        } catch (const std::exception& e) {
            throw std::runtime_error("study: level M=" + std::to_string(M) +
                                     " failed: " + e.what());
        }
        const CoefficientField uh(space, std::move(coeffs));
        const CoefficientField ui = project_field(problem.exact, space);

        ErrorReport& r = run.report;
        r.h_max = mesh.h_max();
        r.n_dof = space->dim();
        const SobolevError se = sobolev_errors(uh, problem.exact);
        r.L2 = se.l2;
        r.H1 = se.h1;
        r.H2 = se.h2;
        const NodeErrors ne = node_errors(uh, problem.exact);
        r.e_un = ne.value;
        r.e_gradn = ne.gradient;
        const SuperPointErrors pe = interior_point_errors(uh, problem.exact);
        r.e_uJ = pe.rms_by_cells;
        r.e_uJ_rms = pe.rms;
        r.e_u_max = pe.max;
        const LineErrors le = line_errors(uh, problem.exact, result.line_samples);
        r.e_gradl = le.grad_rms;
        r.e_lapg = le.lap_rms;
        r.e_grad_max = le.grad_max;
        r.e_lap_max = le.lap_max;
        const SobolevError sc = sobolev_diff(uh, ui);
        r.sc_L2 = sc.l2;
        r.sc_H1 = sc.h1;
        r.sc_H2 = sc.h2;

        run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.levels.push_back(std::move(run));
    }
    return result;
}

StudyTable to_table(const StudyResult& result) {
    StudyTable table;
    table.columns = split(kCsvHeader, ',');

    std::string meshes;
    for (std::size_t i = 0; i < result.config.meshes.size(); ++i)
        meshes += (i ? "," : "") + std::to_string(result.config.meshes[i]);
    std::string seconds;
    for (std::size_t i = 0; i < result.levels.size(); ++i)
        seconds += (i ? "," : "") + fmt17(result.levels[i].seconds);
    table.comments = {
        "problem = " + result.config.problem,
        "k = " + std::to_string(result.config.k),
        "meshes = " + meshes,
        "eps = " + fmt17(result.config.eps),
        "seed = " + std::to_string(result.config.seed),
        "quad_points = " + std::to_string(result.quad_points),
        "line_samples = " + std::to_string(result.line_samples),
        "level_seconds = " + seconds,
    };
    for (const std::string& w : result.warnings) table.comments.push_back("warning: " + w);

    for (std::size_t l = 0; l < result.levels.size(); ++l) {
        const LevelRun& run = result.levels[l];
        const ErrorReport& r = run.report;
        std::vector<std::optional<double>> row;
        row.emplace_back(static_cast<double>(l + 1));
        row.emplace_back(static_cast<double>(run.M));
        row.emplace_back(static_cast<double>(run.N));
        row.emplace_back(r.h_max);
        row.emplace_back(static_cast<double>(r.n_dof));
        row.emplace_back(r.L2);
        row.emplace_back(r.H1);
        row.emplace_back(r.H2);
        row.push_back(r.e_un);
        row.push_back(r.e_gradn);
        row.push_back(r.e_uJ);
        row.emplace_back(r.e_gradl);
        row.emplace_back(r.e_lapg);
        row.push_back(r.e_u_max);
        row.emplace_back(r.e_grad_max);
        row.emplace_back(r.e_lap_max);
        row.emplace_back(r.sc_L2);
        row.emplace_back(r.sc_H1);
        row.emplace_back(r.sc_H2);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string csv_string(const StudyTable& table) {
    std::string out;
    for (const std::string& c : table.comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (row[i]) out += fmt17(*row[i]);
        }
        out += "\n";
    }
    return out;
}

StudyTable read_csv(std::istream& in) {
    StudyTable table;
    const std::vector<std::string> expected = split(kCsvHeader, ',');
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string c = line.substr(1);
            if (!c.empty() && c[0] == ' ') c.erase(0, 1);
            table.comments.push_back(c);
            continue;
        }
        if (!have_header) {
            if (line != kCsvHeader)
                throw std::runtime_error("csv line " + std::to_string(lineno) +
                                         ": header mismatch\n  expected: " + kCsvHeader +
                                         "\n  found:    " + line);
            table.columns = expected;
            have_header = true;
            continue;
        }
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != expected.size())
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(expected.size()) + " fields, found " +
                                     std::to_string(fields.size()));
        std::vector<std::optional<double>> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c].empty()) continue;
            const char* s = fields[c].c_str();
            char* end = nullptr;
            const double v = std::strtod(s, &end);
            if (end == s || *end != '\0')
                throw std::runtime_error("csv line " + std::to_string(lineno) + ", column " +
                                         std::to_string(c + 1) + " (" + expected[c] +
                                         "): not a number: '" + fields[c] + "'");
            row[c] = v;
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv: no header line found");
    return table;
}

std::vector<std::vector<std::optional<double>>> table_rates(const StudyTable& table) {
    constexpr int kHCol = 3, kFirstMetric = 5;
    std::vector<LevelValues> levels;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (!row[kHCol])
            throw std::runtime_error("rates: row " + std::to_string(r + 1) + " lacks h_max");
        LevelValues lv;
        lv.h_max = *row[kHCol];
        lv.values.assign(row.begin() + kFirstMetric, row.end());
        levels.push_back(std::move(lv));
    }
    return rate_table(levels);
}

std::string format_rates(const StudyTable& table) {
    const auto orders = table_rates(table);
    std::ostringstream os;
    if (orders.empty()) {
        os << "rates: need at least two levels\n";
        return os.str();
    }
    constexpr int kFirstMetric = 5;
    os << "observed orders (consecutive levels)\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-12s", "levels");
    os << buf;
    for (std::size_t c = kFirstMetric; c < table.columns.size(); ++c) {
        std::snprintf(buf, sizeof buf, "%11s", table.columns[c].c_str());
        os << buf;
    }
    os << "\n";
    for (std::size_t r = 0; r < orders.size(); ++r) {
        const auto m = [&](std::size_t row, int col) {
            const auto& v = table.rows[row][col];
            return v ? static_cast<long long>(*v) : 0ll;
        };
        std::string pair = std::to_string(m(r, 1)) + "->" + std::to_string(m(r + 1, 1));
        std::snprintf(buf, sizeof buf, "%-12s", pair.c_str());
        os << buf;
        for (const auto& v : orders[r]) {
            if (v)
                std::snprintf(buf, sizeof buf, "%11.2f", *v);
            else
                std::snprintf(buf, sizeof buf, "%11s", "-");
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

std::string plot_script(const std::string& csv_path) {
    std::ostringstream os;
    os << "# log-log convergence plot for " << csv_path << "\n";
    os << "# usage: gnuplot -p <this file>\n";
    os << "set datafile separator ','\n";
    os << "set datafile missing ''\n";
    os << "set logscale xy\n";
    os << "set xlabel 'h_max'\n";
    os << "set ylabel 'error'\n";
    os << "set key outside\n";
    os << "set format y '%.0e'\n";
    const std::vector<std::string> cols = {
        "L2",      "H1",        "H2",    "e_un",       "e_gradn",   "e_uJ",  "e_gradl",
        "e_lapg",  "e_u_max",   "e_grad_max", "e_lap_max", "sc_L2", "sc_H1", "sc_H2"};
    os << "plot \\\n";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << "  '" << csv_path << "' using 4:" << (6 + i) << " with linespoints title '"
           << cols[i] << "'";
        os << (i + 1 < cols.size() ? ", \\\n" : "\n");
    }
    return os.str();
}

std::string solve_once_csv(const SolveOnceConfig& config) {
    if (config.k < 3 || config.k > 6)
        throw std::invalid_argument("solve: degree must be in [3, 6]");
    if (config.M < 1 || config.N < 1)
        throw std::invalid_argument("solve: mesh sizes must be >= 1");
    if (config.grid < 1) throw std::invalid_argument("solve: probe grid must be >= 1");
    const ProblemSpec problem = make_problem(config.problem);
    const TensorMesh mesh = make_mesh(config.M, config.N, problem.ax, problem.bx, problem.ay,
                                      problem.by, config.eps, config.seed);
    const auto space = std::make_shared<TrialSpace>(mesh, config.k, true);
    const SparseSystem sys = assemble(*space, problem, config.quad_points);
    const CoefficientField uh(space, solve_linear(sys));

    std::string out = "x,y,u_h,u,error\n";
    for (int i = 0; i < config.grid; ++i)
        for (int j = 0; j < config.grid; ++j) {
            const double x = problem.ax + (problem.bx - problem.ax) * (i + 0.5) / config.grid;
            const double y = problem.ay + (problem.by - problem.ay) * (j + 0.5) / config.grid;
            const double v = uh.eval(x, y);
            const double ex = problem.exact.u(x, y);
            out += fmt17(x) + "," + fmt17(y) + "," + fmt17(v) + "," + fmt17(ex) + "," +
                   fmt17(v - ex) + "\n";
        }
    return out;
}

}  // namespace cpg
