// Command-line front end: convergence studies, observed-order tables from a
// CSV, and single solves sampled on a probe grid.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpg/study.hpp"

namespace {

std::vector<int> parse_mesh_list(const std::string& text) {
    std::vector<int> meshes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            meshes.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--meshes", "not an integer: '" + item + "'");
        }
    }
    if (meshes.empty()) throw CLI::ValidationError("--meshes", "empty list");
    return meshes;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int run_study_command(const std::string& problem, int k, const std::string& mesh_text, double eps,
                      std::uint64_t seed, int quad, int line_samples, const std::string& out_path,
                      bool emit_plot) {
    cpg::StudyConfig config;
    config.problem = problem;
    config.k = k;
    config.meshes = parse_mesh_list(mesh_text);
    config.eps = eps;
    config.seed = seed;
    config.quad_points = quad;
    config.line_samples = line_samples;

    const cpg::StudyResult result = cpg::run_study(config);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";

    const cpg::StudyTable table = cpg::to_table(result);
    write_file(out_path, cpg::csv_string(table));
    std::cout << "wrote " << out_path << "\n";
    for (std::size_t l = 0; l < result.levels.size(); ++l) {
        const auto& run = result.levels[l];
        std::printf("level %zu: M=%d N=%d n_dof=%d h_max=%.3e L2=%.3e (%.2fs)\n", l + 1, run.M,
                    run.N, run.report.n_dof, run.report.h_max, run.report.L2, run.seconds);
        if (run.report.e_uJ_rms)
            std::printf("         per-sample superconvergence-point rms %.3e\n",
                        *run.report.e_uJ_rms);
    }
    std::cout << cpg::format_rates(table);

    if (emit_plot) {
        const std::string plot_path = out_path + ".gnuplot";
        write_file(plot_path, cpg::plot_script(out_path));
        std::cout << "wrote " << plot_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"C1-conforming Petrov-Galerkin solver for 2D convection-diffusion problems"};
    app.require_subcommand(1);

    // study
    auto* study = app.add_subcommand("study", "run a mesh-refinement convergence study");
    std::string problem = "ex1a", mesh_text, out_path = "results.csv";
    int k = 3, quad = 0, line_samples = 0;
    double eps = 1e-3;
    std::uint64_t seed = 42;
    bool emit_plot = false;
    study->add_option("--problem", problem, "problem id (ex1a..ex1d, ex2)")
        ->default_val("ex1a");
    study->add_option("--k", k, "trial polynomial degree")->check(CLI::Range(3, 6))
        ->default_val(3);
    study->add_option("--meshes", mesh_text, "comma-separated mesh sizes, e.g. 4,8,16,32")
        ->required();
    study->add_option("--eps", eps, "mesh perturbation amplitude in [0, 0.5)")->default_val(1e-3);
    study->add_option("--seed", seed, "perturbation seed")->default_val(42);
    study->add_option("--quad", quad, "quadrature points per direction (0 = default)")
        ->default_val(0);
    study->add_option("--line-samples", line_samples,
                      "transverse samples per cell for line metrics (0 = k+1)")
        ->default_val(0);
    study->add_option("--out", out_path, "output CSV path")->default_val("results.csv");
    study->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to the CSV");

    // rates
    auto* rates = app.add_subcommand("rates", "print observed orders from a study CSV");
    std::string csv_path;
    rates->add_option("csv", csv_path, "study CSV file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "solve once and sample the solution");
    cpg::SolveOnceConfig sconfig;
    std::string solve_problem = "ex1a", solve_out;
    int sM = 8, sN = 0;
    solve->add_option("--problem", solve_problem, "problem id (ex1a..ex1d, ex2)")
        ->default_val("ex1a");
    solve->add_option("--k", sconfig.k, "trial polynomial degree")->check(CLI::Range(3, 6))
        ->default_val(3);
    solve->add_option("--M", sM, "cells in x")->default_val(8);
    solve->add_option("--N", sN, "cells in y (0 = same as M)")->default_val(0);
    solve->add_option("--eps", sconfig.eps, "mesh perturbation amplitude in [0, 0.5)")
        ->default_val(1e-3);
    solve->add_option("--seed", sconfig.seed, "perturbation seed")->default_val(42);
    solve->add_option("--quad", sconfig.quad_points, "quadrature points per direction (0 = default)")
        ->default_val(0);
    solve->add_option("--grid", sconfig.grid, "probe points per direction")->default_val(5);
    solve->add_option("--out", solve_out, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (study->parsed())
            return run_study_command(problem, k, mesh_text, eps, seed, quad, line_samples,
                                     out_path, emit_plot);
        if (rates->parsed()) {
            std::ifstream in(csv_path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
            std::cout << cpg::format_rates(cpg::read_csv(in));
            return 0;
        }
        if (solve->parsed()) {
            sconfig.problem = solve_problem;
            sconfig.M = sM;
            sconfig.N = sN > 0 ? sN : sM;
            const std::string text = cpg::solve_once_csv(sconfig);
            if (solve_out.empty())
                std::cout << text;
            else {
                write_file(solve_out, text);
                std::cout << "wrote " << solve_out << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
