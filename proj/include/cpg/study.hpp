#pragma once

// Convergence studies: a sequence of meshes for one problem and degree,
// solved and measured, with CSV input/output and observed-order tables.
// The CSV schema is fixed; absent metrics stay empty fields and numbers
// round-trip exactly through 17 significant digits.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpg/metrics.hpp"

namespace cpg {

struct StudyConfig {
    std::string problem = "ex1a";
    int k = 3;
    std::vector<int> meshes;   // M = N per level, strictly increasing
    double eps = 1e-3;
    std::uint64_t seed = 42;
    int quad_points = 0;       // 0 = problem default (k+1 constant, k+3 variable)
    int line_samples = 0;      // 0 = k+1 transverse samples per cell
};

struct LevelRun {
    int M = 0, N = 0;
    ErrorReport report;
    double seconds = 0.0;
};

struct StudyResult {
    StudyConfig config;
    int quad_points = 0;   // the values actually used
    int line_samples = 0;
    std::vector<LevelRun> levels;
    std::vector<std::string> warnings;  // coefficient-condition findings
};

StudyResult run_study(const StudyConfig&);

extern const char* const kCsvHeader;

// Numeric view of a study: column names, one row per level, '#' comments.
struct StudyTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> comments;
};

StudyTable to_table(const StudyResult&);
std::string csv_string(const StudyTable&);
StudyTable read_csv(std::istream&);

// Observed orders for the metric columns (everything after n_dof); rows
// pair consecutive levels. Wraps metrics::rate_table.
std::vector<std::vector<std::optional<double>>> table_rates(const StudyTable&);
std::string format_rates(const StudyTable&);

// gnuplot commands plotting every metric of the CSV against h_max
std::string plot_script(const std::string& csv_path);

// Single solve sampled on an n x n cell-centered probe grid; returns CSV
// text with columns x,y,u_h,u,error.
struct SolveOnceConfig {
    std::string problem = "ex1a";
    int k = 3;
    int M = 8, N = 8;
    double eps = 1e-3;
    std::uint64_t seed = 42;
    int quad_points = 0;
    int grid = 5;
};
std::string solve_once_csv(const SolveOnceConfig&);

}  // namespace cpg
