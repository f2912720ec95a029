#pragma once

#include "levyq/model.hpp"

#include <vector>

namespace levyq::fixtures {

// Published staffing-table values used as regression fixtures. Each cell keeps
// the printed numbers verbatim, plus annotations for the handful of printed
// entries that are internally inconsistent with the rest of their own table
// (see the `Defect` notes); those cells are reported but not treated as ground
// truth by the checks that gate on reproduction.
enum class Scenario { EmptyStart, HighStart };

enum class Defect {
    None,
    CopiedEmptyStartColumn, // mu_tilde and its cost repeat the x = 0 column
    HalvedStart,            // mu_tilde was computed with half the stated start level
    DuplicatedBlock,        // whole block repeats the alpha = 2 block
    MissingStartSliver,     // printed costs omit the initial [0, 0.01) sliver worth x h / T
    HalvedHorizonCost,      // printed cost of the corrected rule was evaluated over T / 2
};

struct TableCell {
    int table;     // 1: exponential jumps, 2: Pareto jumps, 3: Brownian s^2=1, 4: Brownian s^2=4
    double alpha;
    double T;
    Scenario scenario;
    double x;      // initial backlog of the block
    double mu_inf;
    double pi_inf;
    double mu_tilde;
    double pi_tilde;
    double rel_reduction;
    Defect defect;
    bool pi_tilde_evaluated; // false when the printed cost was copied rather than evaluated
};

const std::vector<TableCell>& table_cells();

// Cells of one table, in row order (alpha, T, scenario).
std::vector<TableCell> cells_for_table(int table);

InputModel table_model(int table);

// Start level of the high-backlog scenario: twice the benchmark congestion
// level sqrt(alpha lambda u2 / 2).
double table_high_start(int table, double alpha);

inline const std::vector<double>& table_alphas() {
    static const std::vector<double> a = {0.1, 1.0, 2.0};
    return a;
}

inline const std::vector<double>& table_horizons() {
    static const std::vector<double> t = {1.0, 2.0, 5.0, 10.0};
    return t;
}

} // namespace levyq::fixtures
