#include "levyq/fixtures.hpp"
#include "levyq/errors.hpp"
#include "levyq/stationary.hpp"

#include <cmath>

namespace levyq::fixtures {

namespace {

struct Row {
    double alpha;
    double T;
    // x = 0 block: mu_inf, pi_inf, mu_tilde, pi_tilde, rel
    double e[5];
    // high-start block: same columns
    double h[5];
};

// clang-format off
const Row kTable1[] = {
    {0.1,  1, {4.162, 0.620, 2.688, 0.536, 0.136}, {4.162, 0.682, 2.688, 0.536, 0.214}},
    {0.1,  2, {4.162, 0.669, 3.425, 0.641, 0.041}, {4.162, 0.700, 3.425, 0.641, 0.085}},
    {0.1,  5, {4.162, 0.706, 3.867, 0.703, 0.005}, {4.162, 0.719, 3.867, 0.703, 0.022}},
    {0.1, 10, {4.162, 0.719, 4.015, 0.719, 0.001}, {4.162, 0.726, 4.015, 0.719, 0.010}},
    {1.0,  1, {2.000, 2.309, 0.000, 0.500, 0.783}, {2.000, 3.500, 0.500, 2.750, 0.214}},
    {1.0,  2, {2.000, 2.461, 0.750, 1.480, 0.398}, {2.000, 3.218, 1.250, 3.125, 0.029}},
    {1.0,  5, {2.000, 2.675, 1.500, 2.400, 0.103}, {2.000, 3.043, 1.700, 2.968, 0.025}},
    {1.0, 10, {2.000, 2.810, 1.750, 2.726, 0.030}, {2.000, 3.007, 1.850, 2.980, 0.009}},
    {2.0,  1, {1.707, 3.744, 0.000, 0.500, 0.866}, {1.707, 5.889, 0.000, 3.328, 0.435}},
    {2.0,  2, {1.707, 3.924, 0.146, 1.232, 0.686}, {1.707, 5.547, 0.854, 4.682, 0.156}},
    {2.0,  5, {1.707, 4.209, 1.083, 3.343, 0.206}, {1.707, 5.114, 1.366, 4.910, 0.040}},
    {2.0, 10, {1.707, 4.424, 1.395, 4.108, 0.071}, {1.707, 4.945, 1.536, 4.868, 0.016}},
};

const Row kTable2[] = {
    {0.1,  1, {3.510, 0.524, 1.759, 0.461, 0.120}, {3.510, 0.573, 2.010, 0.562, 0.019}},
    {0.1,  2, {3.510, 0.555, 2.635, 0.539, 0.029}, {3.510, 0.580, 2.760, 0.574, 0.010}},
    {0.1,  5, {3.510, 0.580, 3.160, 0.578, 0.003}, {3.510, 0.591, 3.210, 0.589, 0.002}},
    {0.1, 10, {3.510, 0.590, 3.335, 0.590, 0.000}, {3.510, 0.596, 3.360, 0.595, 0.001}},
    {1.0,  1, {1.794, 2.076, 0.000, 0.500, 0.759}, {1.794, 2.989, 0.000, 2.088, 0.302}},
    {1.0,  2, {1.794, 2.190, 0.511, 1.291, 0.411}, {1.794, 2.790, 0.610, 2.588, 0.072}},
    {1.0,  5, {1.794, 2.345, 1.281, 2.108, 0.101}, {1.794, 2.638, 1.320, 2.607, 0.012}},
    {1.0, 10, {1.794, 2.441, 1.537, 2.371, 0.029}, {1.794, 2.597, 1.557, 2.585, 0.005}},
    {2.0,  1, {1.561, 3.427, 0.000, 0.500, 0.854}, {1.561, 5.087, 0.000, 2.745, 0.460}},
    {2.0,  2, {1.561, 3.567, 0.032, 1.050, 0.706}, {1.561, 4.832, 0.172, 3.417, 0.293}},
    {2.0,  5, {1.561, 3.779, 0.950, 3.012, 0.203}, {1.561, 4.499, 1.006, 4.313, 0.041}},
    {2.0, 10, {1.561, 3.935, 1.255, 3.356, 0.147}, {1.561, 4.351, 1.284, 4.304, 0.011}},
};

const Row kTable3[] = {
    {0.1,  1, {3.236, 0.525, 2.901, 0.518, 0.013}, {3.236, 0.565, 3.124, 0.564, 0.001}},
    {0.1,  2, {3.236, 0.536, 3.068, 0.534, 0.003}, {3.236, 0.556, 3.180, 0.556, 0.000}},
    {0.1,  5, {3.236, 0.543, 3.169, 0.542, 0.000}, {3.236, 0.551, 3.214, 0.551, 0.000}},
    {0.1, 10, {3.236, 0.545, 3.203, 0.545, 0.000}, {3.236, 0.549, 3.225, 0.549, 0.000}},
    {1.0,  1, {1.500, 3.420, 0.000, 0.833, 0.756}, {1.500, 4.741, 1.000, 3.984, 0.160}},
    {1.0,  2, {1.500, 3.539, 0.750, 2.386, 0.326}, {1.500, 4.579, 1.250, 4.293, 0.063}},
    {1.0,  5, {1.500, 3.707, 1.200, 3.363, 0.093}, {1.500, 4.335, 1.400, 4.274, 0.014}},
    {1.0, 10, {1.500, 3.820, 1.350, 3.705, 0.030}, {1.500, 4.190, 1.450, 4.175, 0.004}},
    {2.0,  1, {1.500, 3.420, 0.000, 0.833, 0.756}, {1.500, 4.741, 1.000, 3.984, 0.160}},
    {2.0,  2, {1.500, 3.539, 0.750, 2.386, 0.326}, {1.500, 4.579, 1.250, 4.293, 0.063}},
    {2.0,  5, {1.500, 3.707, 1.200, 3.363, 0.093}, {1.500, 4.335, 1.400, 4.274, 0.014}},
    {2.0, 10, {1.500, 3.820, 1.350, 3.705, 0.030}, {1.500, 4.190, 1.450, 4.175, 0.004}},
};

const Row kTable4[] = {
    {0.1,  1, {5.472, 0.950, 4.801, 0.936, 0.015}, {5.472, 1.030, 5.249, 1.029, 0.001}},
    {0.1,  2, {5.472, 0.972, 5.137, 0.968, 0.003}, {5.472, 1.012, 5.360, 1.012, 0.000}},
    {0.1,  5, {5.472, 0.985, 5.338, 0.985, 0.000}, {5.472, 1.002, 5.427, 1.002, 0.000}},
    {0.1, 10, {5.472, 0.990, 5.405, 0.990, 0.000}, {5.472, 0.998, 5.450, 0.998, 0.000}},
    {1.0,  1, {2.414, 3.176, 0.293, 1.546, 0.513}, {2.414, 4.633, 1.707, 4.228, 0.087}},
    {1.0,  2, {2.414, 3.356, 1.354, 2.690, 0.199}, {2.414, 4.375, 2.061, 4.247, 0.029}},
    {1.0,  5, {2.414, 3.573, 1.990, 3.411, 0.045}, {2.414, 4.094, 2.273, 4.073, 0.005}},
    {1.0, 10, {2.414, 3.689, 2.202, 3.646, 0.012}, {2.414, 3.966, 2.344, 3.962, 0.001}},
    {2.0,  1, {2.000, 4.839, 0.000, 1.339, 0.723}, {2.000, 7.481, 1.000, 5.967, 0.202}},
    {2.0,  2, {2.000, 5.078, 0.500, 2.773, 0.454}, {2.000, 7.158, 1.500, 6.585, 0.080}},
    {2.0,  5, {2.000, 5.414, 1.400, 4.726, 0.127}, {2.000, 6.670, 1.800, 6.549, 0.018}},
    {2.0, 10, {2.000, 5.639, 1.700, 5.409, 0.041}, {2.000, 6.380, 1.900, 6.349, 0.005}},
};
// clang-format on

Defect high_start_defect(int table, double alpha, double T) {
    if (table == 1 && alpha == 0.1)
        return Defect::CopiedEmptyStartColumn;
    // One cell of the M/M/1 table prints the corrected rule's cost evaluated
    // over half the stated horizon: simulation at the printed rate gives
    // 3.012 over T = 2 but 3.125 over T = 1, matching the printed 3.125 to
    // within a third decimal.
    if (table == 1 && alpha == 1.0 && T == 2.0)
        return Defect::HalvedHorizonCost;
    // In the Pareto table the high-start adjustment was computed with half the
    // stated start level. At alpha = 2, T = 1 both versions clamp to zero, so
    // that printed cell happens to agree anyway.
    if (table == 2 && alpha == 1.0)
        return Defect::HalvedStart;
    if (table == 2 && alpha == 2.0 && T > 1.0)
        return Defect::HalvedStart;
    if (table == 3 && alpha == 1.0)
        return Defect::DuplicatedBlock;
    // The Brownian tables were produced by numerical integration whose time
    // grid starts at h = 0.01, so the printed costs of every high-start cell
    // are short by the initial sliver x h / T. An exact (discretization-free)
    // Monte-Carlo check of E[(1/T) int Q dt] confirms the closed-form
    // evaluator and reproduces each printed cell once the sliver is added.
    if (table == 3 || table == 4)
        return Defect::MissingStartSliver;
    return Defect::None;
}

Defect empty_start_defect(int table, double alpha, double T) {
    if (table == 3 && alpha == 1.0)
        return Defect::DuplicatedBlock;
    // Same half-horizon slip as in the M/M/1 table, here on the Pareto
    // empty-start cell whose corrected rate sits closest to criticality:
    // simulation at the printed rate gives 3.663 over T = 10 but 3.357 over
    // T = 5, matching the printed 3.356.
    if (table == 2 && alpha == 2.0 && T == 10.0)
        return Defect::HalvedHorizonCost;
    return Defect::None;
}

void append_table(std::vector<TableCell>& out, int table, const Row* rows, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const Row& r = rows[i];
        const Defect de = empty_start_defect(table, r.alpha, r.T);
        out.push_back({table, r.alpha, r.T, Scenario::EmptyStart, 0.0, r.e[0], r.e[1], r.e[2],
                       r.e[3], r.e[4], de, true});
        const Defect dh = high_start_defect(table, r.alpha, r.T);
        const bool evaluated = dh != Defect::CopiedEmptyStartColumn;
        out.push_back({table, r.alpha, r.T, Scenario::HighStart, table_high_start(table, r.alpha),
                       r.h[0], r.h[1], r.h[2], r.h[3], r.h[4], dh, evaluated});
    }
}

} // namespace

const std::vector<TableCell>& table_cells() {
    static const std::vector<TableCell> cells = [] {
        std::vector<TableCell> out;
        out.reserve(96);
        append_table(out, 1, kTable1, std::size(kTable1));
        append_table(out, 2, kTable2, std::size(kTable2));
        append_table(out, 3, kTable3, std::size(kTable3));
        append_table(out, 4, kTable4, std::size(kTable4));
        return out;
    }();
    return cells;
}

std::vector<TableCell> cells_for_table(int table) {
    std::vector<TableCell> out;
    for (const TableCell& c : table_cells())
        if (c.table == table)
            out.push_back(c);
    if (out.empty())
        throw config_error("table index must be 1, 2, 3 or 4");
    return out;
}

InputModel table_model(int table) {
    switch (table) {
    case 1:
        return make_mm1(1.0);
    case 2:
        return make_mpareto(1.0, 3.2, 0.6875);
    case 3:
        return make_rbm(1.0, 1.0);
    case 4:
        return make_rbm(1.0, 4.0);
    default:
        throw config_error("table index must be 1, 2, 3 or 4");
    }
}

double table_high_start(int table, double alpha) {
    return 2.0 * benchmark_congestion(table_model(table), alpha);
}

} // namespace levyq::fixtures
