#include "shapectl/fd_oracle.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "shapectl/error.hpp"
#include "shapectl/solution.hpp"

namespace shapectl {

void FdGrid::validate(double tau_cap) const {
    if (!(x_min < 0.0 && 0.0 < x_max))
        throw Error(ErrorCode::InvalidParams, "need x_min < 0 < x_max", "x_min");
    if (nx < 3) throw Error(ErrorCode::InvalidParams, "nx must be >= 3", "nx");
    if (n_tau < 1) throw Error(ErrorCode::InvalidParams, "n_tau must be >= 1", "n_tau");
    if (!(tau_end > 0.0)) throw Error(ErrorCode::InvalidParams, "tau_end must be > 0", "tau_end");
    if (tau_cap > 0.0 && tau_end > tau_cap * (1.0 + 1e-12))
        throw Error(ErrorCode::InvalidParams, "tau_end exceeds sigma^2 T / 2", "tau_end");
}

Boundary call_boundary(double k) {
    return {[](double, double) { return 0.0; },
            [k](double x, double tau) { return classical_heat(x, tau, k); },
            "left: 0; right: classical closed form per level"};
}

Boundary exact_boundary(HeatFunction exact, std::string description) {
    return {exact, exact, std::move(description)};
}

FdSolution solve_heat_cn(const std::function<double(double)>& initial, const FdGrid& grid,
                         const Boundary& boundary) {
    grid.validate();
    const int nx = grid.nx;
    const int interior = nx - 2;
    const double h = grid.dx();
    const double dt = grid.dtau();
    const double half_r = 0.5 * dt / (h * h);

    FdSolution sol{grid, std::vector<double>(static_cast<std::size_t>(grid.n_tau + 1) * nx),
                   boundary.description};

    auto check = [](double v, int level) {
        if (!std::isfinite(v) || std::abs(v) > 1e12)
            throw Error(ErrorCode::Instability,
                        "value blew up at level " + std::to_string(level) +
                            "; check the boundary data");
    };

    for (int i = 0; i < nx; ++i) {
        const double v = initial(grid.x(i));
        check(v, 0);
        sol.values[i] = v;
    }

    // Constant tridiagonal (-r/2, 1 + r, -r/2): factor once (Thomas).
    const double diag = 1.0 + 2.0 * half_r;
    const double off = -half_r;
    std::vector<double> c_prime(interior), rhs(interior);
    c_prime[0] = off / diag;
    for (int i = 1; i < interior; ++i) c_prime[i] = off / (diag - off * c_prime[i - 1]);

    for (int n = 1; n <= grid.n_tau; ++n) {
        const double* prev = &sol.values[static_cast<std::size_t>(n - 1) * nx];
        double* next = &sol.values[static_cast<std::size_t>(n) * nx];
        const double tau = grid.tau(n);
        next[0] = boundary.left(grid.x_min, tau);
        next[nx - 1] = boundary.right(grid.x_max, tau);

        for (int i = 1; i <= interior; ++i)
            rhs[i - 1] = half_r * prev[i - 1] + (1.0 - 2.0 * half_r) * prev[i] + half_r * prev[i + 1];
        rhs[0] += half_r * next[0];
        rhs[interior - 1] += half_r * next[nx - 1];

        // Forward sweep, then back substitution into next[1..nx-2].
        rhs[0] /= diag;
        for (int i = 1; i < interior; ++i)
            rhs[i] = (rhs[i] - off * rhs[i - 1]) / (diag - off * c_prime[i - 1]);
        next[interior] = rhs[interior - 1];
        for (int i = interior - 2; i >= 0; --i) next[i + 1] = rhs[i] - c_prime[i] * next[i + 2];

        for (int i = 0; i < nx; ++i) check(next[i], n);
    }
    return sol;
}

namespace {

ErrorReport compare_levels(const FdSolution& fd, const HeatFunction& analytic, int first, int last,
                           int trim, const HeatFunction& weight) {
    const FdGrid& g = fd.grid;
    if (trim < 0 || 2 * trim >= g.nx)
        throw Error(ErrorCode::InvalidParams, "trim must leave at least one node", "trim");
    ErrorReport report;
    double sum_sq = 0.0;
    long count = 0;
    for (int n = first; n <= last; ++n) {
        const double tau = g.tau(n);
        for (int i = trim; i < g.nx - trim; ++i) {
            const double x = g.x(i);
            double e = std::abs(fd.at(n, i) - analytic(x, tau));
            if (weight) e *= std::abs(weight(x, tau));
            sum_sq += e * e;
            ++count;
            if (e > report.max_abs) {
                report.max_abs = e;
                report.level_at_max = n;
                report.node_at_max = i;
                report.x_at_max = x;
                report.tau_at_max = tau;
            }
        }
    }
    report.rms = std::sqrt(sum_sq / static_cast<double>(count));
    return report;
}

}  // namespace

ErrorReport compare_surfaces(const FdSolution& fd, const HeatFunction& analytic, int trim,
                             const HeatFunction& weight) {
    return compare_levels(fd, analytic, 0, fd.grid.n_tau, trim, weight);
}

ErrorReport compare_level(const FdSolution& fd, const HeatFunction& analytic, int level, int trim,
                          const HeatFunction& weight) {
    if (level < 0 || level > fd.grid.n_tau)
        throw Error(ErrorCode::InvalidParams, "level outside the solution", "level");
    return compare_levels(fd, analytic, level, level, trim, weight);
}

double observed_order(double coarse_error, double fine_error) {
    return std::log2(coarse_error / fine_error);
}

}  // namespace shapectl
