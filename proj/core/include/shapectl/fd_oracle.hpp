#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace shapectl {

/// Uniform (x, tau) grid for the Crank-Nicolson validation solver.
struct FdGrid {
    double x_min = -6.0;
    double x_max = 6.0;
    int nx = 2001;
    int n_tau = 2000;
    double tau_end = 0.0;

    /// Throws Error(InvalidParams): x_min < 0 < x_max, nx >= 3, n_tau >= 1,
    /// tau_end > 0 (and <= tau_cap when tau_cap > 0).
    void validate(double tau_cap = 0.0) const;

    [[nodiscard]] double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
    [[nodiscard]] double dtau() const noexcept { return tau_end / n_tau; }
    [[nodiscard]] double x(int node) const noexcept { return x_min + node * dx(); }
    [[nodiscard]] double tau(int level) const noexcept { return level * dtau(); }
};

using HeatFunction = std::function<double(double x, double tau)>;

/// Dirichlet data on both ends of the truncated domain.
struct Boundary {
    HeatFunction left;
    HeatFunction right;
    std::string description;
};

/// Left: 0. Right: the classical closed form, refreshed every level.
Boundary call_boundary(double k);

/// Both ends taken from the supplied exact solution.
Boundary exact_boundary(HeatFunction exact, std::string description);

struct FdSolution {
    FdGrid grid;
    std::vector<double> values;  ///< (n_tau + 1) x nx, row-major over tau levels
    std::string boundary_mode;

    [[nodiscard]] double at(int level, int node) const {
        return values[static_cast<std::size_t>(level) * grid.nx + node];
    }
};

/// Crank-Nicolson for u_tau = u_xx. Level 0 is the sampled initial data.
/// Throws Error(Instability) if any value exceeds 1e12 in magnitude.
FdSolution solve_heat_cn(const std::function<double(double)>& initial, const FdGrid& grid,
                         const Boundary& boundary);

struct ErrorReport {
    double max_abs = 0.0;
    double rms = 0.0;
    int level_at_max = 0;
    int node_at_max = 0;
    double x_at_max = 0.0;
    double tau_at_max = 0.0;
};

/// Error statistics over every level and the nodes [trim, nx - 1 - trim].
/// `weight`, when set, multiplies each pointwise error (e.g. to report in
/// price units).
ErrorReport compare_surfaces(const FdSolution& fd, const HeatFunction& analytic, int trim,
                             const HeatFunction& weight = {});

/// Same statistics restricted to one tau level. On the kinked payoff the
/// first steps carry an O(h) error at x = 0, so convergence order is read
/// off the final level.
ErrorReport compare_level(const FdSolution& fd, const HeatFunction& analytic, int level, int trim,
                          const HeatFunction& weight = {});

/// log2(coarse / fine) for a halving refinement.
double observed_order(double coarse_error, double fine_error);

}  // namespace shapectl
