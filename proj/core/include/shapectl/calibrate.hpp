#pragma once

#include "shapectl/market.hpp"

namespace shapectl {

enum class ShiftMode {
    Absolute,  ///< Delta - Delta_classical = value
    Relative,  ///< Delta = (1 + epsilon * value) Delta_classical, value in (0, 1)
};

struct CalibrationTarget {
    ShiftMode mode = ShiftMode::Absolute;
    double value = 0.0;
    PhysicalPoint reference;
    MarketParams params;
    int n0 = 1;
    int epsilon = +1;

    void validate() const;
};

struct SolverOptions {
    double lambda_min_offset = 1e-6;  ///< search starts at 1 + offset
    double lambda_max = 1e6;
    int scan_points = 400;            ///< log-spaced bracketing scan
    double bisect_rel = 1e-3;         ///< bisection stops at this relative width
    double tol = 1e-10;               ///< final residual, shift units
    int max_iterations = 200;
};

struct CalibrationResult {
    double lambda_star = 0.0;
    double achieved_shift = 0.0;
    double residual = 0.0;  ///< achieved_shift - desired
    double desired_shift = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool multiple_roots = false;  ///< the scan crossed the target more than once
};

/// Delta - Delta_classical at the target's reference point for this lambda.
double achieved_shift(double lambda, const CalibrationTarget& target);

/// Absolute shift implied by the target (relative mode scales by Delta_classical).
double desired_shift(const CalibrationTarget& target);

/// Finds lambda with achieved_shift(lambda) = desired.
///
/// A log-spaced scan over (1 + offset, lambda_max] brackets the root, then
/// bisection narrows it to `bisect_rel` and a safeguarded secant finishes to
/// `tol`. With several crossings the largest lambda wins and the result is
/// flagged. Throws NoBracketError carrying the largest reachable shift.
CalibrationResult solve_lambda(const CalibrationTarget& target, double desired, double tol,
                               SolverOptions options = {});

/// Solves for desired_shift(target) with default options.
CalibrationResult solve_lambda(const CalibrationTarget& target, SolverOptions options = {});

}  // namespace shapectl
