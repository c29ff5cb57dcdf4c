#include "shapectl/calibrate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "shapectl/error.hpp"
#include "shapectl/greeks.hpp"
#include "shapectl/profiles.hpp"

namespace shapectl {

void CalibrationTarget::validate() const {
    params.validate();
    if (!(reference.spot > 0.0)) throw Error(ErrorCode::InvalidParams, "S must be > 0", "S");
    if (!(reference.time >= 0.0 && reference.time < params.maturity))
        throw Error(ErrorCode::InvalidParams, "reference must be strictly before expiry", "t");
    if (n0 < 1) throw Error(ErrorCode::InvalidParams, "n0 must be >= 1", "n0");
    if (epsilon != 1 && epsilon != -1)
        throw Error(ErrorCode::InvalidParams, "eps must be +1 or -1", "eps");
    if (mode == ShiftMode::Relative && !(value > 0.0 && value < 1.0))
        throw Error(ErrorCode::InvalidParams, "eta0 must lie in (0, 1)", "eta0");
    if (mode == ShiftMode::Absolute && !std::isfinite(value))
        throw Error(ErrorCode::InvalidParams, "target shift must be finite", "target-shift");
}

double achieved_shift(double lambda, const CalibrationTarget& target) {
    target.validate();
    return delta_shift(target.reference, target.params, {lambda, target.n0, target.epsilon});
}

double desired_shift(const CalibrationTarget& target) {
    target.validate();
    if (target.mode == ShiftMode::Absolute) return target.value;
    return target.epsilon * target.value * delta_classical(target.reference, target.params);
}

CalibrationResult solve_lambda(const CalibrationTarget& target, double desired, double tol,
                               SolverOptions options) {
    target.validate();
    if (!(desired * target.epsilon > 0.0))
        throw Error(ErrorCode::InvalidParams, "target shift must be nonzero with the sign of eps",
                    "target-shift");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParams, "tol must be > 0", "tol");
    const double lambda_min = 1.0 + options.lambda_min_offset;
    if (!(options.lambda_min_offset > 0.0 && options.lambda_max > lambda_min && options.scan_points >= 2))
        throw Error(ErrorCode::InvalidParams, "bad search interval", "lambda_max");

    auto residual = [&](double lambda) { return achieved_shift(lambda, target) - desired; };

    CalibrationResult result;
    result.desired_shift = desired;

    const int n = options.scan_points;
    std::vector<double> grid(n), f(n);
    double max_shift = 0.0;
    for (int i = 0; i < n; ++i) {
        grid[i] = lambda_min * std::pow(options.lambda_max / lambda_min, static_cast<double>(i) / (n - 1));
        f[i] = residual(grid[i]);
        const double shift = f[i] + desired;
        if (std::abs(shift) > std::abs(max_shift)) max_shift = shift;
    }

    int crossings = 0;
    int chosen = -1;
    for (int i = 0; i + 1 < n; ++i) {
        if ((f[i] <= 0.0) != (f[i + 1] <= 0.0) || f[i] == 0.0) {
            ++crossings;
            chosen = i;  // keep the largest lambda
        }
    }
    if (chosen < 0) {
        std::ostringstream msg;
        msg << "shift " << desired << " not reachable on lambda in (" << lambda_min << ", "
            << options.lambda_max << "]; largest reachable shift " << max_shift;
        throw NoBracketError(msg.str(), max_shift);
    }
    result.multiple_roots = crossings > 1;

    double lo = grid[chosen], hi = grid[chosen + 1];
    double f_lo = f[chosen], f_hi = f[chosen + 1];
    result.bracket_lo = lo;
    result.bracket_hi = hi;

    int iterations = 0;
    double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    double f_best = std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi;

    auto shrink = [&](double x, double fx) {
        if ((fx <= 0.0) == (f_lo <= 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if (std::abs(fx) < std::abs(f_best)) {
            best = x;
            f_best = fx;
        }
    };

    while ((hi - lo) / lo > options.bisect_rel && std::abs(f_best) > tol &&
           iterations < options.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        shrink(mid, residual(mid));
        ++iterations;
    }

    // Secant on the two latest iterates, falling back to bisection whenever the
    // step leaves the bracket.
    double x0 = lo, f0 = f_lo, x1 = hi, f1 = f_hi;
    while (std::abs(f_best) > tol && iterations < options.max_iterations) {
        double x2 = (f1 != f0) ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
        if (!(x2 > lo && x2 < hi)) x2 = 0.5 * (lo + hi);
        const double f2 = residual(x2);
        shrink(x2, f2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        ++iterations;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    if (std::abs(f_best) > tol)
        throw Error(ErrorCode::NotFound, "lambda solve did not reach the requested tolerance");

    result.lambda_star = best;
    result.iterations = iterations;
    // Independent re-evaluation, not the cached residual.
    result.achieved_shift = achieved_shift(best, target);
    result.residual = result.achieved_shift - desired;
    return result;
}

CalibrationResult solve_lambda(const CalibrationTarget& target, SolverOptions options) {
    return solve_lambda(target, desired_shift(target), options.tol, options);
}

}  // namespace shapectl
