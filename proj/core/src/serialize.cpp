#include "shapectl/serialize.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace shapectl {

using nlohmann::json;

namespace {

// 17 significant digits round-trip any double.
struct Num {
    double v;
};

std::ostream& operator<<(std::ostream& os, Num n) {
    return os << std::setprecision(17) << n.v;
}

}  // namespace

json to_json(const MarketParams& p) {
    return {{"r", p.rate}, {"sigma", p.sigma}, {"E", p.strike}, {"T_years", p.maturity},
            {"day_count", p.day_count}};
}

json to_json(const HeatConstants& c) {
    return {{"k", c.k}, {"alpha", c.alpha}, {"beta", c.beta}};
}

json to_json(const HeatPoint& h) { return {{"x", h.x}, {"tau", h.tau}}; }

json to_json(const ScaleSpec& s) {
    return {{"lambda", s.lambda}, {"n0", s.n0}, {"eps", s.epsilon}};
}

json to_json(const L2Report& r) {
    return {{"deviation_sq", r.deviation_sq},
            {"upper_bound", r.upper_bound},
            {"cross_term", r.cross_term},
            {"base_norm_sq", r.base_norm_sq},
            {"interval", {r.interval.lo, r.interval.hi}},
            {"interval_variable", "x = ln(S/E)"}};
}

json to_json(const GreeksReport& g) {
    json out = {{"variant", g.scale ? "perturbed" : "classical"},
                {"delta", g.delta},
                {"gamma", g.gamma},
                {"vega", g.vega},
                {"theta", g.theta},
                {"rho", g.rho},
                {"units",
                 {{"delta", "dimensionless (dC/dS)"},
                  {"gamma", "per currency unit (d2C/dS2)"},
                  {"vega", "currency per unit volatility (dC/dsigma)"},
                  {"theta", "currency per year (dC/dt, calendar time)"},
                  {"rho", "currency per unit rate (dC/dr)"}}}};
    if (g.scale) {
        out["scale"] = to_json(*g.scale);
        out["derived"] = {{"vega", "finite difference of the perturbed price"},
                          {"rho", "finite difference of the perturbed price"}};
    }
    return out;
}

json to_json(const CalibrationResult& r) {
    return {{"lambda_star", r.lambda_star},
            {"desired_shift", r.desired_shift},
            {"achieved_shift", r.achieved_shift},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"bracket", {r.bracket_lo, r.bracket_hi}},
            {"multiple_roots", r.multiple_roots}};
}

json to_json(const ErrorReport& r) {
    return {{"max_abs", r.max_abs}, {"rms", r.rms},      {"level_at_max", r.level_at_max},
            {"node_at_max", r.node_at_max}, {"x_at_max", r.x_at_max}, {"tau_at_max", r.tau_at_max}};
}

json surface_envelope(const SolutionSurface& s) {
    json out = {{"schema_version", kSchemaVersion},
                {"quantity", s.quantity},
                {"units", {{"t", "years"}, {"S", "currency"}, {"value", s.units}}},
                {"rows", s.spots.size() * s.times.size()},
                {"n_s", s.spots.size()},
                {"n_t", s.times.size()},
                {"csv_header", "t,S,value"},
                {"params", to_json(s.params)}};
    out["scale"] = s.scale ? to_json(*s.scale) : json(nullptr);
    return out;
}

void write_surface_csv(std::ostream& os, const SolutionSurface& s) {
    os << "t,S,value\n";
    for (std::size_t it = 0; it < s.times.size(); ++it)
        for (std::size_t is = 0; is < s.spots.size(); ++is)
            os << Num{s.times[it]} << ',' << Num{s.spots[is]} << ',' << Num{s.at(it, is)} << '\n';
}

void write_fd_csv(std::ostream& os, const FdSolution& sol, const MarketParams& params) {
    const HeatConstants c = derive_constants(params);
    const double half_var = 0.5 * params.sigma * params.sigma;
    os << "t,S,value\n";
    for (int n = 0; n <= sol.grid.n_tau; ++n) {
        const double tau = sol.grid.tau(n);
        for (int i = 0; i < sol.grid.nx; ++i) {
            const double x = sol.grid.x(i);
            os << Num{params.maturity - tau / half_var} << ',' << Num{params.strike * std::exp(x)}
               << ',' << Num{params.strike * std::exp(c.alpha * x + c.beta * tau) * sol.at(n, i)}
               << '\n';
        }
    }
}

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve) {
    os << "S,C0,C0_lambda\n";
    for (const CurvePoint& p : curve)
        os << Num{p.spot} << ',' << Num{p.c0} << ',' << Num{p.c0_lambda} << '\n';
}

json schema_contract() {
    return {{"schema_version", kSchemaVersion},
            {"csv",
             {{"surface", {"t", "S", "value"}},
              {"initial_condition_curve", {"S", "C0", "C0_lambda"}},
              {"consistency", {"lambda", "deviation_sq", "upper_bound", "cross_term"}}}},
            {"json",
             {{"price",
               {"schema_version", "price", "units", "point", "heat_coords", "constants", "params",
                "scale"}},
              {"greeks", {"schema_version", "point", "params", "classical", "perturbed", "conventions"}},
              {"solve_lambda",
               {"schema_version", "lambda_star", "desired_shift", "achieved_shift", "residual",
                "iterations", "bracket", "multiple_roots", "target", "params"}},
              {"consistency",
               {"schema_version", "params", "n0", "epsilon", "interval_x", "rows", "curves"}},
              {"surface_envelope",
               {"schema_version", "quantity", "units", "rows", "n_s", "n_t", "csv_header",
                "params", "scale"}},
              {"surface_json",
               {"schema_version", "quantity", "units", "rows", "n_s", "n_t", "csv_header",
                "params", "scale", "spots", "times", "values"}},
              {"validate",
               {"schema_version", "initial", "params", "scale", "trim", "threshold",
                "threshold_units", "runs", "pass", "refinement"}},
              {"error", {"error", "message", "field"}}}}};
}

}  // namespace shapectl
