#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "shapectl/calibrate.hpp"
#include "shapectl/error.hpp"
#include "shapectl/fd_oracle.hpp"
#include "shapectl/greeks.hpp"
#include "shapectl/profiles.hpp"
#include "shapectl/serialize.hpp"
#include "shapectl/solution.hpp"

namespace shapectl::cli {
namespace {

using nlohmann::json;

std::string flag_name(const std::string& key) {
    std::string flag = "--" + key;
    for (char& c : flag)
        if (c == '_') c = '-';
    return flag;
}

/// Numeric inputs of one subcommand, keyed by their config-file name.
/// The flag is the key with '_' spelled '-'.
class Inputs {
public:
    explicit Inputs(std::set<std::string>& known) : known_(known) {}

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        known_.insert(key);
        app->add_option(flag_name(key), values_[key], help);
    }

    [[nodiscard]] std::optional<double> get(const std::string& key) const {
        return values_.at(key);
    }

    [[nodiscard]] double value_or(const std::string& key, double fallback) const {
        return get(key).value_or(fallback);
    }

    [[nodiscard]] double require(const std::string& key) const {
        if (auto v = get(key)) return *v;
        throw Error(ErrorCode::InvalidParams, "missing required value " + flag_name(key), key);
    }

    [[nodiscard]] int integer(const std::string& key, int fallback) const {
        const double v = value_or(key, fallback);
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw Error(ErrorCode::InvalidParams, flag_name(key) + " must be an integer", key);
        return static_cast<int>(v);
    }

    /// Fills values not given on the command line. Keys belonging to other
    /// subcommands are accepted and ignored; anything else is rejected.
    void merge(const json& config) {
        if (!config.is_object())
            throw Error(ErrorCode::InvalidParams, "config must be a JSON object", "config");
        for (const auto& [key, value] : config.items()) {
            if (!known_.contains(key))
                throw Error(ErrorCode::InvalidParams, "unknown config key '" + key + "'", key);
            auto it = values_.find(key);
            if (it == values_.end() || it->second) continue;
            if (!value.is_number())
                throw Error(ErrorCode::InvalidParams, "config value '" + key + "' must be a number", key);
            it->second = value.get<double>();
        }
    }

private:
    std::set<std::string>& known_;
    std::map<std::string, std::optional<double>> values_;
};

struct Command {
    CLI::App* app = nullptr;
    std::unique_ptr<Inputs> inputs;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::function<int(Command&, std::ostream&)> action;
};

json error_json(std::string_view code, const std::string& message, const std::string& field) {
    return {{"error", code}, {"message", message}, {"field", field}};
}

void add_market(Inputs& in, CLI::App* app) {
    in.add(app, "r", "risk-free rate per year");
    in.add(app, "sigma", "volatility per sqrt(year)");
    in.add(app, "E", "exercise price");
    in.add(app, "T_days", "maturity in days");
    in.add(app, "T_years", "maturity in years");
    in.add(app, "day_count", "days per year (default 365)");
}

void add_scale(Inputs& in, CLI::App* app) {
    in.add(app, "lambda", "scale parameter lambda > 1");
    in.add(app, "n0", "number of scaled profiles (default 1)");
    in.add(app, "eps", "sign of the perturbation, +1 or -1 (default +1)");
}

void add_point(Inputs& in, CLI::App* app) {
    in.add(app, "S", "spot price");
    in.add(app, "t_days", "calendar time in days");
    in.add(app, "t_years", "calendar time in years");
}

std::optional<double> years(const Inputs& in, const std::string& stem, const MarketParams& m) {
    const auto days = in.get(stem + "_days");
    const auto yrs = in.get(stem + "_years");
    if (days && yrs)
        throw Error(ErrorCode::InvalidParams,
                    "give either " + flag_name(stem + "_days") + " or " + flag_name(stem + "_years"),
                    stem);
    if (days) return m.days_to_years(*days);
    return yrs;
}

MarketParams market(const Inputs& in) {
    MarketParams m;
    m.rate = in.require("r");
    m.sigma = in.require("sigma");
    m.strike = in.require("E");
    m.day_count = in.value_or("day_count", 365.0);
    const auto maturity = years(in, "T", m);
    if (!maturity)
        throw Error(ErrorCode::InvalidParams, "missing required value --T-days or --T-years", "T");
    m.maturity = *maturity;
    m.validate();
    return m;
}

PhysicalPoint point(const Inputs& in, const MarketParams& m, std::optional<PhysicalPoint> fallback = {}) {
    const auto t = years(in, "t", m);
    const auto s = in.get("S");
    if (fallback) return {s.value_or(fallback->spot), t.value_or(fallback->time)};
    if (!t) throw Error(ErrorCode::InvalidParams, "missing required value --t-days or --t-years", "t");
    if (!s) throw Error(ErrorCode::InvalidParams, "missing required value --S", "S");
    return {*s, *t};
}

ScaleSpec scale_without_lambda(const Inputs& in) {
    ScaleSpec spec;
    spec.n0 = in.integer("n0", 1);
    spec.epsilon = in.integer("eps", 1);
    return spec;
}

std::optional<ScaleSpec> scale(const Inputs& in) {
    if (!in.get("lambda")) {
        if (in.get("n0") || in.get("eps"))
            throw Error(ErrorCode::InvalidParams, "--n0 and --eps need --lambda", "lambda");
        return std::nullopt;
    }
    ScaleSpec spec = scale_without_lambda(in);
    spec.lambda = *in.get("lambda");
    spec.validate();
    return spec;
}

json point_json(const PhysicalPoint& p) { return {{"S", p.spot}, {"t", p.time}, {"t_units", "years"}}; }

void dump(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

struct Csv {
    double v;
};

std::ostream& operator<<(std::ostream& os, Csv n) {
    std::ostringstream s;
    s << std::setprecision(17) << n.v;
    return os << s.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidParams, "grid needs at least one point", "grid");
    if (n == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// ---------------------------------------------------------------- price

int cmd_price(Command& c, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const PhysicalPoint p = point(in, m);
    const auto spec = scale(in);
    const double price = call_price(p, m, spec);
    const HeatPoint h = to_heat(p, m);
    dump(os, {{"schema_version", kSchemaVersion},
              {"price", price},
              {"units", "currency"},
              {"point", point_json(p)},
              {"heat_coords", to_json(h)},
              {"constants", to_json(derive_constants(m))},
              {"params", to_json(m)},
              {"scale", spec ? to_json(*spec) : json(nullptr)}});
    return kOk;
}

// ---------------------------------------------------------------- greeks

int cmd_greeks(Command& c, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const PhysicalPoint p = point(in, m);
    const auto spec = scale(in);
    const GreeksReport classical = classical_greeks(p, m);
    json j = {{"schema_version", kSchemaVersion},
              {"point", point_json(p)},
              {"params", to_json(m)},
              {"classical", to_json(classical)},
              {"perturbed", nullptr},
              {"conventions",
               {{"time", "calendar years, t in [0, T]"},
                {"theta", "dC/dt at fixed S (negative of the time-to-expiry derivative)"},
                {"day_count", m.day_count}}}};
    if (spec) {
        const GreeksReport perturbed = perturbed_greeks(p, m, *spec);
        j["perturbed"] = to_json(perturbed);
        j["perturbed"]["delta_shift"] = perturbed.delta - classical.delta;
        j["perturbed"]["gamma_shift"] = perturbed.gamma - classical.gamma;
    }
    dump(os, j);
    return kOk;
}

// ---------------------------------------------------------------- solve-lambda

int cmd_solve_lambda(Command& c, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const ScaleSpec base = scale_without_lambda(in);
    CalibrationTarget target;
    target.params = m;
    target.n0 = base.n0;
    target.epsilon = base.epsilon;
    target.reference = point(in, m, PhysicalPoint{m.strike, 0.5 * m.maturity});
    const auto shift = in.get("target_shift");
    const auto eta0 = in.get("eta0");
    if (shift.has_value() == eta0.has_value())
        throw Error(ErrorCode::InvalidParams, "give exactly one of --target-shift or --eta0",
                    "target_shift");
    target.mode = shift ? ShiftMode::Absolute : ShiftMode::Relative;
    target.value = shift ? *shift : *eta0;

    SolverOptions options;
    options.tol = in.value_or("tol", options.tol);
    options.lambda_max = in.value_or("lambda_max", options.lambda_max);
    const CalibrationResult r = solve_lambda(target, options);

    json j = to_json(r);
    j["schema_version"] = kSchemaVersion;
    j["target"] = {{"mode", shift ? "absolute" : "relative"},
                   {"value", target.value},
                   {"reference", point_json(target.reference)},
                   {"n0", target.n0},
                   {"epsilon", target.epsilon},
                   {"quantity", "Delta - Delta_classical"}};
    j["params"] = to_json(m);
    dump(os, j);
    return kOk;
}

// ---------------------------------------------------------------- consistency

struct ConsistencyOptions {
    std::vector<double> lambdas;
    std::string curves_dir;
};

std::string curve_file_name(double lambda) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "curve_lambda_%g.csv", lambda);
    return buf;
}

int cmd_consistency(Command& c, const ConsistencyOptions& opt, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const ScaleSpec base = scale_without_lambda(in);
    if (opt.lambdas.empty())
        throw Error(ErrorCode::InvalidParams, "missing required value --lambda-list", "lambda_list");
    const double s_max = in.value_or("S_max", 2.0 * m.strike);
    if (!(s_max > m.strike))
        throw Error(ErrorCode::InvalidParams, "--S-max must exceed the exercise price", "S_max");
    const Interval interval{0.0, std::log(s_max / m.strike)};
    const double quad_tol = in.value_or("quad_tol", 1e-12);
    const double k = derive_constants(m).k;

    std::vector<std::pair<double, L2Report>> rows;
    for (double lambda : opt.lambdas) {
        ScaleSpec spec = base;
        spec.lambda = lambda;
        spec.validate();
        rows.emplace_back(lambda, l2_consistency(spec, k, interval, quad_tol));
    }

    json curves = json::array();
    if (!opt.curves_dir.empty()) {
        const double curve_max = in.value_or("curve_S_max", 2.0 * m.strike);
        const auto spots = linspace(0.0, curve_max, c.inputs->integer("curve_points", 201));
        for (double lambda : opt.lambdas) {
            ScaleSpec spec = base;
            spec.lambda = lambda;
            const auto path = std::filesystem::path(opt.curves_dir) / curve_file_name(lambda);
            std::ofstream f(path);
            if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + path.string(), "curves_dir");
            write_curve_csv(f, initial_condition_curve(spots, spec, m));
            curves.push_back(path.string());
        }
    }

    if (c.format == "csv") {
        os << "lambda,deviation_sq,upper_bound,cross_term\n";
        for (const auto& [lambda, r] : rows)
            os << Csv{lambda} << ',' << Csv{r.deviation_sq} << ',' << Csv{r.upper_bound} << ','
               << Csv{r.cross_term} << '\n';
        return kOk;
    }
    json j = {{"schema_version", kSchemaVersion},
              {"params", to_json(m)},
              {"n0", base.n0},
              {"epsilon", base.epsilon},
              {"interval_x", {interval.lo, interval.hi}},
              {"rows", json::array()},
              {"curves", curves}};
    for (const auto& [lambda, r] : rows) {
        json row = to_json(r);
        row["lambda"] = lambda;
        j["rows"].push_back(row);
    }
    dump(os, j);
    return kOk;
}

// ---------------------------------------------------------------- surface

struct SurfaceOptions {
    std::string quantity = "price";
    std::vector<double> spots;
    std::vector<double> times;
    std::string envelope_path;
};

int cmd_surface(Command& c, const SurfaceOptions& opt, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const auto spec = scale(in);

    std::vector<double> spots = opt.spots;
    if (spots.empty())
        spots = linspace(in.value_or("S_min", 50.0), in.value_or("S_max", 150.0), in.integer("ns", 51));
    std::vector<double> times = opt.times;
    if (times.empty()) {
        const int nt = in.integer("nt", 20);
        if (nt < 1) throw Error(ErrorCode::InvalidParams, "--nt must be positive", "nt");
        for (int i = 0; i < nt; ++i) times.push_back(i * m.maturity / nt);
    }

    SolutionSurface surface;
    if (opt.quantity == "price") {
        surface = price_surface(spots, times, m, spec);
    } else {
        if (!spec)
            throw Error(ErrorCode::InvalidParams, "--quantity delta-diff needs --lambda", "lambda");
        surface = delta_shift_surface(spots, times, m, *spec);
    }

    json envelope = surface_envelope(surface);
    if (!opt.envelope_path.empty()) {
        std::ofstream f(opt.envelope_path);
        if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + opt.envelope_path, "envelope");
        dump(f, envelope);
    }
    if (c.format == "csv") {
        write_surface_csv(os, surface);
        return kOk;
    }
    envelope["values"] = surface.values;
    envelope["spots"] = surface.spots;
    envelope["times"] = surface.times;
    dump(os, envelope);
    return kOk;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
    bool zero_initial = false;
    std::string fd_csv_path;
};

int cmd_validate(Command& c, const ValidateOptions& opt, std::ostream& os) {
    const Inputs& in = *c.inputs;
    const MarketParams m = market(in);
    const auto spec = scale(in);
    if (opt.zero_initial && spec)
        throw Error(ErrorCode::InvalidParams, "--zero-initial excludes --lambda", "zero_initial");
    const HeatConstants hc = derive_constants(m);
    const double k = hc.k;
    const double threshold = in.value_or("threshold", 5e-3);
    const int trim = in.integer("trim", 5);
    const int refine = in.integer("refine", 1);
    if (refine < 1) throw Error(ErrorCode::InvalidParams, "--refine must be >= 1", "refine");

    FdGrid grid;
    grid.x_min = in.value_or("x_min", grid.x_min);
    grid.x_max = in.value_or("x_max", grid.x_max);
    grid.nx = in.integer("nx", grid.nx);
    grid.n_tau = in.integer("n_tau", grid.n_tau);
    grid.tau_end = m.tau_max();
    grid.validate(m.tau_max());

    std::function<double(double)> initial;
    HeatFunction exact;
    std::string label;
    if (opt.zero_initial) {
        initial = [](double) { return 0.0; };
        exact = [](double, double) { return 0.0; };
        label = "zero";
    } else if (spec) {
        initial = [s = *spec, k](double x) { return scaled_initial_data(x, s, k); };
        exact = [s = *spec, k](double x, double tau) { return perturbed_heat(x, tau, s, k); };
        label = "perturbed";
    } else {
        initial = [k](double x) { return heat_payoff(x, k); };
        exact = [k](double x, double tau) { return classical_heat(x, tau, k); };
        label = "payoff";
    }
    const Boundary boundary = opt.zero_initial ? exact_boundary(exact, "zero on both ends")
                              : spec           ? exact_boundary(exact, "perturbed closed form on both ends")
                                               : call_boundary(k);
    const HeatFunction e_scaled = [hc](double x, double tau) {
        return std::exp(hc.alpha * x + hc.beta * tau);
    };

    json runs = json::array();
    bool pass = true;
    std::vector<double> surface_err;
    std::vector<double> final_err;
    std::vector<int> factors{1};
    if (refine > 1) factors.push_back(refine);
    for (int factor : factors) {
        FdGrid g = grid;
        g.nx = (grid.nx - 1) * factor + 1;
        g.n_tau = grid.n_tau * factor;
        const FdSolution sol = solve_heat_cn(initial, g, boundary);
        if (factor == 1 && !opt.fd_csv_path.empty()) {
            std::ofstream f(opt.fd_csv_path);
            if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + opt.fd_csv_path, "fd_csv");
            write_fd_csv(f, sol, m);
        }
        const ErrorReport heat = compare_surfaces(sol, exact, trim * factor);
        const ErrorReport scaled = compare_surfaces(sol, exact, trim * factor, e_scaled);
        const ErrorReport last = compare_level(sol, exact, g.n_tau, trim * factor, e_scaled);
        surface_err.push_back(scaled.max_abs);
        final_err.push_back(last.max_abs);
        pass = pass && scaled.max_abs <= threshold;
        runs.push_back({{"nx", g.nx},
                        {"n_tau", g.n_tau},
                        {"boundary", sol.boundary_mode},
                        {"heat_units", to_json(heat)},
                        {"e_scaled", to_json(scaled)},
                        {"final_level_e_scaled", to_json(last)}});
    }

    json j = {{"schema_version", kSchemaVersion},
              {"initial", label},
              {"params", to_json(m)},
              {"scale", spec ? to_json(*spec) : json(nullptr)},
              {"trim", trim},
              {"threshold", threshold},
              {"threshold_units", "E-scaled price, C / E"},
              {"runs", runs},
              {"pass", pass}};
    if (surface_err.size() == 2) {
        auto ratio = [](double coarse, double fine) {
            return fine > 0.0 ? json(coarse / fine) : json(nullptr);
        };
        j["refinement"] = {{"factor", refine},
                           {"surface_ratio", ratio(surface_err[0], surface_err[1])},
                           {"final_level_ratio", ratio(final_err[0], final_err[1])}};
        if (final_err[1] > 0.0)
            j["refinement"]["final_level_order"] =
                std::log(final_err[0] / final_err[1]) / std::log(static_cast<double>(refine));
    }
    dump(os, j);
    return pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shape-parameter control of Black-Scholes call prices", "shapectl"};
    app.set_version_flag("--version", "shapectl 0.1.0");
    bool print_schema = false;
    app.add_flag("--schema-version", print_schema, "print the CSV/JSON schema contract and exit");

    std::set<std::string> known;
    std::vector<Command> commands;
    commands.reserve(6);
    auto make = [&](const std::string& name, const std::string& help, bool with_format) -> Command& {
        Command& c = commands.emplace_back();
        c.app = app.add_subcommand(name, help);
        c.inputs = std::make_unique<Inputs>(known);
        c.app->add_option("--config", c.config_path, "JSON file of flag values (flags win)");
        c.app->add_option("--out", c.out_path, "write the result here instead of stdout");
        if (with_format) {
            c.format = "csv";
            c.app->add_option("--format", c.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        add_market(*c.inputs, c.app);
        return c;
    };

    Command& price = make("price", "call price, classical or perturbed", false);
    add_point(*price.inputs, price.app);
    add_scale(*price.inputs, price.app);
    price.action = cmd_price;

    Command& greeks = make("greeks", "classical and perturbed greeks", false);
    add_point(*greeks.inputs, greeks.app);
    add_scale(*greeks.inputs, greeks.app);
    greeks.action = cmd_greeks;

    Command& solve = make("solve-lambda", "calibrate lambda to a Delta shift", false);
    add_point(*solve.inputs, solve.app);
    solve.inputs->add(solve.app, "n0", "number of scaled profiles (default 1)");
    solve.inputs->add(solve.app, "eps", "sign of the perturbation (default +1)");
    solve.inputs->add(solve.app, "target_shift", "absolute shift Delta - Delta_classical");
    solve.inputs->add(solve.app, "eta0", "relative shift in (0, 1)");
    solve.inputs->add(solve.app, "tol", "residual tolerance (default 1e-10)");
    solve.inputs->add(solve.app, "lambda_max", "upper end of the search (default 1e6)");
    solve.action = cmd_solve_lambda;

    ConsistencyOptions consistency_opt;
    Command& consistency = make("consistency", "L2 deviation of the scaled initial data", true);
    consistency.app->add_option("--lambda-list", consistency_opt.lambdas, "comma-separated lambdas")
        ->delimiter(',');
    consistency.app->add_option("--curves-dir", consistency_opt.curves_dir,
                                "write one S,C0,C0_lambda file per lambda here");
    consistency.inputs->add(consistency.app, "n0", "number of scaled profiles (default 1)");
    consistency.inputs->add(consistency.app, "eps", "sign of the perturbation (default +1)");
    consistency.inputs->add(consistency.app, "S_max", "norm taken over S in [E, S_max] (default 2E)");
    consistency.inputs->add(consistency.app, "quad_tol", "quadrature tolerance (default 1e-12)");
    consistency.inputs->add(consistency.app, "curve_S_max", "curves span S in [0, this] (default 2E)");
    consistency.inputs->add(consistency.app, "curve_points", "samples per curve (default 201)");
    consistency.action = [&consistency_opt](Command& c, std::ostream& os) {
        return cmd_consistency(c, consistency_opt, os);
    };

    SurfaceOptions surface_opt;
    Command& surface = make("surface", "price or Delta-difference surface on an (S, t) grid", true);
    surface.app->add_option("--quantity", surface_opt.quantity, "price or delta-diff")
        ->check(CLI::IsMember({"price", "delta-diff"}));
    surface.app->add_option("--S-list", surface_opt.spots, "explicit spot grid")->delimiter(',');
    surface.app->add_option("--t-list", surface_opt.times, "explicit time grid, years")->delimiter(',');
    surface.app->add_option("--envelope", surface_opt.envelope_path, "also write the JSON envelope here");
    add_scale(*surface.inputs, surface.app);
    surface.inputs->add(surface.app, "S_min", "lowest spot (default 50)");
    surface.inputs->add(surface.app, "S_max", "highest spot (default 150)");
    surface.inputs->add(surface.app, "ns", "spot samples (default 51)");
    surface.inputs->add(surface.app, "nt", "time samples i*T/nt, i < nt (default 20)");
    surface.action = [&surface_opt](Command& c, std::ostream& os) { return cmd_surface(c, surface_opt, os); };

    ValidateOptions validate_opt;
    Command& validate = make("validate", "Crank-Nicolson check of the closed forms", false);
    add_scale(*validate.inputs, validate.app);
    validate.app->add_flag("--zero-initial", validate_opt.zero_initial, "solve from zero data");
    validate.app->add_option("--fd-csv", validate_opt.fd_csv_path, "write the base FD solution as t,S,value");
    for (const char* key : {"nx", "n_tau", "x_min", "x_max", "trim", "refine", "threshold"})
        validate.inputs->add(validate.app, key, "");
    validate.action = [&validate_opt](Command& c, std::ostream& os) {
        return cmd_validate(c, validate_opt, os);
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        dump(err, error_json("usage", e.what(), ""));
        return kInvalidInput;
    }

    if (print_schema) {
        dump(out, schema_contract());
        return kOk;
    }
    Command* chosen = nullptr;
    for (Command& c : commands)
        if (c.app->parsed()) chosen = &c;
    if (!chosen) {
        dump(err, error_json("usage", "a subcommand is required", ""));
        return kInvalidInput;
    }

    try {
        if (!chosen->config_path.empty()) {
            std::ifstream f(chosen->config_path);
            if (!f)
                throw Error(ErrorCode::InvalidParams, "cannot read " + chosen->config_path, "config");
            json config;
            try {
                config = json::parse(f);
            } catch (const json::parse_error& e) {
                throw Error(ErrorCode::InvalidParams, e.what(), "config");
            }
            chosen->inputs->merge(config);
        }
        if (chosen->out_path.empty()) return chosen->action(*chosen, out);
        std::ostringstream buffer;
        const int status = chosen->action(*chosen, buffer);
        std::ofstream f(chosen->out_path);
        if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + chosen->out_path, "out");
        f << buffer.str();
        return status;
    } catch (const NoBracketError& e) {
        json j = error_json(to_string(e.code()), e.what(), "target_shift");
        j["max_achievable"] = e.max_achievable();
        dump(err, j);
        return kInfeasible;
    } catch (const Error& e) {
        dump(err, error_json(to_string(e.code()), e.what(), e.field()));
        return kInvalidInput;
    }
}

}  // namespace shapectl::cli
