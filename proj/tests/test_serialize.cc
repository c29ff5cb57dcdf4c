#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "shapectl/serialize.hpp"

using namespace shapectl;

namespace {

const MarketParams kBase{0.06, 0.3, 100.0, 60.0 / 365.0};

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(SurfaceCsv, HeaderRowsAndRoundTrip) {
    const std::vector<double> spots{90.0, 100.0, 110.0}, times{0.0, 0.05};
    const SolutionSurface s = price_surface(spots, times, kBase);
    std::ostringstream os;
    write_surface_csv(os, s);
    const auto rows = lines(os.str());
    ASSERT_EQ(rows.size(), 1u + spots.size() * times.size());
    EXPECT_EQ(rows[0], "t,S,value");
    EXPECT_EQ(rows[1].substr(0, 5), "0,90,");
    const double v = std::stod(rows[5].substr(rows[5].rfind(',') + 1));
    EXPECT_EQ(v, s.at(1, 1));
}

TEST(SurfaceEnvelope, KeysAndCounts) {
    const std::vector<double> spots{90.0, 100.0}, times{0.0};
    const auto env = surface_envelope(delta_shift_surface(spots, times, kBase, {3.0, 2, -1}));
    EXPECT_EQ(env["schema_version"], kSchemaVersion);
    EXPECT_EQ(env["quantity"], "delta_shift");
    EXPECT_EQ(env["rows"], 2u);
    EXPECT_EQ(env["scale"]["n0"], 2);
    EXPECT_EQ(env["csv_header"], "t,S,value");
    EXPECT_TRUE(surface_envelope(price_surface(spots, times, kBase))["scale"].is_null());
}

TEST(FdCsv, SameSchemaMappedToPrices) {
    const double k = derive_constants(kBase).k;
    const FdGrid grid{-1.0, 1.0, 5, 2, kBase.tau_max()};
    const FdSolution sol = solve_heat_cn([k](double x) { return heat_payoff(x, k); }, grid, call_boundary(k));
    std::ostringstream os;
    write_fd_csv(os, sol, kBase);
    const auto rows = lines(os.str());
    ASSERT_EQ(rows.size(), 1u + 5 * 3);
    EXPECT_EQ(rows[0], "t,S,value");
    // Level 0 is expiry: t = T and the value is the payoff max(S - E, 0).
    double t, s, v;
    char c;
    std::istringstream(rows[5]) >> t >> c >> s >> c >> v;
    EXPECT_NEAR(t, kBase.maturity, 1e-15);
    EXPECT_NEAR(s, 100.0 * std::exp(1.0), 1e-10);
    EXPECT_NEAR(v, s - 100.0, 1e-10);
    std::istringstream(rows.back()) >> t >> c >> s >> c >> v;
    EXPECT_NEAR(t, 0.0, 1e-15);
}

TEST(CurveCsv, Header) {
    const std::vector<double> spots{0.0, 100.0, 150.0};
    std::ostringstream os;
    write_curve_csv(os, initial_condition_curve(spots, {10.0, 1, 1}, kBase));
    const auto rows = lines(os.str());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "S,C0,C0_lambda");
    EXPECT_EQ(rows[1], "0,0,0");
}

TEST(Json, ReportsCarryUnits) {
    const auto g = to_json(classical_greeks({100.0, 0.05}, kBase));
    EXPECT_EQ(g["variant"], "classical");
    EXPECT_TRUE(g["units"].contains("vega"));
    EXPECT_FALSE(g.contains("derived"));
    const auto p = to_json(perturbed_greeks({100.0, 0.05}, kBase, {3.0, 1, 1}));
    EXPECT_EQ(p["variant"], "perturbed");
    EXPECT_TRUE(p["derived"].contains("rho"));
    const auto m = to_json(kBase);
    EXPECT_EQ(m["E"], 100.0);
}

TEST(Json, SchemaContractListsEveryCsv) {
    const auto contract = schema_contract();
    EXPECT_EQ(contract["csv"].size(), 3u);
    EXPECT_EQ(contract["json"]["error"].size(), 3u);
}
