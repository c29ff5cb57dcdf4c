#pragma once

#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "shapectl/calibrate.hpp"
#include "shapectl/fd_oracle.hpp"
#include "shapectl/greeks.hpp"
#include "shapectl/market.hpp"
#include "shapectl/profiles.hpp"
#include "shapectl/solution.hpp"

namespace shapectl {

/// Bumped whenever a CSV header or JSON key changes.
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const MarketParams& params);
nlohmann::json to_json(const HeatConstants& constants);
nlohmann::json to_json(const HeatPoint& point);
nlohmann::json to_json(const ScaleSpec& spec);
nlohmann::json to_json(const L2Report& report);
nlohmann::json to_json(const GreeksReport& report);
nlohmann::json to_json(const CalibrationResult& result);
nlohmann::json to_json(const ErrorReport& report);

/// Metadata envelope for a surface; the values travel as CSV.
nlohmann::json surface_envelope(const SolutionSurface& surface);

/// Header "t,S,value", one row per node, t-major.
void write_surface_csv(std::ostream& os, const SolutionSurface& surface);

/// Same schema as write_surface_csv: each (level, node) is mapped back to
/// calendar time and spot, and the heat value to a price.
void write_fd_csv(std::ostream& os, const FdSolution& solution, const MarketParams& params);

/// Header "S,C0,C0_lambda".
void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve);

/// Machine-readable description of every CSV header and JSON key.
nlohmann::json schema_contract();

}  // namespace shapectl
