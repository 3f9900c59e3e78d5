#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "momentopt/model.hpp"

namespace momentopt::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDensityHeader = "r,u,du_dr,lambda,theta";

/// Columns of density.csv.
struct DensityTable {
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> lambda;
    std::vector<double> theta;
};

DensityTable table_of(const SolutionProfile& profile);

/// %.17g, comma separated, LF endings, header first.
std::string format_density_csv(const DensityTable& table);
void write_density_csv(const std::string& path, const SolutionProfile& profile);

/// Strict reader: exact header, five finite fields per row, final LF, at least
/// three rows. Throws Error(MalformedInput) otherwise.
DensityTable parse_density_csv(const std::string& text);
DensityTable read_density_csv(const std::string& path);

/// Rebuilds a profile from the table; xi = ln(lambda), or -inf where lambda
/// is below the normal double range and its logarithm is not recoverable.
SolutionProfile profile_from_table(DensityTable table, double epsilon, double c_const);

/// Oracle density: header "r,u".
void write_oracle_csv(const std::string& path, const OracleResult& oracle);

Json report_json(const EnergyReport& report);

/// Non-finite numbers become null.
Json number_or_null(double v);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& doc);
std::string read_text(const std::string& path);

}  // namespace momentopt::cli
