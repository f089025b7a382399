#pragma once

#include "hbvp/boundary_function.hpp"
#include "hbvp/direction_solver.hpp"
#include "hbvp/jordan_domain.hpp"
#include "hbvp/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hbvp {

/// Fully resolved run configuration; defaults are materialized.
struct RunConfig {
    std::string problem = "neumann";
    /// Empty for the unit disk, otherwise the radius expression in `a`.
    std::string rho;
    /// "normal" or an expression in theta, x, y.
    std::string nu = "normal";
    std::vector<PieceSpec> phi;
    std::size_t n = 1024;
    double cut = 0.0;
    double rho_sample = 0.0;
    std::vector<double> hom_points;
    std::vector<double> hom_coeffs;
    double d0 = 0.0;
    /// Number of default homogeneous poles for `family`.
    std::size_t k = 2;
    VerifySettings verify;
    std::string field_csv = "field.csv";
    std::string report = "report.txt";
    GridSpec grid;

    nlohmann::json to_json() const;
};

/// Validates and resolves a parsed configuration. Unknown keys, bad types
/// and invalid values throw ConfigError naming the keys.
RunConfig parse_config(const nlohmann::json& doc);

/// Boundary problem assembled from a configuration; ν and φ live on the
/// disk (pulled back for mapped domains), `phi_domain` on the domain.
struct Problem {
    DirectionField nu;
    BoundaryFunction phi;
    BoundaryFunction phi_domain;
    std::shared_ptr<const ConformalMap> map;
    SolverParams params;
    bool neumann = true;
};

Problem build_problem(const RunConfig& config);

HarmonicSolution solve_problem(const Problem& problem, const SolverParams& params);

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hbvp
