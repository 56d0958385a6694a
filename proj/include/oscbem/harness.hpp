#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oscbem/types.hpp"

namespace oscbem {

struct GeometryConfig {
    std::string kind = "circle";  // circle | kite | polygon
    double radius = 1.0;
    int sides = 5;
    double circumradius = 1.0;
};

struct OperatorConfig {
    std::string kind = "single_layer";  // single_layer | double_layer | pseudo_differential
    double wavenumber = 1.0;
    double two_alpha = -1.0;           // pseudo_differential only
    std::string side = "exterior";     // double_layer only
};

struct DataConfig {
    std::string kind = "plane_wave";  // plane_wave | circle_bessel | interior_source
    double theta = 0.0;
    Vec2 source{0.0, 0.0};
};

struct ReferenceConfig {
    // circle_bessel: exact density/field from the circle symbol
    // exact_field:   plane-wave interior field is exact (sobolev metrics need more)
    // fine_solve:    density from an oversampled solve on a finer mesh
    std::string kind = "auto";  // auto | circle_bessel | exact_field | fine_solve | none
    int factor = 4;             // fine_solve: N_ref = factor * max(N)
    int oversample = 8;         // fine_solve: M_ref = oversample * N_ref
};

struct RunConfig {
    std::string method = "least_squares";
    // least_squares | modified | galerkin | bubnov_galerkin | square | hs_projection
    std::string points = "equispaced";  // equispaced | refined | offset | random
    std::string m_rule = "linear";      // fixed | linear | power
    int m = 0;                          // fixed rule
    int j = 1;                          // linear rule: M = j N
    double beta = 1.0;                  // power rule: M = ceil(N^beta)
    double shift = 0.0;                 // equispaced shift
    double delta = 0.0;                 // offset: points delta/N + m/M
    std::vector<std::uint64_t> seeds;   // random points
    double proj_s = 0.0;                // hs_projection order
    std::string label;                  // CSV method column; defaults to a summary
};

struct ExperimentConfig {
    GeometryConfig geometry;
    OperatorConfig op;
    int degree = 1;
    std::vector<int> n_list;
    DataConfig data;
    ReferenceConfig reference;
    std::vector<double> sobolev_orders;
    std::vector<Vec2> field_points;
    int band_factor = 8;
    std::string output_path;
    std::string format = "csv";
    bool timing = false;
    int threads = 0;
    double quad_tol = 1e-12;
    std::vector<RunConfig> runs;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct ConvergenceRecord {
    std::string method;
    int n = 0;
    int m = 0;
    std::string metric;      // sobolev | field | diag_d3mn3 | failed
    std::string s_or_point;  // order or "x;y"
    double error = 0.0;
    double cond = 0.0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

std::vector<ConvergenceRecord> run_study(const ExperimentConfig& config);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares line through (log x, log y); needs >= 3 positive points.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

void emit_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out,
              bool timing = false);
void emit_json(const std::vector<ConvergenceRecord>& records, const ExperimentConfig& config,
               std::ostream& out, bool timing = false);
/// Writes records to config.output_path in config.format.
void emit(const std::vector<ConvergenceRecord>& records, const ExperimentConfig& config);

inline const char* tool_version() { return "oscbem 0.1.0"; }

}  // namespace oscbem
