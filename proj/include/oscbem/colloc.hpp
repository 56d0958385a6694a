#pragma once

#include <cstdint>
#include <vector>

#include "oscbem/spectral.hpp"
#include "oscbem/types.hpp"

namespace oscbem {

enum class GridKind { Equispaced, Refined, Offset, Random, Quadrature };

/// Sorted collocation points in [0,1) with periodic trapezoid weights
/// w_m = (x_{m+1} - x_{m-1})/2 (Quadrature grids carry their own weights).
struct CollocationGrid {
    GridKind kind = GridKind::Equispaced;
    std::vector<double> points;
    std::vector<double> weights;
    int refine_n = 0;
    int refine_j = 0;
    std::uint64_t seed = 0;

    int size() const { return (int)points.size(); }
};

CollocationGrid make_equispaced(int m, double shift = 0.0);
/// Points (l + j/J)/N for l=1..N, j=1..J, reduced mod 1; M = J*N.
CollocationGrid make_refined(int n, int j);
/// Points delta/N + m/M reduced mod 1.
CollocationGrid make_offset(int n, int m, double delta);
/// M iid uniform draws from a seeded mt19937_64, sorted; points closer than
/// 1e-12 are merged. Throws DegenerateGrid when fewer than min_points remain.
CollocationGrid make_random(int m, std::uint64_t seed, int min_points = 2);
/// Explicit points/weights (composite quadrature rules).
CollocationGrid make_quadrature_grid(std::vector<double> points, std::vector<double> weights);

Complex discrete_inner_product(const std::vector<Complex>& f, const std::vector<Complex>& g,
                               const CollocationGrid& grid);

/// Periodic maximum gap d(Delta_M).
double max_spacing(const CollocationGrid& grid);

struct QuadErrorReport {
    double empirical = 0.0;  // sup over probe pairs; lower bound on E_{r,s}
    int worst_f = -1;
    int worst_g = -1;
};

QuadErrorReport quadrature_error_report(const CollocationGrid& grid,
                                        const std::vector<FourierVector>& probes, double r,
                                        double s);

}  // namespace oscbem
