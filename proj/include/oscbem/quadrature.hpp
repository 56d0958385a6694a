#pragma once

#include <functional>
#include <vector>

#include "oscbem/types.hpp"

namespace oscbem {

struct GaussRule {
    std::vector<double> nodes;    // on (-1,1)
    std::vector<double> weights;  // sum = 2
};

/// p-point Gauss-Legendre rule, cached per order.
const GaussRule& gauss_legendre(int p);

struct Panel {
    double a;
    double b;
};

/// Splits [0,1) at the given breakpoints (wrapped into [0,1)) and returns
/// panels ordered along the circle starting from the smallest breakpoint.
std::vector<Panel> split_periodic(std::vector<double> breaks);

/// Refines panels toward `s` with dyadic grading so that integrands with a
/// log singularity at s are resolved to absolute accuracy ~`tol` by a fixed
/// Gauss order on each panel. `s` must be one of the panel endpoints after
/// split_periodic has been applied with s included in the breaks.
std::vector<Panel> grade_toward(const std::vector<Panel>& panels, double s, double tol);

/// Subdivides panels until their width is below `dist_fn(panel midpoint)`,
/// used to keep a nearby (off-panel) singularity outside the Gauss
/// convergence ellipse.
std::vector<Panel> refine_by_distance(const std::vector<Panel>& panels,
                                      const std::function<double(double, double)>& max_width);

/// Integrates f over the panels with p-point Gauss per panel.
Complex integrate_panels(const std::vector<Panel>& panels, int p,
                         const std::function<Complex(double)>& f);

}  // namespace oscbem
