#include "oscbem/colloc.hpp"

#include <algorithm>
#include <random>

namespace oscbem {

static void finish_grid(CollocationGrid& g) {
    std::sort(g.points.begin(), g.points.end());
    const int m = (int)g.points.size();
    if (m < 1) throw DegenerateGrid("empty grid");
    g.weights.resize(m);
    for (int j = 0; j < m; ++j) {
        double next = j + 1 < m ? g.points[j + 1] : g.points[0] + 1.0;
        double prev = j > 0 ? g.points[j - 1] : g.points[m - 1] - 1.0;
        g.weights[j] = 0.5 * (next - prev);
        if (g.weights[j] <= 0.0) throw DegenerateGrid("zero gap between collocation points");
    }
}

CollocationGrid make_equispaced(int m, double shift) {
    CollocationGrid g;
    g.kind = GridKind::Equispaced;
    g.points.resize(m);
    for (int j = 0; j < m; ++j) g.points[j] = wrap_unit(shift + double(j) / m);
    finish_grid(g);
    return g;
}

CollocationGrid make_refined(int n, int j) {
    if (n < 1 || j < 1) throw DegenerateGrid("refined grid needs N >= 1, J >= 1");
    CollocationGrid g;
    g.kind = GridKind::Refined;
    g.refine_n = n;
    g.refine_j = j;
    g.points.reserve((std::size_t)n * j);
    for (int l = 1; l <= n; ++l)
        for (int q = 1; q <= j; ++q)
            g.points.push_back(wrap_unit((l + double(q) / j) / n));
    finish_grid(g);
    return g;
}

CollocationGrid make_offset(int n, int m, double delta) {
    CollocationGrid g;
    g.kind = GridKind::Offset;
    g.points.resize(m);
    for (int q = 1; q <= m; ++q) g.points[q - 1] = wrap_unit(delta / n + double(q) / m);
    finish_grid(g);
    return g;
}

CollocationGrid make_random(int m, std::uint64_t seed, int min_points) {
    CollocationGrid g;
    g.kind = GridKind::Random;
    g.seed = seed;
    std::mt19937_64 rng(seed);
    g.points.resize(m);
    for (int q = 0; q < m; ++q) g.points[q] = double(rng() >> 11) * 0x1p-53;
    std::sort(g.points.begin(), g.points.end());
    // merge near-coincident points; trapezoid weights blow up otherwise
    std::vector<double> kept;
    kept.reserve(m);
    for (double p : g.points)
        if (kept.empty() || p - kept.back() > 1e-12) kept.push_back(p);
    if (kept.size() > 1 && (kept.front() + 1.0 - kept.back()) <= 1e-12) kept.pop_back();
    g.points = std::move(kept);
    if ((int)g.points.size() < min_points)
        throw DegenerateGrid("random grid degenerated below minimum point count");
    finish_grid(g);
    return g;
}

CollocationGrid make_quadrature_grid(std::vector<double> points, std::vector<double> weights) {
    if (points.size() != weights.size()) throw LengthMismatch("points/weights size mismatch");
    CollocationGrid g;
    g.kind = GridKind::Quadrature;
    g.points = std::move(points);
    g.weights = std::move(weights);
    return g;
}

Complex discrete_inner_product(const std::vector<Complex>& f, const std::vector<Complex>& g,
                               const CollocationGrid& grid) {
    if ((int)f.size() != grid.size() || (int)g.size() != grid.size())
        throw LengthMismatch("sample arrays must align with grid points");
    Complex acc = 0.0;
    for (int j = 0; j < grid.size(); ++j) acc += grid.weights[j] * std::conj(f[j]) * g[j];
    return acc;
}

double max_spacing(const CollocationGrid& grid) {
    const int m = grid.size();
    double d = 0.0;
    for (int j = 0; j < m; ++j) {
        double next = j + 1 < m ? grid.points[j + 1] : grid.points[0] + 1.0;
        d = std::max(d, next - grid.points[j]);
    }
    return d;
}

QuadErrorReport quadrature_error_report(const CollocationGrid& grid,
                                        const std::vector<FourierVector>& probes, double r,
                                        double s) {
    QuadErrorReport rep;
    const int np = (int)probes.size();
    // sample every probe once
    std::vector<std::vector<Complex>> samples(np);
    for (int i = 0; i < np; ++i) {
        samples[i].resize(grid.size());
        for (int q = 0; q < grid.size(); ++q) samples[i][q] = probes[i].eval(grid.points[q]);
    }
    std::vector<double> nr(np), ns(np);
    for (int i = 0; i < np; ++i) {
        nr[i] = sobolev_norm(probes[i], r);
        ns[i] = sobolev_norm(probes[i], s);
    }
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < np; ++j) {
            Complex exact = duality_pairing(probes[i], probes[j]);
            Complex disc = discrete_inner_product(samples[i], samples[j], grid);
            double denom = nr[i] * ns[j] + ns[i] * nr[j];
            if (denom <= 0.0) continue;
            double e = std::abs(exact - disc) / denom;
            if (e > rep.empirical) {
                rep.empirical = e;
                rep.worst_f = i;
                rep.worst_g = j;
            }
        }
    }
    return rep;
}

}  // namespace oscbem
