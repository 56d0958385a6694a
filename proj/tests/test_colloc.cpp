#include <doctest.h>

#include <random>

#include "oscbem/colloc.hpp"
#include "oscbem/oracle.hpp"

using namespace oscbem;

TEST_CASE("refined grid enumerates the mesh refinement") {
    auto g = make_refined(2, 2);
    REQUIRE(g.size() == 4);
    CHECK(g.points[0] == doctest::Approx(0.0));
    CHECK(g.points[1] == doctest::Approx(0.25));
    CHECK(g.points[2] == doctest::Approx(0.5));
    CHECK(g.points[3] == doctest::Approx(0.75));
}

TEST_CASE("refined grid equals the equispaced grid as a set") {
    auto r = make_refined(4, 3);
    auto e = make_equispaced(12);
    REQUIRE(r.size() == e.size());
    for (int i = 0; i < 12; ++i) CHECK(r.points[i] == doctest::Approx(e.points[i]).epsilon(1e-14));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    std::vector<Complex> f(12), g(12);
    for (int i = 0; i < 12; ++i) {
        f[i] = Complex(gauss(rng), gauss(rng));
        g[i] = Complex(gauss(rng), gauss(rng));
    }
    CHECK(std::abs(discrete_inner_product(f, g, r) - discrete_inner_product(f, g, e)) < 1e-15);
}

TEST_CASE("equispaced weights and offset structure") {
    auto g = make_equispaced(4);
    for (double w : g.weights) CHECK(w == doctest::Approx(0.25));
    // half-cell offset: for M = N the points are the mesh midpoints
    auto mid = make_offset(4, 4, 0.5);
    CHECK(mid.points[0] == doctest::Approx(0.125));
    CHECK(mid.points[1] == doctest::Approx(0.375));
    // for M = 2N the set {0.5/N + m/M} wraps onto the full lattice
    auto off = make_offset(4, 8, 0.5);
    CHECK(off.points[0] == doctest::Approx(0.0));
    CHECK(off.points[1] == doctest::Approx(0.125));
}

TEST_CASE("weights are positive and sum to one") {
    std::vector<CollocationGrid> grids = {make_equispaced(7, 0.3), make_refined(5, 3),
                                          make_offset(6, 17, 0.25), make_random(40, 99)};
    for (const auto& g : grids) {
        double sum = 0.0;
        for (double w : g.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("discrete inner product basics") {
    auto g = make_random(25, 7);
    std::vector<Complex> ones(g.size(), 1.0);
    CHECK(std::abs(discrete_inner_product(ones, ones, g) - 1.0) < 1e-13);
    // <f,f> is nonnegative real
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss;
    std::vector<Complex> f(g.size());
    for (auto& v : f) v = Complex(gauss(rng), gauss(rng));
    auto p = discrete_inner_product(f, f, g);
    CHECK(p.real() >= 0.0);
    CHECK(std::abs(p.imag()) < 1e-14 * p.real());
    std::vector<Complex> wrong(3);
    CHECK_THROWS_AS(discrete_inner_product(f, wrong, g), LengthMismatch);
}

TEST_CASE("full aliasing of the M-th mode") {
    const int m = 16;
    auto g = make_equispaced(m);
    std::vector<Complex> ones(m, 1.0), modem(m);
    for (int q = 0; q < m; ++q) {
        double ph = 2 * pi * m * g.points[q];
        modem[q] = Complex(std::cos(ph), std::sin(ph));
    }
    // continuous pairing is 0; the discrete one sees the constant
    CHECK(std::abs(discrete_inner_product(ones, modem, g) - 1.0) < 1e-13);
}

TEST_CASE("max spacing") {
    CHECK(max_spacing(make_equispaced(8)) == doctest::Approx(0.125));
    CollocationGrid g = make_quadrature_grid({0.0, 0.5, 0.6}, {0.3, 0.3, 0.4});
    CHECK(max_spacing(g) == doctest::Approx(0.5));
}

TEST_CASE("expected maximum spacing of random grids") {
    const int m = 1000;
    double mean = 0.0;
    const int reps = 200;
    for (int seed = 1; seed <= reps; ++seed) mean += max_spacing(make_random(m, seed)) / reps;
    double predicted = std::log(double(m - 1)) / double(m - 1);
    CHECK(mean == doctest::Approx(predicted).epsilon(0.20));
}

TEST_CASE("degenerate random grids are rejected") {
    CHECK_THROWS_AS(make_random(3, 1, 4), DegenerateGrid);
}

namespace {

std::vector<FourierVector> probe_family(int band, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<FourierVector> probes;
    for (int i = 0; i < count; ++i) {
        FourierVector f(band);
        for (int m = -band; m <= band; ++m) f.set_coeff(m, Complex(gauss(rng), gauss(rng)));
        probes.push_back(f);
    }
    return probes;
}

double fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int q = (int)x.size();
    for (int i = 0; i < q; ++i) {
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (q * sxy - sx * sy) / (q * sxx - sx * sx);
}

}  // namespace

TEST_CASE("quadrature error decays like M^{-r} on equispaced grids") {
    const double r = 1.5, s = 0.75;
    std::vector<double> ms = {16, 32, 64, 128, 256}, errs;
    for (double m : ms) {
        auto grid = make_equispaced((int)m);
        auto probes = probe_family((int)m / 4, 6, 42);
        errs.push_back(quadrature_error_report(grid, probes, r, s).empirical);
    }
    double slope = fit_loglog(ms, errs);
    CHECK(slope == doctest::Approx(-r).epsilon(0.4 / r));
}

TEST_CASE("quadrature error on random grids follows M d^3") {
    const double r = 2.6, s = 0.75;
    double worst_ratio = 0.0;
    for (int seed = 1; seed <= 50; ++seed) {
        auto grid = make_random(600, seed);
        auto probes = probe_family(24, 4, seed);
        double e = quadrature_error_report(grid, probes, r, s).empirical;
        double bound = grid.size() * std::pow(max_spacing(grid), 3);
        worst_ratio = std::max(worst_ratio, e / bound);
    }
    // empirical constant stays modest across seeds
    CHECK(worst_ratio < 50.0);
}

TEST_CASE("trapezoid exactness on low modes") {
    auto grid = make_equispaced(32);
    auto probes = probe_family(12, 5, 17);
    auto rep = quadrature_error_report(grid, probes, 1.0, 0.6);
    CHECK(rep.empirical < 1e-13);
}

TEST_CASE("aliasing identity on equispaced grids") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    for (int m : {8, 32}) {
        for (int rep = 0; rep < 100; ++rep) {
            FourierVector f(4 * m);
            for (int q = -4 * m; q <= 4 * m; ++q) f.set_coeff(q, Complex(gauss(rng), gauss(rng)));
            // direct trapezoid sum, compensated
            Complex qm = 0.0, comp = 0.0;
            for (int i = 0; i < m; ++i) {
                Complex term = f.eval(double(i) / m) / double(m) - comp;
                Complex next = qm + term;
                comp = (next - qm) - term;
                qm = next;
            }
            Complex integral = f.coeff(0);
            CHECK(std::abs((integral - qm) - aliasing_error(f, m)) <= 1e-13);
        }
    }
}

TEST_CASE("aliasing error of a pure mode") {
    const int m = 12;
    auto f = FourierVector::mode(m, 1.0, 2 * m);
    CHECK(std::abs(aliasing_error(f, m) - Complex(-1.0)) < 1e-15);
    auto low = FourierVector::mode(3, 1.0, m - 1);
    CHECK(std::abs(aliasing_error(low, m)) < 1e-15);
}
