#include <doctest.h>

#include <random>

#include "oscbem/basis.hpp"

using namespace oscbem;

namespace {

// Convolution oracle: cardinal B-spline M_p by the standard recursion.
double cardinal_bspline(int p, double u) {
    if (p == 1) return (u >= 0.0 && u < 1.0) ? 1.0 : 0.0;
    return (u * cardinal_bspline(p - 1, u) + (p - u) * cardinal_bspline(p - 1, u - 1.0)) /
           (p - 1);
}

std::vector<Complex> random_coeffs(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Complex> a(n);
    for (auto& v : a) v = Complex(gauss(rng), gauss(rng));
    return a;
}

}  // namespace

TEST_CASE("hat values at nodes") {
    auto s = SplineSpace::uniform(1, 4);
    // phi_n peaks at knot n+1 with value 1
    CHECK(s.eval(0, 0.25) == doctest::Approx(1.0));
    CHECK(s.eval(0, 0.0) == doctest::Approx(0.0));
    CHECK(s.eval(3, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("uniform splines match the convolution oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int d : {1, 2, 3}) {
        auto s = SplineSpace::uniform(d, 8);
        for (int rep = 0; rep < 50; ++rep) {
            double t = uni(rng);
            for (int n = 0; n < 8; ++n) {
                double expect = 0.0;
                for (int per = -1; per <= 1; ++per)
                    expect += cardinal_bspline(d + 1, 8 * (t + per) - n);
                CHECK(s.eval(n, t) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
    // degree 2: value 1/2 at interior knots of the support
    auto s2 = SplineSpace::uniform(2, 8);
    CHECK(s2.eval(0, 1.0 / 8) == doctest::Approx(0.5));
    CHECK(s2.eval(0, 2.0 / 8) == doctest::Approx(0.5));
}

TEST_CASE("partition of unity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<SplineSpace> spaces = {SplineSpace::uniform(1, 8), SplineSpace::uniform(2, 9),
                                       SplineSpace::uniform(3, 16)};
    // rho-quasiuniform mesh
    std::vector<double> knots;
    for (int j = 0; j < 12; ++j) knots.push_back((j + 0.35 * std::sin(2.1 * j)) / 12.0);
    std::sort(knots.begin(), knots.end());
    spaces.push_back(SplineSpace::from_knots(2, knots));
    for (const auto& s : spaces) {
        for (int rep = 0; rep < 1000; ++rep) {
            double t = uni(rng);
            std::vector<double> vals(s.degree() + 1);
            int first;
            s.nonzero_at(t, first, vals.data());
            double sum = 0.0;
            for (double v : vals) sum += v;
            REQUIRE(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("hat transform against direct trapezoid analysis") {
    // closed form vs fourier_coefficients of the sampled hat; the trapezoid
    // error is O(Q^-2) for the kinked integrand, so oversample hard
    auto s = SplineSpace::uniform(1, 4);
    auto hat = [&](double t) { return Complex(s.eval(1, t)); };
    auto numeric = fourier_coefficients(hat, 4, 30000);
    for (int m = -4; m <= 4; ++m)
        CHECK(std::abs(numeric.coeff(m) - s.basis_fourier(1, m)) < 1e-10);
    CHECK(std::abs(s.basis_fourier(1, 4)) < 1e-16);  // sinc^2 zero at m = N
}

TEST_CASE("uniform fourier closed form against the quadrature route") {
    // a hair of mesh jitter forces the general quadrature path
    const int n = 4;
    std::vector<double> knots = {0.0, 0.25, 0.5, 0.75};
    knots[2] += 1e-13;
    auto exact = SplineSpace::uniform(1, n);
    auto quad = SplineSpace::from_knots(1, knots);
    REQUIRE(!quad.is_uniform());
    for (int m : {0, 1, 2, 3, 4, 7}) {
        CHECK(std::abs(exact.basis_fourier(1, m) - quad.basis_fourier(1, m)) < 1e-10);
    }
    // m = N: the sinc^2 factor vanishes
    CHECK(std::abs(exact.basis_fourier(1, 4)) < 1e-16);
}

TEST_CASE("spline transform of the constant") {
    for (auto s : {SplineSpace::uniform(1, 6), SplineSpace::uniform(2, 8)}) {
        std::vector<Complex> ones(s.size(), 1.0);
        auto f = s.to_fourier(ones, 12);
        CHECK(std::abs(f.coeff(0) - 1.0) < 1e-12);
        for (int m = 1; m <= 12; ++m) {
            CHECK(std::abs(f.coeff(m)) < 1e-12);
            CHECK(std::abs(f.coeff(-m)) < 1e-12);
        }
    }
}

TEST_CASE("fourier recurrence across residue classes") {
    auto s = SplineSpace::uniform(1, 8);
    auto a = random_coeffs(8, 21);
    auto f = s.to_fourier(a, 64);
    const int d = 1;
    for (int mu = -3; mu <= 4; ++mu) {
        if (mu == 0) continue;
        Complex base = std::pow((double)mu, d + 1) * f.coeff(mu);
        for (int k = mu - 32; k <= mu + 32; k += 8) {
            if (k == mu || k == 0 || std::abs(k) > 64) continue;
            CHECK(std::abs(std::pow((double)k, d + 1) * f.coeff(k) - base) < 1e-10);
        }
    }
}

TEST_CASE("coefficient decay of splines") {
    auto s = SplineSpace::uniform(2, 8);
    auto a = random_coeffs(8, 22);
    auto f = s.to_fourier(a, 256);
    double c0 = 0.0;
    for (int m = 8; m <= 32; ++m) c0 = std::max(c0, std::abs(f.coeff(m)) * std::pow(m, 3.0));
    for (int m = 33; m <= 256; ++m)
        CHECK(std::abs(f.coeff(m)) * std::pow((double)m, 3.0) <= 4.0 * c0 + 1e-12);
}

TEST_CASE("psi basis basics") {
    PsiBasisSpec spec{8, 1, 64};
    CHECK(std::abs(eval_psi(spec, 0, 0.37) - 1.0) < 1e-15);
    CHECK_THROWS_AS(eval_psi(spec, 5, 0.1), IndexOutOfLambda);
    CHECK(spec.lambda().size() == 8);

    // quasi-periodicity within the truncation tolerance
    PsiBasisSpec fine{8, 1, 4096};
    for (int mu : {1, -2, 4}) {
        Complex lhs = eval_psi(fine, mu, 0.3 + 2.0 / 8);
        Complex rhs = std::exp(2.0 * pi * iu * (double)mu * 2.0 / 8.0) * eval_psi(fine, mu, 0.3);
        CHECK(std::abs(lhs - rhs) < 10 * fine.tail_bound(mu) + 1e-12);
    }
}

TEST_CASE("psi lattice value by brute force partial sums") {
    // mu=1, N=2, d=1 at x=0: sum over odd k of 1/k^2 = pi^2/4
    PsiBasisSpec spec{2, 1, 2000000};
    Complex v = eval_psi(spec, 1, 0.0);
    CHECK(std::abs(v - pi * pi / 4.0) < 1e-5);
    // brute-force partial sums with Richardson-style tail estimate
    double s_direct = 0.0;
    const long long L = 4000;
    for (long long k = 1; k <= L; k += 2) s_direct += 2.0 / double(k * k);
    double tail = 2.0 / (2.0 * L);  // integral estimate of the odd-lattice tail
    CHECK(std::abs(s_direct + tail - pi * pi / 4.0) < 1e-6);
    CHECK(std::abs(v - (s_direct + tail)) < 1e-5);
}

TEST_CASE("projection idempotence") {
    for (double s : {0.0, -1.0, 2.0}) {
        auto space = SplineSpace::uniform(1, 8);
        auto a = random_coeffs(8, 33);
        auto target = space.to_fourier(a, 96);
        auto back = hs_projection(target, space, s);
        for (int i = 0; i < 8; ++i) CHECK(std::abs(back[i] - a[i]) < 1e-10);
    }
}

TEST_CASE("projection on general meshes agrees with the uniform route") {
    std::vector<double> knots;
    for (int j = 0; j < 8; ++j) knots.push_back(j / 8.0);
    auto uni = SplineSpace::uniform(1, 8);
    knots[3] += 1e-13;  // forces the Gram path
    auto gen = SplineSpace::from_knots(1, knots);
    FourierVector target(48);
    target.set_coeff(2, 1.0);
    target.set_coeff(-1, 0.5 * iu);
    auto pu = hs_projection(target, uni, 0.0);
    ProjectionInfo info;
    auto pg = hs_projection(target, gen, 0.0, &info);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(pu[i] - pg[i]) < 1e-8);
    CHECK(info.condition > 1.0);
}

TEST_CASE("gram route reports ill conditioning") {
    // strongly negative order on a jittered mesh: the assembled Gram is
    // numerically terrible and the projection says so without failing
    std::vector<double> knots;
    for (int j = 0; j < 24; ++j) knots.push_back(j / 24.0);
    knots[5] += 1e-13;
    auto space = SplineSpace::from_knots(1, knots);
    FourierVector target(48);
    target.set_coeff(1, 1.0);
    ProjectionInfo info;
    auto a = hs_projection(target, space, -4.0, &info, 1e8);
    CHECK(a.size() == 24);
    CHECK(info.condition > 1e8);
    CHECK(info.ill_conditioned);
}

namespace {

double fit_loglog(const std::vector<double>& n, const std::vector<double>& e) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int q = (int)n.size();
    for (int i = 0; i < q; ++i) {
        double x = std::log(n[i]), y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (q * sxy - sx * sy) / (q * sxx - sx * sx);
}

}  // namespace

TEST_CASE("projection error rates") {
    // L2 projection of a single mode decays like N^{-(d+1)}
    std::vector<double> ns = {8, 16, 32, 64}, errs;
    for (double n : ns) {
        auto space = SplineSpace::uniform(1, (int)n);
        auto target = FourierVector::mode(3, 1.0, 8 * (int)n);
        auto a = hs_projection(target, space, 0.0);
        auto diff = space.to_fourier(a, 8 * (int)n) - target;
        errs.push_back(sobolev_norm(diff, 0.0));
    }
    double slope = fit_loglog(ns, errs);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.15));

    // H^{-4} projection of a smooth target decays like N^{-6}
    errs.clear();
    std::vector<double> ns2 = {16, 32, 64, 128};
    for (double n : ns2) {
        auto space = SplineSpace::uniform(1, (int)n);
        const int band = 8 * (int)n;
        FourierVector target(band);
        for (int m = -band; m <= band; ++m)
            target.set_coeff(m, std::pow(1.0 + std::abs(m), -6.0) *
                                    Complex(std::cos(0.7 * m), std::sin(0.7 * m)));
        auto a = hs_projection(target, space, -4.0);
        auto diff = space.to_fourier(a, band) - target;
        errs.push_back(sobolev_norm(diff, -4.0));
    }
    slope = fit_loglog(ns2, errs);
    CHECK(slope > -6.5);
    CHECK(slope < -5.5);
}

TEST_CASE("inverse property constant is stable") {
    double cmin = 1e300, cmax = 0.0;
    for (int n : {8, 16, 32, 64, 128}) {
        auto space = SplineSpace::uniform(1, n);
        double h = space.mesh_size();
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_coeffs(n, 100 + rep);
            auto f = space.to_fourier(a, 8 * n);
            double ratio = sobolev_norm(f, 0.0) / sobolev_norm(f, -1.0);
            worst = std::max(worst, ratio * h);
        }
        cmin = std::min(cmin, worst);
        cmax = std::max(cmax, worst);
    }
    CHECK(cmax / cmin < 10.0);
}
