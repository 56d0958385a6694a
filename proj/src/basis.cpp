#include "oscbem/basis.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "oscbem/quadrature.hpp"

namespace oscbem {

SplineSpace SplineSpace::uniform(int degree, int n) {
    std::vector<double> knots(n);
    for (int j = 0; j < n; ++j) knots[j] = double(j) / n;
    SplineSpace s = from_knots(degree, std::move(knots));
    s.uniform_ = true;
    return s;
}

SplineSpace SplineSpace::from_knots(int degree, std::vector<double> knots) {
    SplineSpace s;
    s.degree_ = degree;
    s.n_ = (int)knots.size();
    if (degree < 0) throw Error("spline degree must be >= 0");
    if (s.n_ < degree + 2) throw Error("periodic spline space needs at least d+2 knots");
    if (!std::is_sorted(knots.begin(), knots.end()))
        throw Error("knots must be strictly increasing");
    s.knots_ = std::move(knots);
    s.h_max_ = 0.0;
    s.h_min_ = 1.0;
    for (int j = 0; j < s.n_; ++j) {
        double gap = (j + 1 < s.n_ ? s.knots_[j + 1] : s.knots_[0] + 1.0) - s.knots_[j];
        if (gap <= 0.0) throw Error("knots must be strictly increasing on the circle");
        s.h_max_ = std::max(s.h_max_, gap);
        s.h_min_ = std::min(s.h_min_, gap);
    }
    s.uniform_ = (s.h_max_ - s.h_min_) < 1e-14;
    return s;
}

double SplineSpace::knot_ext(int i) const {
    int q = i >= 0 ? i / n_ : -((-i + n_ - 1) / n_);
    int r = i - q * n_;
    return knots_[r] + q;
}

void SplineSpace::nonzero_at(double t, int& first, double* values) const {
    t = wrap_unit(t);
    const int d = degree_;
    // cell index i with knot_i <= t < knot_{i+1}
    int i = int(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin()) - 1;
    if (i < 0) i = n_ - 1;  // t below first knot: wrapped last cell
    double u = t;
    if (t < knots_[0]) u = t + 1.0, i = n_ - 1;

    // Cox-de Boor triangle; values[r] = phi_{i-d+r}(t)
    std::vector<double> left(d + 1), right(d + 1);
    values[0] = 1.0;
    for (int j = 1; j <= d; ++j) {
        left[j] = u - knot_ext(i + 1 - j);
        right[j] = knot_ext(i + j) - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            double temp = values[r] / (right[r + 1] + left[j - r]);
            values[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        values[j] = saved;
    }
    first = ((i - d) % n_ + n_) % n_;
}

double SplineSpace::eval(int n, double t) const {
    const int d = degree_;
    std::vector<double> vals(d + 1);
    int first;
    nonzero_at(t, first, vals.data());
    for (int r = 0; r <= d; ++r)
        if ((first + r) % n_ == ((n % n_) + n_) % n_) return vals[r];
    return 0.0;
}

static double sinc(double u) { return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u; }

Complex SplineSpace::basis_fourier(int n, int m) const {
    if (uniform_) {
        // phi_n = M_{d+1}(N t - n): hat of the cardinal B-spline
        double u = pi * m / double(n_);
        double amp = std::pow(sinc(u), degree_ + 1) / n_;
        double ph = -u * (degree_ + 1) - 2.0 * pi * m * n / double(n_);
        return amp * Complex(std::cos(ph), std::sin(ph));
    }
    // per-cell Gauss over the support, cells subdivided so the mode is resolved
    const int d = degree_;
    Complex acc = 0.0;
    for (int c = 0; c <= d; ++c) {
        double a = knot_ext(n + c), b = knot_ext(n + c + 1);
        int pieces = std::max(1, (int)std::ceil(std::abs(m) * (b - a) / 1.5));
        for (int piece = 0; piece < pieces; ++piece) {
            double pa = a + (b - a) * piece / pieces;
            double pb = a + (b - a) * (piece + 1) / pieces;
            acc += integrate_panels({{pa, pb}}, 20, [&](double t) {
                double ph = -2.0 * pi * m * t;
                return eval(n, wrap_unit(t)) * Complex(std::cos(ph), std::sin(ph));
            });
        }
    }
    return acc;
}

FourierVector SplineSpace::to_fourier(const std::vector<Complex>& a, int bandwidth) const {
    if ((int)a.size() != n_) throw LengthMismatch("coefficient count != space dimension");
    FourierVector out(bandwidth);
    if (uniform_) {
        // DFT of the coefficients, one value per residue class
        std::vector<Complex> dft(n_);
        for (int r = 0; r < n_; ++r) {
            Complex acc = 0.0;
            for (int j = 0; j < n_; ++j) {
                double ph = -2.0 * pi * r * j / double(n_);
                acc += a[j] * Complex(std::cos(ph), std::sin(ph));
            }
            dft[r] = acc;
        }
        for (int m = -bandwidth; m <= bandwidth; ++m) {
            double u = pi * m / double(n_);
            double amp = std::pow(sinc(u), degree_ + 1) / n_;
            double ph = -u * (degree_ + 1);
            int r = ((m % n_) + n_) % n_;
            out.set_coeff(m, amp * Complex(std::cos(ph), std::sin(ph)) * dft[r]);
        }
        return out;
    }
    for (int m = -bandwidth; m <= bandwidth; ++m) {
        Complex acc = 0.0;
        for (int cell = 0; cell < n_; ++cell) {
            double ka = knots_[cell];
            double kb = cell + 1 < n_ ? knots_[cell + 1] : knots_[0] + 1.0;
            int pieces = std::max(1, (int)std::ceil(std::abs(m) * (kb - ka) / 1.5));
            for (int piece = 0; piece < pieces; ++piece) {
                double pa = ka + (kb - ka) * piece / pieces;
                double pb = ka + (kb - ka) * (piece + 1) / pieces;
                acc += integrate_panels({{pa, pb}}, 20, [&](double t) {
                    int first;
                    std::vector<double> vals(degree_ + 1);
                    nonzero_at(wrap_unit(t), first, vals.data());
                    Complex v = 0.0;
                    for (int r = 0; r <= degree_; ++r) v += a[(first + r) % n_] * vals[r];
                    double ph = -2.0 * pi * m * t;
                    return v * Complex(std::cos(ph), std::sin(ph));
                });
            }
        }
        out.set_coeff(m, acc);
    }
    return out;
}

std::vector<int> PsiBasisSpec::lambda() const {
    std::vector<int> out;
    out.reserve(n);
    for (int mu = -(n - 1) / 2; mu <= n / 2; ++mu) out.push_back(mu);
    return out;
}

double PsiBasisSpec::tail_bound(int mu, double two_alpha) const {
    if (mu == 0) return 0.0;
    double expn = degree + 1 - two_alpha;  // term decay |k|^{-expn} * |mu|^{d+1}
    double edge = double(truncation_blocks) * n;
    return 2.0 * std::pow(std::abs((double)mu), degree + 1) * std::pow(edge, 1.0 - expn) /
           ((expn - 1.0) * n);
}

Complex psi_series(const PsiBasisSpec& spec, int mu, double x, double two_alpha) {
    if (!spec.in_lambda(mu)) throw IndexOutOfLambda("mu outside Lambda_N");
    if (mu == 0) return 1.0;
    const long long L = spec.truncation_blocks;
    const int d = spec.degree;
    Complex acc = 0.0;
    for (long long j = -L; j <= L; ++j) {
        double k = mu + j * (double)spec.n;
        double ratio = std::pow(double(mu) / k, d + 1);
        double w = two_alpha == 0.0 ? 1.0 : std::pow(std::abs(k), two_alpha);
        double ph = 2.0 * pi * k * x;
        acc += ratio * w * Complex(std::cos(ph), std::sin(ph));
    }
    return acc;
}

std::vector<Complex> hs_projection(const FourierVector& target, const SplineSpace& space,
                                   double s, ProjectionInfo* info, double condition_bound) {
    const int n = space.size();
    const int d = space.degree();
    const int k = target.bandwidth();
    if (k < n) throw Error("target band must cover the space dimension");
    auto w_s = [&](int m) { return m == 0 ? 1.0 : std::pow(std::abs((double)m), 2.0 * s); };

    if (space.is_uniform()) {
        // residue classes decouple: solve a scalar problem per psi mode
        PsiBasisSpec psi{n, d};
        std::vector<Complex> c(n);  // indexed by residue (mu mod n)
        for (int mu : psi.lambda()) {
            Complex num = 0.0;
            double den = 0.0;
            for (int m = -k; m <= k; ++m) {
                if (((m - mu) % n) != 0) continue;
                double ps = mu == 0 ? (m == 0 ? 1.0 : 0.0) : std::pow(double(mu) / m, d + 1);
                if (ps == 0.0) continue;
                num += w_s(m) * ps * target.coeff(m);
                den += w_s(m) * ps * ps;
            }
            c[((mu % n) + n) % n] = num / den;
        }
        // convert psi coefficients to B-spline coefficients via the residue
        // transfer factor of the uniform-mesh Fourier transform
        std::vector<Complex> a(n);
        std::vector<Complex> rhs(n);
        for (int mu : psi.lambda()) {
            double u = pi * mu / double(n);
            double amp = std::pow(sinc(u), d + 1) / n;
            double ph = -u * (d + 1);
            Complex t_mu = amp * Complex(std::cos(ph), std::sin(ph));
            rhs[((mu % n) + n) % n] = c[((mu % n) + n) % n] / t_mu;
        }
        for (int j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (int r = 0; r < n; ++r) {
                double ph = 2.0 * pi * r * j / double(n);
                acc += rhs[r] * Complex(std::cos(ph), std::sin(ph));
            }
            a[j] = acc / double(n);
        }
        if (info) *info = ProjectionInfo{1.0, false};
        return a;
    }

    // general mesh: Fourier-space Gram system
    Eigen::MatrixXcd phi(2 * k + 1, n);
    for (int q = 0; q < n; ++q)
        for (int m = -k; m <= k; ++m) phi(m + k, q) = space.basis_fourier(q, m);
    Eigen::VectorXd wgt(2 * k + 1);
    for (int m = -k; m <= k; ++m) wgt(m + k) = w_s(m);
    Eigen::MatrixXcd gram = phi.adjoint() * wgt.asDiagonal() * phi;
    Eigen::VectorXcd tv(2 * k + 1);
    for (int m = -k; m <= k; ++m) tv(m + k) = target.coeff(m);
    Eigen::VectorXcd b = phi.adjoint() * wgt.asDiagonal() * tv;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    double cond = es.eigenvalues()(n - 1) / std::max(es.eigenvalues()(0), 1e-300);
    Eigen::VectorXcd a = gram.ldlt().solve(b);
    if (info) *info = ProjectionInfo{cond, cond > condition_bound};
    return {a.data(), a.data() + n};
}

}  // namespace oscbem
