#include "oscbem/oracle.hpp"

#include <algorithm>

#include "oscbem/bessel.hpp"
#include "oscbem/detail/lattice.hpp"

namespace oscbem {

Complex omega(double xi, double y, int degree, double two_alpha, long long lattice_cap,
              double* tail_bound) {
    const double beta = degree + 1 - two_alpha;
    if (y == 0.0) {
        if (tail_bound) *tail_bound = 0.0;
        return 0.0;
    }
    double pref = std::pow(std::abs(y), beta);
    Complex acc = 0.0;
    for (long long l = 1; l <= lattice_cap; ++l) {
        double php = 2.0 * pi * l * xi;
        acc += Complex(std::cos(php), std::sin(php)) * std::pow(l + y, -beta);
        acc += Complex(std::cos(php), -std::sin(php)) * std::pow(l - y, -beta);
    }
    if (tail_bound)
        *tail_bound = pref * 2.0 * std::pow((double)lattice_cap, 1.0 - beta) / (beta - 1.0);
    return pref * acc;
}

namespace {

// residue-class sums shared by all nodes xi_q = q/J at fixed (y, J)
struct OmegaTable {
    int j;
    double pref;
    std::vector<double> t;  // T_c = sum_{l ≡ c (J), l != 0} |l+y|^{-beta}

    Complex node(int q) const {
        Complex acc = 0.0;
        for (int c = 0; c < j; ++c) {
            double ph = 2.0 * pi * double(c) * q / j;
            acc += Complex(std::cos(ph), std::sin(ph)) * t[c];
        }
        return pref * acc;
    }
};

OmegaTable make_omega_table(double y, int j, int degree, double two_alpha) {
    const double beta = degree + 1 - two_alpha;
    OmegaTable tab{j, std::pow(std::abs(y), beta), std::vector<double>(j)};
    for (int c = 0; c < j; ++c) tab.t[c] = detail::residue_class_sum(c, j, y, beta);
    return tab;
}

double omega_magnitude_mean(const OmegaTable& tab) {
    double s = 0.0;
    for (int q = 1; q <= tab.j; ++q) s += std::norm(tab.node(q)) / tab.j;
    return s;
}

}  // namespace

Complex omega_at_node(int q, int j, double y, int degree, double two_alpha) {
    if (y == 0.0) return 0.0;
    return make_omega_table(y, j, degree, two_alpha).node(q);
}

double stability_D(double y, int j, int degree, double two_alpha) {
    const double beta = degree + 1 - two_alpha;
    if (y == 0.0) return 1.0;
    auto tab = make_omega_table(y, j, degree, two_alpha);
    double lat = detail::decaying_power_sum(j + y, j, 0, beta) +
                 detail::decaying_power_sum(j - y, j, 0, beta);
    return 1.0 + omega_magnitude_mean(tab) + 2.0 * std::pow(std::abs(y), beta) * lat;
}

double stability_D_from_definition(double y, int j, int degree, double two_alpha) {
    auto tab = make_omega_table(y, j, degree, two_alpha);
    double d = 0.0;
    for (int q = 1; q <= j; ++q) d += std::norm(1.0 + tab.node(q)) / j;
    return d;
}

double error_E(double y, int j, int degree, double two_alpha) {
    const double beta = degree + 1 - two_alpha;
    if (y == 0.0) return 0.0;
    auto tab = make_omega_table(y, j, degree, two_alpha);
    double lat = detail::decaying_power_sum(j + y, j, 0, beta) +
                 detail::decaying_power_sum(j - y, j, 0, beta);
    return std::pow(std::abs(y), beta) * lat + omega_magnitude_mean(tab);
}

double error_E_from_definition(double y, int j, int degree, double two_alpha) {
    auto tab = make_omega_table(y, j, degree, two_alpha);
    Complex e = 0.0;
    for (int q = 1; q <= j; ++q) {
        Complex w = tab.node(q);
        e += w * (1.0 + std::conj(w)) / double(j);
    }
    return e.real();
}

namespace {

double bracket(long long m) { return m == 0 ? 1.0 : std::abs((double)m); }

}  // namespace

ExactErrorCoeffs exact_error_coeffs(const ModelProblem& p) {
    if (!(p.degree > p.two_alpha))
        throw Error("model problem requires the consistency condition d > 2*alpha");
    if (!p.u_hat) throw Error("model problem needs density coefficients");
    const int n = p.n;
    const long long m_total = (long long)p.j * n;
    const double beta = p.degree + 1 - p.two_alpha;

    ExactErrorCoeffs out;
    for (int mu = -(n - 1) / 2; mu <= n / 2; ++mu) out.mu.push_back(mu);
    out.error.resize(out.mu.size());
    out.leading.resize(out.mu.size());
    out.remainder.resize(out.mu.size());
    out.d_values.resize(out.mu.size());
    out.e_values.resize(out.mu.size());

    // Z_N: sum over nonzero k of [kM]^{2a} u_hat(kM)
    Complex zn = 0.0;
    for (int k = 1; k <= p.aliasing_range; ++k) {
        double w = std::pow(bracket((long long)k * m_total), p.two_alpha);
        zn += w * (p.u_hat((long long)k * m_total) + p.u_hat(-(long long)k * m_total));
    }
    out.z_n = zn;

    for (std::size_t idx = 0; idx < out.mu.size(); ++idx) {
        const int mu = out.mu[idx];
        if (mu == 0) {
            out.error[idx] = zn;
            out.leading[idx] = 0.0;
            out.remainder[idx] = zn;
            out.d_values[idx] = 1.0;
            out.e_values[idx] = 0.0;
            continue;
        }
        const double y = double(mu) / n;
        auto tab = make_omega_table(y, p.j, p.degree, p.two_alpha);
        const double ypow = std::pow(std::abs(y), beta);
        double lat = detail::decaying_power_sum(p.j + y, p.j, 0, beta) +
                     detail::decaying_power_sum(p.j - y, p.j, 0, beta);
        double omega_sq = omega_magnitude_mean(tab);
        const double dv = 1.0 + omega_sq + 2.0 * ypow * lat;
        const double ev = ypow * lat + omega_sq;
        out.d_values[idx] = dv;
        out.e_values[idx] = ev;
        out.leading[idx] = -(ev / dv) * p.u_hat(mu);

        const std::vector<double>& class_sum = tab.t;

        Complex r = 0.0;
        for (int k = -p.aliasing_range; k <= p.aliasing_range; ++k) {
            if (k == 0) continue;
            long long m1 = mu + (long long)k * m_total;
            r += std::pow(bracket(m1) / bracket(mu), p.two_alpha) * p.u_hat(m1);
            long long m2 = mu + (long long)k * n;
            int c = ((k % p.j) + p.j) % p.j;
            r += std::pow(bracket(m2) / bracket(mu), p.two_alpha) * p.u_hat(m2) * ypow *
                 class_sum[c];
        }
        out.remainder[idx] = r / dv;
        out.error[idx] = out.leading[idx] + out.remainder[idx];
    }
    return out;
}

double error_norm_lambda(const ExactErrorCoeffs& coeffs, const ModelProblem& p, double s) {
    const int n = p.n;
    double acc = 0.0;
    for (std::size_t idx = 0; idx < coeffs.mu.size(); ++idx) {
        const int mu = coeffs.mu[idx];
        double w;
        if (mu == 0) {
            w = 1.0;
        } else {
            // sum over k ≡ mu (N) of [k]^{2s} (mu/k)^{2(d+1)}
            double expn = 2.0 * (p.degree + 1) - 2.0 * s;
            double lat = detail::decaying_power_sum(double(n + mu), double(n), 0, expn) +
                         detail::decaying_power_sum(double(n - mu), double(n), 0, expn);
            w = std::pow(std::abs((double)mu), 2.0 * s) +
                std::pow(std::abs((double)mu), 2.0 * (p.degree + 1)) * lat;
        }
        acc += w * std::norm(coeffs.error[idx]);
    }
    return std::sqrt(acc);
}

FourierVector synthesize_psi_coeffs(const std::vector<int>& mu, const std::vector<Complex>& values,
                                    int n, int degree, int bandwidth) {
    if (mu.size() != values.size()) throw LengthMismatch("mu/value size mismatch");
    FourierVector out(bandwidth);
    for (std::size_t idx = 0; idx < mu.size(); ++idx) {
        const int m0 = mu[idx];
        if (m0 == 0) {
            out.set_coeff(0, out.coeff(0) + values[idx]);
            continue;
        }
        for (long long k = m0;; k += n) {
            if (k > bandwidth) break;
            if (std::abs(k) <= bandwidth)
                out.set_coeff((int)k, out.coeff((int)k) +
                                          values[idx] * std::pow(double(m0) / k, degree + 1));
        }
        for (long long k = m0 - n;; k -= n) {
            if (k < -bandwidth) break;
            if (std::abs(k) <= bandwidth)
                out.set_coeff((int)k, out.coeff((int)k) +
                                          values[idx] * std::pow(double(m0) / k, degree + 1));
        }
    }
    return out;
}

std::vector<Complex> low_freq_projection(const FourierVector& f, int n, int degree) {
    (void)degree;
    if (2 * f.bandwidth() < n) throw Error("band too short for the low-frequency projection");
    std::vector<Complex> out;
    for (int mu = -(n - 1) / 2; mu <= n / 2; ++mu) out.push_back(f.coeff(mu));
    return out;
}

Complex aliasing_error(const FourierVector& f, int m) {
    Complex acc = 0.0;
    for (int j = 1; (long long)j * m <= f.bandwidth(); ++j)
        acc += f.coeff(j * m) + f.coeff(-j * m);
    return -acc;
}

FourierVector circle_reference(const OperatorSpec& op, double radius, const FourierVector& data,
                               double drop_tol, double symbol_floor) {
    FourierVector u(data.bandwidth());
    for (int m = -data.bandwidth(); m <= data.bandwidth(); ++m) {
        Complex fm = data.coeff(m);
        if (std::abs(fm) <= drop_tol) continue;
        Complex lam = circle_symbol(op, m, radius);
        if (std::abs(lam) < symbol_floor)
            throw NearResonantMode("symbol magnitude below floor at mode " + std::to_string(m));
        u.set_coeff(m, fm / lam);
    }
    return u;
}

FourierVector plane_wave_circle_trace(double k, double radius, double theta, int bandwidth) {
    FourierVector f(bandwidth);
    for (int m = -bandwidth; m <= bandwidth; ++m) {
        // i^m J_m(k a) e^{-i m theta}
        Complex im = std::pow(iu, ((m % 4) + 4) % 4);
        double jm = bessel_j(m, k * radius);
        double ph = -m * theta;
        f.set_coeff(m, im * jm * Complex(std::cos(ph), std::sin(ph)));
    }
    return f;
}

Complex circle_layer_field(const OperatorSpec& op, const FourierVector& density, double radius,
                           const Vec2& x) {
    if (op.kind != OperatorKind::HelmholtzSingleLayer)
        throw Error("circle field series implemented for the single layer");
    const double r = x.norm();
    const double theta = std::atan2(x.y, x.x);
    const double k = op.wavenumber;
    const double rs = std::min(r, radius), rg = std::max(r, radius);
    Complex acc = 0.0;
    for (int m = -density.bandwidth(); m <= density.bandwidth(); ++m) {
        Complex um = density.coeff(m);
        if (um == Complex(0.0)) continue;
        Complex lam = 0.5 * iu * pi * radius * bessel_j(std::abs(m), k * rs) *
                      hankel1(std::abs(m), k * rg);
        acc += um * lam * Complex(std::cos(m * theta), std::sin(m * theta));
    }
    return acc;
}

ManufacturedSolution manufactured_exterior_solution(const BoundaryCurve& curve, double k,
                                                    const Vec2& source) {
    // winding number of the curve around the source
    const int q = 4096;
    double winding = 0.0;
    Vec2 prev = curve.point(0.0) - source;
    for (int i = 1; i <= q; ++i) {
        Vec2 cur = curve.point(double(i % q) / q) - source;
        double cross = prev.x * cur.y - prev.y * cur.x;
        double dot = prev.dot(cur);
        winding += std::atan2(cross, dot);
        prev = cur;
    }
    if (std::abs(winding / (2.0 * pi) - 1.0) > 0.25)
        throw SourceOutside("manufactured source must lie strictly inside the curve");

    ManufacturedSolution ms;
    ms.source = source;
    ms.wavenumber = k;
    ms.boundary_data = [curve, k, source](double t) {
        double r = (curve.point(t) - source).norm();
        return 0.25 * iu * hankel1(0, k * r);
    };
    ms.field = [k, source](const Vec2& x) {
        double r = (x - source).norm();
        return 0.25 * iu * hankel1(0, k * r);
    };
    return ms;
}

Complex smooth_model_coeff(long long m) {
    const double golden = 0.61803398874989484820;
    double t = 0.5 + double(m) * golden;
    t -= std::floor(t);
    double amp = std::pow(1.0 + std::abs((double)m), -4.0);
    double ph = 2.0 * pi * t;
    return amp * Complex(std::cos(ph), std::sin(ph));
}

}  // namespace oscbem
