#include "oscbem/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "oscbem/detail/lattice.hpp"

namespace oscbem {

int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("OSCBEM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

namespace {

void parallel_rows(int rows, int threads, const std::function<void(int)>& work) {
    if (threads <= 1) {
        for (int m = 0; m < rows; ++m) work(m);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mtx;
    std::string err;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int m = next.fetch_add(1); m < rows; m = next.fetch_add(1)) {
                if (failed.load()) return;
                try {
                    work(m);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mtx);
                    if (!failed.exchange(true)) err = e.what();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) throw Error(err);
}

// psi-type values on a refined grid: N x_m = l + q/J exactly, so the mode
// sum collapses onto J residue-class sums per mu (two_alpha = 0 gives the
// plain basis values, the operator order gives V psi_mu).
void assemble_psi_refined(double two_alpha, const PsiBasisSpec& psi,
                          const CollocationGrid& grid, Eigen::MatrixXcd& G) {
    const int n = psi.n;
    const int J = grid.refine_j;
    const auto mus = psi.lambda();
    // S[r][col]
    std::vector<std::vector<double>> S(J, std::vector<double>(n, 0.0));
    for (int col = 0; col < n; ++col) {
        int mu = mus[col];
        if (mu == 0) continue;
        for (int r = 0; r < J; ++r)
            S[r][col] = detail::psi_class_sum(mu, n, r, J, psi.degree, two_alpha);
    }
    for (int m = 0; m < grid.size(); ++m) {
        double x = grid.points[m];
        double frac = n * x - std::floor(n * x);
        int q = (int)std::llround(frac * J) % J;  // exact on the refined lattice
        for (int col = 0; col < n; ++col) {
            int mu = mus[col];
            if (mu == 0) {
                G(m, col) = 1.0;
                continue;
            }
            Complex acc = 0.0;
            for (int r = 0; r < J; ++r) {
                double ph = 2.0 * pi * double(r) * q / J;
                acc += S[r][col] * Complex(std::cos(ph), std::sin(ph));
            }
            double ph = 2.0 * pi * mu * x;
            G(m, col) = acc * Complex(std::cos(ph), std::sin(ph));
        }
    }
}

}  // namespace

DiscreteSystem assemble(const OperatorSpec& op, const BoundaryCurve& curve,
                        const TrialBasis& basis, const CollocationGrid& grid,
                        const std::function<Complex(double)>& data,
                        const AssembleOptions& opts) {
    DiscreteSystem sys;
    sys.method = opts.method;
    const int m = grid.size();
    sys.W = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), m);
    sys.rhs.resize(m);
    for (int i = 0; i < m; ++i) sys.rhs(i) = data(grid.points[i]);

    if (const auto* space = std::get_if<SplineSpace>(&basis)) {
        const int n = space->size();
        sys.G.resize(m, n);
        QuadOptions qo;
        qo.gauss_order = opts.gauss_order;
        qo.target_tol = opts.quad_tol;
        const int threads = thread_count(opts.threads);
        parallel_rows(m, threads, [&](int row) {
            std::vector<Complex> buf(n);
            try {
                boundary_apply_row(op, curve, *space, grid.points[row], buf.data(), qo);
            } catch (const Error& e) {
                throw Error("assembly failed at row " + std::to_string(row) + " (x=" +
                            std::to_string(grid.points[row]) + "): " + e.what());
            }
            for (int col = 0; col < n; ++col) sys.G(row, col) = buf[col];
        });
        if (opts.with_basis_matrix) {
            sys.B.resize(m, n);
            std::vector<double> vals(space->degree() + 1);
            for (int row = 0; row < m; ++row) {
                sys.B.row(row).setZero();
                int first;
                space->nonzero_at(grid.points[row], first, vals.data());
                for (int r = 0; r <= space->degree(); ++r)
                    sys.B(row, (first + r) % n) = vals[r];
            }
        }
        return sys;
    }

    const auto& psi = std::get<PsiBasisSpec>(basis);
    if (op.kind != OperatorKind::PseudoDifferential)
        throw Error("psi trial basis is only available for the pseudo-differential operator");
    const int n = psi.n;
    sys.G.resize(m, n);
    const bool fast = grid.kind == GridKind::Refined && grid.refine_n == n;
    if (fast) {
        assemble_psi_refined(op.two_alpha, psi, grid, sys.G);
    } else {
        PsiBasisSpec direct = psi;
        direct.truncation_blocks = std::max(psi.truncation_blocks, opts.psi_direct_blocks);
        const auto mus = psi.lambda();
        for (int row = 0; row < m; ++row)
            for (int col = 0; col < n; ++col)
                sys.G(row, col) = psi_series(direct, mus[col], grid.points[row], op.two_alpha);
    }
    if (opts.with_basis_matrix) {
        sys.B.resize(m, n);
        if (fast) {
            assemble_psi_refined(0.0, psi, grid, sys.B);
        } else {
            const auto mus = psi.lambda();
            PsiBasisSpec direct = psi;
            direct.truncation_blocks = std::max(psi.truncation_blocks, opts.psi_direct_blocks);
            for (int row = 0; row < m; ++row)
                for (int col = 0; col < n; ++col)
                    sys.B(row, col) = psi_series(direct, mus[col], grid.points[row], 0.0);
        }
    }
    return sys;
}

Solution solve_least_squares(const DiscreteSystem& sys) {
    const int m = sys.rows(), n = sys.cols();
    if (sys.method == MethodTag::SquareCollocation && m != n)
        throw Error("square collocation requires M = N");
    Eigen::VectorXd sw = sys.W.cwiseSqrt();
    Eigen::MatrixXcd A = sw.asDiagonal() * sys.G;
    Eigen::VectorXcd b = sw.asDiagonal() * sys.rhs;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    if (qr.rank() < n)
        throw RankDeficient("weighted system has numerical rank " + std::to_string(qr.rank()) +
                            " < " + std::to_string(n));
    Solution sol;
    sol.coeffs = qr.solve(b);
    double rmax = 0.0, rmin = 1e300;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(qr.matrixR()(i, i));
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    sol.condition = rmax / std::max(rmin, 1e-300);
    sol.condition_warning = sol.condition > 1e10;
    sol.residual = (sw.asDiagonal() * (sys.G * sol.coeffs - sys.rhs)).norm();
    return sol;
}

Solution solve_modified(const DiscreteSystem& sys) {
    if (sys.B.rows() != sys.G.rows()) throw Error("modified solve needs the basis matrix B");
    const int n = sys.cols();
    Eigen::MatrixXcd A = sys.B.adjoint() * sys.W.asDiagonal() * sys.G;
    Eigen::VectorXcd b = sys.B.adjoint() * sys.W.asDiagonal() * sys.rhs;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(n - 1);
    if (!(smin > smax * 1e-14))
        throw SingularSystem("modified system is numerically singular");
    Solution sol;
    sol.coeffs = svd.solve(b);
    sol.condition = smax / smin;
    sol.condition_warning = sol.condition > 1e10;
    Eigen::VectorXd sw = sys.W.cwiseSqrt();
    sol.residual = (sw.asDiagonal() * (sys.G * sol.coeffs - sys.rhs)).norm();
    return sol;
}

CollocationGrid galerkin_quadrature_grid(const SplineSpace& space, const BoundaryCurve& curve,
                                         const GalerkinOptions& opts) {
    std::vector<double> breaks = space.knots();
    const auto& corners = curve.corners();
    breaks.insert(breaks.end(), corners.begin(), corners.end());
    auto panels = split_periodic(std::move(breaks));
    const int per_panel = std::max(1, opts.nodes_per_dim / opts.gauss_order);
    const GaussRule& g = gauss_legendre(opts.gauss_order);
    std::vector<double> pts, wts;
    for (const Panel& panel : panels) {
        for (int sub = 0; sub < per_panel; ++sub) {
            double a = panel.a + (panel.b - panel.a) * sub / per_panel;
            double b = panel.a + (panel.b - panel.a) * (sub + 1) / per_panel;
            double c = 0.5 * (a + b), h = 0.5 * (b - a);
            for (int q = 0; q < opts.gauss_order; ++q) {
                pts.push_back(wrap_unit(c + h * g.nodes[q]));
                wts.push_back(h * g.weights[q]);
            }
        }
    }
    // keep points sorted so downstream consumers can assume grid order
    std::vector<int> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    std::vector<double> sp(pts.size()), sw(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        sp[i] = pts[idx[i]];
        sw[i] = wts[idx[i]];
    }
    return make_quadrature_grid(std::move(sp), std::move(sw));
}

Solution solve_galerkin(const OperatorSpec& op, const BoundaryCurve& curve,
                        const SplineSpace& space, const std::function<Complex(double)>& data,
                        const GalerkinOptions& opts) {
    auto grid = galerkin_quadrature_grid(space, curve, opts);
    AssembleOptions ao;
    ao.with_basis_matrix = true;
    ao.quad_tol = opts.quad_tol;
    ao.gauss_order = 16;
    ao.threads = opts.threads;
    ao.method = MethodTag::Modified;
    auto sys = assemble(op, curve, space, grid, data, ao);
    return solve_modified(sys);
}

Solution solve_bubnov_galerkin(const OperatorSpec& op, const BoundaryCurve& curve,
                               const SplineSpace& space,
                               const std::function<Complex(double)>& data,
                               const GalerkinOptions& opts) {
    auto grid = galerkin_quadrature_grid(space, curve, opts);
    AssembleOptions ao;
    ao.quad_tol = opts.quad_tol;
    ao.gauss_order = 16;
    ao.threads = opts.threads;
    auto sys = assemble(op, curve, space, grid, data, ao);
    return solve_least_squares(sys);
}

}  // namespace oscbem
