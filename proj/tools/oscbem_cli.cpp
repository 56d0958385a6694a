#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <random>

#include "oscbem/harness.hpp"
#include "oscbem/oracle.hpp"
#include "oscbem/solver.hpp"

using namespace oscbem;

int main(int argc, char** argv) {
    CLI::App app{"oscbem - oversampled least-squares collocation for 2D boundary integral "
                 "equations"};
    app.require_subcommand(1);

    // study
    std::string study_config, study_output;
    auto* study = app.add_subcommand("study", "run a config-driven convergence study");
    study->add_option("config", study_config, "experiment config file")->required();
    study->add_option("-o,--output", study_output, "override the output path");

    // oracle
    int oc_n = 8, oc_j = 2, oc_d = 1, oc_range = 1000;
    double oc_ta = -1.0;
    auto* orc = app.add_subcommand("oracle", "closed-form error table for the model operator");
    orc->add_option("--n", oc_n, "trial dimension N");
    orc->add_option("--j", oc_j, "oversampling factor J (M = J N)");
    orc->add_option("--degree", oc_d, "spline degree d");
    orc->add_option("--two-alpha", oc_ta, "operator order 2*alpha");
    orc->add_option("--range", oc_range, "aliasing sum cap");

    // quad
    std::string q_kind = "equispaced";
    int q_m = 32, q_band = 8, q_count = 6;
    std::uint64_t q_seed = 1;
    double q_r = 1.5, q_s = 0.75;
    auto* quad = app.add_subcommand("quad", "empirical discrete inner product error report");
    quad->add_option("--grid", q_kind, "equispaced | random");
    quad->add_option("--m", q_m, "number of points");
    quad->add_option("--seed", q_seed, "random grid seed");
    quad->add_option("--band", q_band, "probe bandwidth");
    quad->add_option("--count", q_count, "number of probes");
    quad->add_option("--r", q_r, "higher Sobolev order");
    quad->add_option("--s", q_s, "lower Sobolev order");

    // field
    std::string f_config;
    double f_x = 0.0, f_y = 0.0;
    auto* field = app.add_subcommand("field", "solve the first run at the largest N and "
                                              "evaluate the field at a point");
    field->add_option("config", f_config, "experiment config file")->required();
    field->add_option("x", f_x, "field point x")->required();
    field->add_option("y", f_y, "field point y")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (study->parsed()) {
            auto cfg = parse_config_file(study_config);
            if (!study_output.empty()) cfg.output_path = study_output;
            auto records = run_study(cfg);
            if (cfg.output_path.empty()) {
                emit_csv(records, std::cout, cfg.timing);
            } else {
                emit(records, cfg);
                std::cerr << records.size() << " records -> " << cfg.output_path << "\n";
            }
        } else if (orc->parsed()) {
            ModelProblem p;
            p.degree = oc_d;
            p.two_alpha = oc_ta;
            p.n = oc_n;
            p.j = oc_j;
            p.u_hat = smooth_model_coeff;
            p.aliasing_range = oc_range;
            auto ec = exact_error_coeffs(p);
            std::cout << "mu,D,E,leading,remainder,error\n";
            for (std::size_t i = 0; i < ec.mu.size(); ++i) {
                std::printf("%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", ec.mu[i], ec.d_values[i],
                            ec.e_values[i], std::abs(ec.leading[i]), std::abs(ec.remainder[i]),
                            std::abs(ec.error[i]));
            }
            std::printf("# Z_N magnitude: %.17g\n", std::abs(ec.z_n));
            std::printf("# H^{4a-(d+1)} error norm: %.17g\n",
                        error_norm_lambda(ec, p, 2.0 * p.two_alpha - (p.degree + 1)));
        } else if (quad->parsed()) {
            CollocationGrid grid = q_kind == "random" ? make_random(q_m, q_seed)
                                                      : make_equispaced(q_m);
            std::mt19937_64 rng(q_seed ^ 0xabcdef);
            std::normal_distribution<double> gauss;
            std::vector<FourierVector> probes;
            for (int i = 0; i < q_count; ++i) {
                FourierVector f(q_band);
                for (int m = -q_band; m <= q_band; ++m)
                    f.set_coeff(m, Complex(gauss(rng), gauss(rng)));
                probes.push_back(f);
            }
            auto rep = quadrature_error_report(grid, probes, q_r, q_s);
            std::printf("points,%d\nmax_spacing,%.17g\nempirical_E,%.17g\nworst_pair,%d %d\n",
                        grid.size(), max_spacing(grid), rep.empirical, rep.worst_f, rep.worst_g);
        } else if (field->parsed()) {
            auto cfg = parse_config_file(f_config);
            cfg.sobolev_orders.clear();
            cfg.field_points = {{f_x, f_y}};
            cfg.n_list = {cfg.n_list.back()};
            cfg.runs = {cfg.runs.front()};
            cfg.reference.kind = "auto";
            auto records = run_study(cfg);
            for (const auto& r : records) {
                if (r.metric == "failed")
                    std::printf("%s N=%d M=%d failed: %s\n", r.method.c_str(), r.n, r.m,
                                r.s_or_point.c_str());
                else
                    std::printf("%s N=%d M=%d |error at (%g, %g)| = %.17g\n", r.method.c_str(),
                                r.n, r.m, f_x, f_y, r.error);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
