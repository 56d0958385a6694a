#include "oscbem/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "oscbem/oracle.hpp"
#include "oscbem/solver.hpp"

namespace oscbem {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad numeric value: " + s);
    return v;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section at line " +
                                                      std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section == "run") cfg.runs.emplace_back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        if (section == "geometry") {
            if (key == "kind") cfg.geometry.kind = val;
            else if (key == "radius") cfg.geometry.radius = to_double(val);
            else if (key == "sides") cfg.geometry.sides = (int)to_double(val);
            else if (key == "circumradius") cfg.geometry.circumradius = to_double(val);
            else throw ConfigError("unknown geometry key: " + key);
        } else if (section == "operator") {
            if (key == "kind") cfg.op.kind = val;
            else if (key == "wavenumber") cfg.op.wavenumber = to_double(val);
            else if (key == "two_alpha") cfg.op.two_alpha = to_double(val);
            else if (key == "side") cfg.op.side = val;
            else throw ConfigError("unknown operator key: " + key);
        } else if (section == "basis") {
            if (key == "degree") cfg.degree = (int)to_double(val);
            else if (key == "n") {
                for (const auto& tok : split_ws(val)) cfg.n_list.push_back((int)to_double(tok));
            } else throw ConfigError("unknown basis key: " + key);
        } else if (section == "data") {
            if (key == "kind") cfg.data.kind = val;
            else if (key == "theta") cfg.data.theta = to_double(val);
            else if (key == "source") {
                auto xy = split_ws(val);
                if (xy.size() != 2) throw ConfigError("source needs two coordinates");
                cfg.data.source = {to_double(xy[0]), to_double(xy[1])};
            } else throw ConfigError("unknown data key: " + key);
        } else if (section == "reference") {
            if (key == "kind") cfg.reference.kind = val;
            else if (key == "factor") cfg.reference.factor = (int)to_double(val);
            else if (key == "oversample") cfg.reference.oversample = (int)to_double(val);
            else throw ConfigError("unknown reference key: " + key);
        } else if (section == "metrics") {
            if (key == "sobolev") {
                for (const auto& tok : split_ws(val)) cfg.sobolev_orders.push_back(to_double(tok));
            } else if (key == "field_point") {
                auto xy = split_ws(val);
                if (xy.size() % 2 != 0) throw ConfigError("field_point needs coordinate pairs");
                for (std::size_t i = 0; i < xy.size(); i += 2)
                    cfg.field_points.push_back({to_double(xy[i]), to_double(xy[i + 1])});
            } else throw ConfigError("unknown metrics key: " + key);
        } else if (section == "spectral") {
            if (key == "band_factor") cfg.band_factor = (int)to_double(val);
            else throw ConfigError("unknown spectral key: " + key);
        } else if (section == "output") {
            if (key == "path") cfg.output_path = val;
            else if (key == "format") cfg.format = val;
            else if (key == "timing") cfg.timing = (val == "true" || val == "1");
            else throw ConfigError("unknown output key: " + key);
        } else if (section == "solver") {
            if (key == "threads") cfg.threads = (int)to_double(val);
            else if (key == "quad_tol") cfg.quad_tol = to_double(val);
            else throw ConfigError("unknown solver key: " + key);
        } else if (section == "run") {
            if (cfg.runs.empty()) throw ConfigError("run keys before any [run] section");
            RunConfig& r = cfg.runs.back();
            if (key == "method") r.method = val;
            else if (key == "points") r.points = val;
            else if (key == "m_rule") r.m_rule = val;
            else if (key == "m") r.m = (int)to_double(val);
            else if (key == "j") r.j = (int)to_double(val);
            else if (key == "beta") r.beta = to_double(val);
            else if (key == "shift") r.shift = to_double(val);
            else if (key == "delta") r.delta = to_double(val);
            else if (key == "seeds") {
                for (const auto& tok : split_ws(val))
                    r.seeds.push_back((std::uint64_t)std::stoull(tok));
            } else if (key == "s") r.proj_s = to_double(val);
            else if (key == "label") r.label = val;
            else throw ConfigError("unknown run key: " + key);
        } else {
            throw ConfigError("unknown section: " + section);
        }
    }
    if (cfg.n_list.empty()) throw ConfigError("basis n list is required");
    if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()))
        throw ConfigError("basis n list must be ascending");
    if (cfg.runs.empty()) throw ConfigError("at least one [run] section is required");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

namespace {

BoundaryCurve make_curve(const GeometryConfig& g) {
    if (g.kind == "circle") return BoundaryCurve::circle(g.radius);
    if (g.kind == "kite") return BoundaryCurve::kite();
    if (g.kind == "polygon") return BoundaryCurve::regular_polygon(g.sides, g.circumradius);
    throw ConfigError("unknown geometry kind: " + g.kind);
}

OperatorSpec make_operator(const OperatorConfig& o) {
    if (o.kind == "single_layer") return OperatorSpec::single_layer(o.wavenumber);
    if (o.kind == "double_layer")
        return OperatorSpec::double_layer(o.wavenumber, o.side == "interior"
                                                            ? ProblemSide::Interior
                                                            : ProblemSide::Exterior);
    if (o.kind == "pseudo_differential") return OperatorSpec::pseudo_differential(o.two_alpha);
    throw ConfigError("unknown operator kind: " + o.kind);
}

struct StudyContext {
    BoundaryCurve curve = BoundaryCurve::circle(1.0);
    OperatorSpec op;
    std::function<Complex(double)> data;
    // exact field evaluator (may be empty)
    std::function<Complex(const Vec2&)> exact_field;
    // density reference as Fourier coefficients on a wide band (may be empty)
    bool have_density = false;
    FourierVector density;
    // fallback reference from a fine solve
    bool have_fine = false;
    SplineSpace fine_space = SplineSpace::uniform(1, 4);
    std::vector<Complex> fine_coeffs;
};

std::string run_label(const RunConfig& r) {
    if (!r.label.empty()) return r.label;
    if (r.method == "hs_projection" || r.method == "galerkin" ||
        r.method == "bubnov_galerkin")
        return r.method;
    std::string rule;
    if (r.method == "square") rule = "m=n";
    else if (r.m_rule == "fixed") rule = "m=" + std::to_string(r.m);
    else if (r.m_rule == "linear") rule = "m=" + std::to_string(r.j) + "n";
    else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "m=n^%g", r.beta);
        rule = buf;
    }
    std::string base = r.method + "[" + rule + "]";
    if (r.points == "offset" || r.points == "random" || r.points == "refined")
        base += "[" + r.points + "]";
    return base;
}

int points_for(const RunConfig& r, int n) {
    if (r.method == "square") return n;
    if (r.m_rule == "fixed") {
        if (r.m < n) throw ConfigError("fixed M must be >= N");
        return r.m;
    }
    if (r.m_rule == "linear") return r.j * n;
    if (r.m_rule == "power") return (int)std::ceil(std::pow((double)n, r.beta));
    throw ConfigError("unknown m_rule: " + r.m_rule);
}

CollocationGrid grid_for(const RunConfig& r, int n, int m, std::uint64_t seed) {
    if (r.points == "equispaced") return make_equispaced(m, r.shift);
    if (r.points == "refined") {
        if (m % n != 0) throw ConfigError("refined grid needs M to be a multiple of N");
        return make_refined(n, m / n);
    }
    if (r.points == "offset") return make_offset(n, m, r.delta);
    if (r.points == "random") return make_random(m, seed);
    throw ConfigError("unknown points kind: " + r.points);
}

StudyContext build_context(const ExperimentConfig& cfg) {
    StudyContext ctx;
    ctx.curve = make_curve(cfg.geometry);
    ctx.op = make_operator(cfg.op);
    const double k = cfg.op.wavenumber;

    if (cfg.data.kind == "plane_wave" || cfg.data.kind == "circle_bessel") {
        const double theta = cfg.data.theta;
        const BoundaryCurve curve = ctx.curve;
        ctx.data = [curve, k, theta](double t) {
            Vec2 z = curve.point(t);
            double ph = k * (z.x * std::cos(theta) + z.y * std::sin(theta));
            return Complex(std::cos(ph), std::sin(ph));
        };
    } else if (cfg.data.kind == "interior_source") {
        auto ms = manufactured_exterior_solution(ctx.curve, k, cfg.data.source);
        ctx.data = ms.boundary_data;
        ctx.exact_field = ms.field;
    } else {
        throw ConfigError("unknown data kind: " + cfg.data.kind);
    }

    std::string ref = cfg.reference.kind;
    if (ref == "auto") {
        if (cfg.geometry.kind == "circle" && cfg.op.kind == "single_layer" &&
            cfg.data.kind != "interior_source")
            ref = "circle_bessel";
        else if (cfg.data.kind == "interior_source")
            ref = cfg.sobolev_orders.empty() ? "exact_field" : "fine_solve";
        else if (cfg.op.kind == "double_layer" && cfg.op.side == "interior")
            ref = cfg.sobolev_orders.empty() ? "exact_field" : "fine_solve";
        else
            ref = "fine_solve";
    }

    if (ref == "circle_bessel") {
        const int band = std::max(cfg.band_factor * cfg.n_list.back(), 64);
        auto trace = plane_wave_circle_trace(k, cfg.geometry.radius, cfg.data.theta, band);
        ctx.density = circle_reference(ctx.op, cfg.geometry.radius, trace, 1e-280);
        ctx.have_density = true;
        const OperatorSpec op = ctx.op;
        const double radius = cfg.geometry.radius;
        const FourierVector dens = ctx.density;
        ctx.exact_field = [op, dens, radius](const Vec2& x) {
            return circle_layer_field(op, dens, radius, x);
        };
    } else if (ref == "exact_field" || ref == "fine_solve") {
        if (!ctx.exact_field && cfg.op.side == "interior") {
            const double theta = cfg.data.theta;
            ctx.exact_field = [k, theta](const Vec2& x) {
                double ph = k * (x.x * std::cos(theta) + x.y * std::sin(theta));
                return Complex(std::cos(ph), std::sin(ph));
            };
        }
        if (ref == "fine_solve") {
            const int n_ref = cfg.reference.factor * cfg.n_list.back();
            ctx.fine_space = SplineSpace::uniform(cfg.degree, n_ref);
            auto grid = make_equispaced(cfg.reference.oversample * n_ref,
                                        0.5 / (cfg.reference.oversample * n_ref));
            AssembleOptions ao;
            ao.quad_tol = cfg.quad_tol;
            ao.threads = cfg.threads;
            auto sys = assemble(ctx.op, ctx.curve, TrialBasis(ctx.fine_space), grid, ctx.data, ao);
            auto sol = solve_least_squares(sys);
            ctx.fine_coeffs = sol.coeff_vector();
            ctx.have_fine = true;
            if (!ctx.exact_field) {
                const OperatorSpec op = ctx.op;
                const BoundaryCurve curve = ctx.curve;
                const SplineSpace space = ctx.fine_space;
                const std::vector<Complex> coeffs = ctx.fine_coeffs;
                ctx.exact_field = [op, curve, space, coeffs](const Vec2& x) {
                    return field_eval(op, curve, space, coeffs, x);
                };
            }
        }
    } else if (ref != "none") {
        throw ConfigError("unknown reference kind: " + ref);
    }
    return ctx;
}

std::string format_double(double v) {
    // shortest representation that round-trips
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace

std::vector<ConvergenceRecord> run_study(const ExperimentConfig& cfg) {
    StudyContext ctx = build_context(cfg);
    std::vector<ConvergenceRecord> records;

    for (const RunConfig& run : cfg.runs) {
        std::vector<std::uint64_t> seeds = run.seeds;
        if (seeds.empty()) seeds.push_back(0);
        if (run.points == "random" && run.seeds.empty())
            throw ConfigError("random points require explicit seeds");
        for (std::uint64_t seed : seeds) {
            for (int n : cfg.n_list) {
                auto t0 = std::chrono::steady_clock::now();
                ConvergenceRecord base;
                base.method = run_label(run);
                base.n = n;
                base.seed = seed;
                try {
                    auto space = SplineSpace::uniform(cfg.degree, n);
                    const int band = cfg.band_factor * n;
                    std::vector<Complex> coeffs;
                    double cond = 0.0;
                    CollocationGrid grid;
                    bool have_grid = false;

                    if (run.method == "galerkin" || run.method == "bubnov_galerkin") {
                        GalerkinOptions go;
                        go.quad_tol = cfg.quad_tol;
                        go.threads = cfg.threads;
                        auto sol = run.method == "galerkin"
                                       ? solve_galerkin(ctx.op, ctx.curve, space, ctx.data, go)
                                       : solve_bubnov_galerkin(ctx.op, ctx.curve, space,
                                                               ctx.data, go);
                        coeffs = sol.coeff_vector();
                        cond = sol.condition;
                        base.m = go.nodes_per_dim * n;
                    } else if (run.method == "hs_projection") {
                        if (!ctx.have_density)
                            throw ConfigError("hs_projection needs an exact density reference");
                        ProjectionInfo info;
                        coeffs = hs_projection(ctx.density, space, run.proj_s, &info);
                        cond = info.condition;
                        base.m = n;
                    } else {
                        const int m = points_for(run, n);
                        grid = grid_for(run, n, m, seed);
                        have_grid = true;
                        base.m = grid.size();
                        AssembleOptions ao;
                        ao.quad_tol = cfg.quad_tol;
                        ao.threads = cfg.threads;
                        ao.with_basis_matrix = run.method == "modified";
                        ao.method = run.method == "square" ? MethodTag::SquareCollocation
                                    : run.method == "modified" ? MethodTag::Modified
                                                               : MethodTag::LeastSquares;
                        auto sys = assemble(ctx.op, ctx.curve, TrialBasis(space), grid, ctx.data,
                                            ao);
                        auto sol = run.method == "modified" ? solve_modified(sys)
                                                            : solve_least_squares(sys);
                        coeffs = sol.coeff_vector();
                        cond = sol.condition;
                    }

                    double wall =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                  t0)
                            .count();

                    // Sobolev errors against the density reference
                    if (!cfg.sobolev_orders.empty()) {
                        FourierVector err(band);
                        auto mine = space.to_fourier(coeffs, band);
                        if (ctx.have_density) {
                            err = mine - ctx.density;
                        } else if (ctx.have_fine) {
                            err = mine - ctx.fine_space.to_fourier(ctx.fine_coeffs, band);
                        } else {
                            throw ConfigError("sobolev metrics need a density reference");
                        }
                        for (double s : cfg.sobolev_orders) {
                            ConvergenceRecord rec = base;
                            rec.metric = "sobolev";
                            rec.s_or_point = format_double(s);
                            rec.error = sobolev_norm(err, s);
                            rec.cond = cond;
                            rec.wall_ms = wall;
                            records.push_back(rec);
                        }
                    }
                    for (const Vec2& x : cfg.field_points) {
                        if (!ctx.exact_field)
                            throw ConfigError("field metrics need an exact field reference");
                        ConvergenceRecord rec = base;
                        rec.metric = "field";
                        rec.s_or_point = format_double(x.x) + ";" + format_double(x.y);
                        rec.error =
                            std::abs(field_eval(ctx.op, ctx.curve, space, coeffs, x) -
                                     ctx.exact_field(x));
                        rec.cond = cond;
                        rec.wall_ms = wall;
                        records.push_back(rec);
                    }
                    if (run.points == "random" && have_grid) {
                        ConvergenceRecord rec = base;
                        rec.metric = "diag_d3mn3";
                        rec.error = std::pow(max_spacing(grid), 3) * grid.size() *
                                    std::pow((double)n, 3);
                        rec.cond = cond;
                        rec.wall_ms = wall;
                        records.push_back(rec);
                    }
                } catch (const Error& e) {
                    ConvergenceRecord rec = base;
                    rec.metric = "failed";
                    rec.s_or_point = e.what();
                    records.push_back(rec);
                }
            }
        }
    }
    return records;
}

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw LengthMismatch("slope fit needs aligned samples");
    if (x.size() < 3) throw InsufficientPoints("slope fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double q = (double)x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw InsufficientPoints("slope fit needs positive samples");
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
        syy += b * b;
    }
    SlopeFit fit;
    fit.slope = (q * sxy - sx * sy) / (q * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / q;
    double ss_res = syy - 2 * fit.slope * sxy - 2 * fit.intercept * sy + fit.slope * fit.slope * sxx +
                    2 * fit.slope * fit.intercept * sx + q * fit.intercept * fit.intercept;
    double ss_tot = syy - sy * sy / q;
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

void emit_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out, bool timing) {
    out << "method,N,M,metric,s_or_point,error,cond,seed,wall_ms\n";
    for (const auto& r : records) {
        out << r.method << ',' << r.n << ',' << r.m << ',' << r.metric << ',' << r.s_or_point
            << ',' << format_double(r.error) << ',' << format_double(r.cond) << ',' << r.seed
            << ',' << (timing ? format_double(r.wall_ms) : std::string("0")) << '\n';
    }
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["geometry"] = {{"kind", c.geometry.kind},
                     {"radius", c.geometry.radius},
                     {"sides", c.geometry.sides},
                     {"circumradius", c.geometry.circumradius}};
    j["operator"] = {{"kind", c.op.kind},
                     {"wavenumber", c.op.wavenumber},
                     {"two_alpha", c.op.two_alpha},
                     {"side", c.op.side}};
    j["basis"] = {{"degree", c.degree}, {"n", c.n_list}};
    j["data"] = {{"kind", c.data.kind},
                 {"theta", c.data.theta},
                 {"source", {c.data.source.x, c.data.source.y}}};
    j["reference"] = {{"kind", c.reference.kind},
                      {"factor", c.reference.factor},
                      {"oversample", c.reference.oversample}};
    nlohmann::ordered_json fps = nlohmann::ordered_json::array();
    for (const auto& p : c.field_points) fps.push_back({p.x, p.y});
    j["metrics"] = {{"sobolev", c.sobolev_orders}, {"field_points", fps}};
    j["spectral"] = {{"band_factor", c.band_factor}};
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto& r : c.runs) {
        runs.push_back({{"method", r.method},
                        {"points", r.points},
                        {"m_rule", r.m_rule},
                        {"m", r.m},
                        {"j", r.j},
                        {"beta", r.beta},
                        {"shift", r.shift},
                        {"delta", r.delta},
                        {"seeds", r.seeds},
                        {"s", r.proj_s}});
    }
    j["runs"] = runs;
    return j;
}

}  // namespace

void emit_json(const std::vector<ConvergenceRecord>& records, const ExperimentConfig& config,
               std::ostream& out, bool timing) {
    nlohmann::ordered_json j;
    j["tool"] = tool_version();
    j["config"] = config_json(config);
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        recs.push_back({{"method", r.method},
                        {"n", r.n},
                        {"m", r.m},
                        {"metric", r.metric},
                        {"s_or_point", r.s_or_point},
                        {"error", r.error},
                        {"cond", r.cond},
                        {"seed", r.seed},
                        {"wall_ms", timing ? r.wall_ms : 0.0}});
    }
    j["records"] = recs;
    out << j.dump(2) << '\n';
}

void emit(const std::vector<ConvergenceRecord>& records, const ExperimentConfig& config) {
    if (config.output_path.empty()) throw IoError("output path is empty");
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + config.output_path);
    if (config.format == "csv")
        emit_csv(records, out, config.timing);
    else if (config.format == "json")
        emit_json(records, config, out, config.timing);
    else
        throw ConfigError("unknown output format: " + config.format);
}

}  // namespace oscbem
