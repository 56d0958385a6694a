#include "oscbem/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace oscbem {

static GaussRule compute_gauss(int p) {
    GaussRule r;
    r.nodes.resize(p);
    r.weights.resize(p);
    // Newton iteration on Legendre polynomials, symmetric in the node index.
    for (int i = 0; i < (p + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (p + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= p; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = p * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing step after convergence
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= p; ++j) {
                    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = p * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.nodes[p - 1 - i] = x;
        r.weights[i] = w;
        r.weights[p - 1 - i] = w;
    }
    if (p % 2 == 1) r.nodes[p / 2] = 0.0;
    return r;
}

const GaussRule& gauss_legendre(int p) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, compute_gauss(p)).first;
    return it->second;
}

std::vector<Panel> split_periodic(std::vector<double> breaks) {
    for (double& b : breaks) b = wrap_unit(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 breaks.end());
    if (breaks.empty()) breaks.push_back(0.0);
    std::vector<Panel> panels;
    panels.reserve(breaks.size());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        panels.push_back({breaks[i], breaks[i + 1]});
    panels.push_back({breaks.back(), breaks.front() + 1.0});
    return panels;
}

std::vector<Panel> grade_toward(const std::vector<Panel>& panels, double s, double tol) {
    // The innermost sliver of width delta contributes at most
    // delta*(|log delta|+1)*max|F|; it is dropped once below tol. The floor
    // keeps ladder nodes representable away from s.
    double delta = std::max(tol / 40.0, 4e-15);
    std::vector<Panel> out;
    s = wrap_unit(s);
    std::vector<Panel> work;
    for (const Panel& p : panels) {
        // a single full-circle panel touches s at both ends
        bool both = periodic_dist(wrap_unit(p.a), s) < 1e-14 &&
                    periodic_dist(wrap_unit(p.b), s) < 1e-14;
        if (both) {
            double mid = 0.5 * (p.a + p.b);
            work.push_back({p.a, mid});
            work.push_back({mid, p.b});
        } else {
            work.push_back(p);
        }
    }
    for (const Panel& p : work) {
        bool starts_at_s = periodic_dist(wrap_unit(p.a), s) < 1e-14;
        bool ends_at_s = periodic_dist(wrap_unit(p.b), s) < 1e-14;
        double w = p.b - p.a;
        if (!starts_at_s && !ends_at_s) {
            out.push_back(p);
            continue;
        }
        int levels = std::max(1, (int)std::ceil(std::log2(w / delta)));
        if (starts_at_s) {
            // ladder [a + w 2^-l-1, a + w 2^-l], finest first sliver dropped
            for (int l = levels - 1; l >= 0; --l) {
                Panel q{p.a + w * std::ldexp(1.0, -l - 1), p.a + w * std::ldexp(1.0, -l)};
                if (q.b > q.a) out.push_back(q);
            }
        } else {
            for (int l = 0; l < levels; ++l) {
                Panel q{p.b - w * std::ldexp(1.0, -l), p.b - w * std::ldexp(1.0, -l - 1)};
                if (q.b > q.a) out.push_back(q);
            }
        }
    }
    return out;
}

std::vector<Panel> refine_by_distance(const std::vector<Panel>& panels,
                                      const std::function<double(double, double)>& max_width) {
    std::vector<Panel> out;
    std::vector<Panel> stack(panels.rbegin(), panels.rend());
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double w = p.b - p.a;
        if (w <= max_width(p.a, p.b) || w < 1e-13) {
            out.push_back(p);
        } else {
            double mid = 0.5 * (p.a + p.b);
            stack.push_back({mid, p.b});
            stack.push_back({p.a, mid});
        }
    }
    return out;
}

Complex integrate_panels(const std::vector<Panel>& panels, int p,
                         const std::function<Complex(double)>& f) {
    const GaussRule& g = gauss_legendre(p);
    Complex sum = 0.0;
    for (const Panel& panel : panels) {
        double c = 0.5 * (panel.a + panel.b);
        double h = 0.5 * (panel.b - panel.a);
        if (!(h > 0.0)) continue;
        Complex acc = 0.0;
        for (int q = 0; q < p; ++q) acc += g.weights[q] * f(c + h * g.nodes[q]);
        sum += h * acc;
    }
    return sum;
}

}  // namespace oscbem
