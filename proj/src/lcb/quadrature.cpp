#include "lcb/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

double eval_checked(const RealFn& f, double t) {
    double v = f(t);
    if (!std::isfinite(v)) throw numeric_error("quadrature: non-finite integrand value");
    return v;
}

double simpson_rec(const RealFn& f, double a, double fa, double b, double fb, double m,
                   double fm, double whole, double rel_tol, double abs_tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = eval_checked(f, lm), frm = eval_checked(f, rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * std::max(abs_tol, rel_tol * std::fabs(left + right)))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, rel_tol, 0.5 * abs_tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, rel_tol, 0.5 * abs_tol, depth - 1);
}

// Cell edges are evaluated a hair inside the cell so that cut points
// passed as critical_points behave as one-sided limits; densities jump
// at support endpoints and the edge value would otherwise pollute the
// neighbouring cell.
double composite_simpson(const RealFn& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double nudge = (b - a) * 0x1.0p-48;
    double acc = eval_checked(f, a + nudge) + eval_checked(f, b - nudge);
    for (int i = 1; i < panels; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * eval_checked(f, a + i * h);
    return acc * h / 3.0;
}

} // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double rel_tol, double abs_tol,
                        int max_depth) {
    if (a == b) return 0.0;
    double fa = eval_checked(f, a), fb = eval_checked(f, b);
    double m = 0.5 * (a + b);
    double fm = eval_checked(f, m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, rel_tol, abs_tol, max_depth);
}

double integrate(const RealFn& f, const QuadratureSpec& spec) {
    if (!(spec.lo < spec.hi)) throw validation_error("quadrature: requires lo < hi");
    std::vector<double> cuts;
    cuts.push_back(spec.lo);
    for (double c : spec.critical_points)
        if (c > spec.lo && c < spec.hi) cuts.push_back(c);
    cuts.push_back(spec.hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double span = spec.hi - spec.lo;
    double prev = 0.0;
    for (int round = 0; round <= spec.max_doublings; ++round) {
        int scale = 1 << round;
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double cell = cuts[i + 1] - cuts[i];
            int p = std::max(4, static_cast<int>(spec.panels * (cell / span)) * scale);
            if (p % 2) ++p;
            total += composite_simpson(f, cuts[i], cuts[i + 1], p);
        }
        if (round > 0 &&
            std::fabs(total - prev) <= std::max(spec.tol, spec.tol * std::fabs(total)))
            return total;
        prev = total;
    }
    return prev;
}

double hellinger(const RealFn& f, const RealFn& g, const QuadratureSpec& spec) {
    auto integrand = [&](double t) {
        double fv = f(t), gv = g(t);
        if (!std::isfinite(fv) || !std::isfinite(gv))
            throw numeric_error("hellinger: non-finite density value");
        double d = std::sqrt(std::max(0.0, fv)) - std::sqrt(std::max(0.0, gv));
        return d * d;
    };
    double h2 = 0.5 * integrate(integrand, spec);
    return std::sqrt(std::max(0.0, h2));
}

} // namespace lcb
