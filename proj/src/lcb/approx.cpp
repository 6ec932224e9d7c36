#include "lcb/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// leftmost t in [lo,hi] with pred(t) true; pred is monotone false->true.
// Returns hi if pred never fires, lo if it holds from the start.
double bisect_first_true(const std::function<bool(double)>& pred, double lo, double hi,
                         int iters = 200) {
    if (pred(lo)) return lo;
    if (!pred(hi)) return hi;
    for (int i = 0; i < iters && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// rightmost t with pred true; pred monotone true->false
double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi,
                        int iters = 200) {
    if (pred(hi)) return hi;
    if (!pred(lo)) return lo;
    for (int i = 0; i < iters && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

struct FlaggedPoint {
    double x;
    bool red;
};

std::vector<double> bare(const std::vector<FlaggedPoint>& pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(p.x);
    return out;
}

void sort_dedup(std::vector<FlaggedPoint>& pts) {
    std::sort(pts.begin(), pts.end(),
              [](const FlaggedPoint& a, const FlaggedPoint& b) { return a.x < b.x; });
    std::vector<FlaggedPoint> out;
    for (const auto& p : pts) {
        if (!out.empty() && p.x == out.back().x)
            out.back().red = out.back().red || p.red;
        else
            out.push_back(p);
    }
    pts.swap(out);
}

} // namespace

bool ConcaveFn::is_kink(double t, double tol) const {
    for (double k : kinks)
        if (std::fabs(k - t) <= tol) return true;
    return false;
}

ConcaveFn concave_from_plf(const Plf& w) {
    ConcaveFn out;
    out.value = [w](double t) { return w(t); };
    out.dleft = [w](double t) {
        if (t <= w.lo()) return kInf;
        std::size_t j = 0;
        while (j + 2 < w.x.size() && w.x[j + 1] < t) ++j;
        return w.slope(j);
    };
    out.dright = [w](double t) {
        if (t >= w.hi()) return -kInf;
        // at a breakpoint the right derivative is the next segment's slope
        std::size_t seg = 0;
        while (seg + 1 < w.segments() && w.x[seg + 1] <= t) ++seg;
        return w.slope(seg);
    };
    for (std::size_t j = 1; j + 1 < w.x.size(); ++j)
        if (w.slope(j) < w.slope(j - 1)) out.kinks.push_back(w.x[j]);
    return out;
}

double Partition::min_gap() const {
    double g = kInf;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) g = std::min(g, points[i + 1] - points[i]);
    return g;
}

double Partition::max_gap() const {
    double g = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) g = std::max(g, points[i + 1] - points[i]);
    return g;
}

Plf midpoint_interpolant(const RealFn& w, const Partition& partition, double quad_rel_tol) {
    const auto& xs = partition.points;
    if (xs.size() < 2) throw validation_error("midpoint_interpolant: partition has no interval");
    double a = xs.front(), b = xs.back();
    std::size_t m = xs.size() - 1;

    std::vector<double> mid(m), avg(m);
    for (std::size_t i = 0; i < m; ++i) {
        mid[i] = 0.5 * (xs[i] + xs[i + 1]);
        double len = xs[i + 1] - xs[i];
        avg[i] = adaptive_simpson(w, xs[i], xs[i + 1], quad_rel_tol) / len;
    }

    std::vector<double> bx, by;
    bx.reserve(m + 2);
    by.reserve(m + 2);
    if (m == 1) {
        bx = {a, b};
        by = {avg[0], avg[0]};
        return Plf(std::move(bx), std::move(by));
    }
    // linear extension to the endpoints from the outermost midpoint pair
    double va = avg[0] + (a - mid[0]) * (avg[1] - avg[0]) / (mid[1] - mid[0]);
    double vb = avg[m - 1] +
                (b - mid[m - 1]) * (avg[m - 1] - avg[m - 2]) / (mid[m - 1] - mid[m - 2]);
    bx.push_back(a);
    by.push_back(va);
    for (std::size_t i = 0; i < m; ++i) {
        bx.push_back(mid[i]);
        by.push_back(avg[i]);
    }
    bx.push_back(b);
    by.push_back(vb);
    return Plf(std::move(bx), std::move(by));
}

Partition build_partition(const ConcaveFn& w, double a, double b, int r,
                          PartitionTrace* trace) {
    if (!(a < b)) throw validation_error("build_partition: requires a < b");
    if (r < 1) throw validation_error("build_partition: requires r >= 1");
    double span = b - a;

    double da = w.dright(a);
    double db = w.dleft(b);
    if (!std::isfinite(da) || !std::isfinite(db))
        throw numeric_error(
            "build_partition: non-finite one-sided derivative at an endpoint; "
            "shrink the interval away from the support boundary");
    double M = da - db;
    if (M < 0.0) M = 0.0; // concave input has da >= db; tolerate fp noise

    double delta = span / (static_cast<double>(r) * r);

    // P1: uniform grid (endpoints pinned exactly)
    std::vector<FlaggedPoint> pts;
    pts.push_back({a, false});
    for (int i = 1; i < r; ++i)
        pts.push_back({a + span * static_cast<double>(i) / r, false});
    pts.push_back({b, false});

    if (trace) trace->uniform = bare(pts);

    // P2: isolate kinks with derivative drop >= M/r
    if (M > 0.0) {
        for (double k : w.kinks) {
            if (k <= a || k >= b) continue;
            double drop = w.dleft(k) - w.dright(k);
            if (drop >= M / r) {
                pts.push_back({k, true});
                if (k - delta > a) pts.push_back({k - delta, true});
                if (k + delta < b) pts.push_back({k + delta, false});
            }
        }
    }
    sort_dedup(pts);
    if (trace) trace->with_kinks = bare(pts);

    // P3: split intervals accumulating slope drop > 2M/r
    if (M > 0.0) {
        int inserted = 0;
        std::size_t i = 0;
        while (i + 1 < pts.size() && inserted <= 4 * r) {
            double u = pts[i].x, v = pts[i + 1].x;
            if (w.dright(u) - w.dleft(v) > 2.0 * M / r && v - u > 4.0 * span * 1e-15) {
                double thr = w.dright(u) - 2.0 * M / r;
                double y = bisect_last_true([&](double t) { return w.dleft(t) >= thr; },
                                            u + span * 1e-15, v);
                // snap to an exact kink if the jump is what the bisection chased
                for (double k : w.kinks)
                    if (std::fabs(k - y) <= span * 1e-12 && k > u && k < v) y = k;
                if (y <= u || y >= v) {
                    ++i;
                    continue;
                }
                if (y - delta > u) pts.push_back({y - delta, true});
                pts.push_back({y, true});
                if (y + delta < v) pts.push_back({y + delta, false});
                ++inserted;
                sort_dedup(pts);
                // resume at y
                i = static_cast<std::size_t>(
                    std::lower_bound(pts.begin(), pts.end(), y,
                                     [](const FlaggedPoint& p, double t) { return p.x < t; }) -
                    pts.begin());
            } else {
                ++i;
            }
        }
    }
    if (trace) trace->with_refines = bare(pts);

    // P4: make w differentiable at interval midpoints, splitting so each
    // part keeps at least a third of the interval
    {
        std::vector<FlaggedPoint> extra;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double u = pts[i].x, v = pts[i + 1].x;
            double len = v - u;
            double ktol = std::max(1e-15 * span, 1e-15);
            if (!w.is_kink(0.5 * (u + v), ktol)) continue;
            double t = 0.5 * (u + v);
            const double offsets[] = {0.0, len / 12.0, -len / 12.0, len / 6.0, -len / 6.0};
            for (double off : offsets) {
                double cand = t + off;
                if (cand - u < len / 3.0 - 1e-15 * span || v - cand < len / 3.0 - 1e-15 * span)
                    continue;
                if (!w.is_kink(0.5 * (u + cand), ktol) && !w.is_kink(0.5 * (cand + v), ktol)) {
                    extra.push_back({cand, false});
                    break;
                }
            }
        }
        for (const auto& e : extra) pts.push_back(e);
        sort_dedup(pts);
    }
    if (trace) trace->with_midsplit = bare(pts);

    // thinning: enforce min gap >= delta/2 walking left to right
    if (span > 2.0 * delta) {
        auto find_index = [&](double t) {
            return static_cast<std::size_t>(
                std::lower_bound(pts.begin(), pts.end(), t,
                                 [](const FlaggedPoint& p, double v) { return p.x < v; }) -
                pts.begin());
        };
        auto erase_between = [&](double lo, double hi) {
            std::size_t removed = 0;
            for (std::size_t k = 0; k < pts.size();) {
                if (pts[k].x > lo && pts[k].x < hi) {
                    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
                    ++removed;
                } else {
                    ++k;
                }
            }
            return removed;
        };
        auto pick_eps = [&](double base, double range, double left_ref, double right_ref) {
            // half the allowed range, nudged off any kink midpoints
            double ktol = std::max(1e-15 * span, 1e-15);
            const double fracs[] = {0.5, 0.4375, 0.5625, 0.375, 0.625, 0.25, 0.75};
            for (double fr : fracs) {
                double s = base + fr * range;
                if (!w.is_kink(0.5 * (s + left_ref), ktol) &&
                    !w.is_kink(0.5 * (s + right_ref), ktol))
                    return s;
            }
            return base + 0.5 * range;
        };

        double cur = pts.front().x;
        bool done = false;
        while (!done) {
            if (b - cur <= delta) {
                erase_between(cur, b);
                break; // to final endpoint fix-up
            }
            double target = cur + delta;
            std::size_t yi = find_index(std::nextafter(target, kInf));
            while (yi < pts.size() && pts[yi].x <= target) ++yi;
            if (yi >= pts.size()) break;
            double y = pts[yi].x;
            std::size_t removed = erase_between(cur, y);
            if (removed > 0) {
                double range = std::min(delta, y - cur - delta);
                double s = pick_eps(cur + delta, range, cur, y);
                pts.push_back({s, false});
                sort_dedup(pts);
                std::size_t ci = find_index(cur);
                pts[ci].red = true; // marks s - cur < 2 delta
                cur = s;
            } else {
                cur = y;
            }
        }
        // final fix-up near b: drop a point that landed within delta of b
        // and re-seat one at a legal spot
        if (cur != b && cur != pts.front().x) {
            std::size_t ci = find_index(cur);
            double y = pts[ci - 1].x;
            pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(ci));
            double ktol = std::max(1e-15 * span, 1e-15);
            if (b - y > 2.0 * delta) {
                double range = std::min(b - y - 2.0 * delta, delta);
                double s = b - delta - 0.5 * range;
                if (w.is_kink(0.5 * (y + s), ktol)) s = b - delta - 0.25 * range;
                pts.push_back({s, true});
                sort_dedup(pts);
            } else {
                pts.push_back({0.5 * (y + b), true});
                sort_dedup(pts);
                pts[find_index(y)].red = true;
            }
        }
    }

    Partition out;
    out.points = bare(pts);
    out.red.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out.red[i] = pts[i].red;
    if (out.points.size() < 2 || out.points.front() != a || out.points.back() != b)
        throw numeric_error("build_partition: thinning lost an endpoint");
    return out;
}

MixtureRep plf_to_mixture(const Plf& w, double concavity_tol) {
    w.validate();
    if (!w.is_concave(concavity_tol))
        throw validation_error("plf_to_mixture: input not concave");

    double a = w.lo(), b = w.hi();
    std::size_t K = w.segments();
    double sK = w.slope(K - 1); // w'_-(b)

    MixtureRep rep;
    rep.mixture.a = a;
    rep.mixture.b = b;
    rep.mixture.gamma2 = -sK;
    rep.gamma3 = w.y.front();

    double gamma1 = 0.0;
    std::vector<double> atoms, masses;
    for (std::size_t j = 0; j + 1 < K; ++j) {
        double drop = w.slope(j) - w.slope(j + 1);
        if (drop <= 0.0) continue; // concave fp noise only
        double z = w.x[j + 1] - a;
        atoms.push_back(z);
        masses.push_back(z * drop);
        gamma1 += z * drop;
    }
    if (atoms.empty() || gamma1 <= 0.0) {
        rep.mixture.gamma1 = 0.0;
        rep.mixture.knots = {b - a};
        rep.mixture.weights = {1.0};
        return rep;
    }
    rep.mixture.gamma1 = gamma1;
    for (double& q : masses) q /= gamma1;
    // exact unit sum for the 1e-12 invariant gate
    double s = 0.0;
    for (double q : masses) s += q;
    masses.back() += 1.0 - s;
    rep.mixture.knots = std::move(atoms);
    rep.mixture.weights = std::move(masses);
    return rep;
}

Envelope fit_envelope(const DensityModel& model, int grid_points) {
    double lo = model.eff_lo, hi = model.eff_hi;
    if (!(lo < hi)) throw validation_error("fit_envelope: bad effective range");

    std::vector<double> xs, phis;
    xs.reserve(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1);
        double f = model.pdf(t);
        if (f <= 0.0) continue;
        xs.push_back(t);
        phis.push_back(std::log(f));
    }
    if (xs.size() < 3) throw numeric_error("fit_envelope: density vanishes on the grid");

    bool compact = std::isfinite(model.supp_lo) && std::isfinite(model.supp_hi) &&
                   model.supp_lo >= lo - 1e-12 && model.supp_hi <= hi + 1e-12;
    double alpha_max = 64.0;
    if (!compact) {
        double right = std::isfinite(model.supp_hi) ? kInf : -model.logpdf.dright(xs.back());
        double left = std::isfinite(model.supp_lo) ? kInf : model.logpdf.dleft(xs.front());
        alpha_max = std::min({alpha_max, right, left});
        if (!(alpha_max > 0.0))
            throw numeric_error("fit_envelope: no exponential envelope (flat tail)");
    }

    double best_alpha = 0.0, best_beta = 0.0, best_obj = kInf;
    for (int k = 0; k < 240; ++k) {
        double alpha = 0.05 * std::pow(alpha_max / 0.05, static_cast<double>(k) / 239.0);
        if (alpha > alpha_max) break;
        double beta = -kInf;
        for (std::size_t i = 0; i < xs.size(); ++i)
            beta = std::max(beta, phis[i] + alpha * std::fabs(xs[i]));
        double obj = beta - std::log(alpha); // log of e^beta / alpha
        if (obj < best_obj) {
            best_obj = obj;
            best_alpha = alpha;
            best_beta = beta;
        }
    }
    return Envelope{best_alpha, best_beta + 1e-9};
}

namespace {

struct LayerPiece {
    double lo, hi;
    int m;
};

} // namespace

ApproxReport approximate_density(const DensityModel& model, double a_n, double b_n, long n,
                                 const ApproxConstants& constants) {
    if (n < constants.n0)
        throw validation_error("approximate_density: n below configured n0");
    if (!(a_n < b_n)) throw validation_error("approximate_density: requires a_n < b_n");

    Envelope env = fit_envelope(model);
    double ln_n = std::log(static_cast<double>(n));
    double s_n = 0.8 / env.alpha * ln_n; // (4 / 5 alpha) ln n
    double required = 2.0 * s_n;         // (8 / 5 alpha) ln n
    if (a_n > -required || b_n < required)
        throw validation_error(
            "approximate_density: interval must contain [-(8/5a) ln n, (8/5a) ln n]");

    // truncated density f1 = f0 1_{[-s_n, s_n]} / mass
    double t_lo = std::max(-s_n, model.supp_lo);
    double t_hi = std::min(s_n, model.supp_hi);
    if (!(t_lo < t_hi))
        throw validation_error("approximate_density: truncation window misses the support");
    QuadratureSpec mass_spec;
    mass_spec.lo = t_lo;
    mass_spec.hi = t_hi;
    mass_spec.tol = 1e-12;
    double mass = integrate(model.pdf, mass_spec);
    if (!(mass > 0.0)) throw numeric_error("approximate_density: truncated mass vanished");
    double log_mass = std::log(mass);

    ConcaveFn w1;
    w1.value = [&model, t_lo, t_hi, log_mass](double t) {
        if (t < t_lo || t > t_hi) return -kInf;
        double f = model.pdf(t);
        if (f <= 0.0) return -kInf;
        return std::log(f) - log_mass;
    };
    w1.dleft = [&model, t_lo](double t) {
        if (t <= t_lo) return kInf;
        return model.logpdf.dleft(t);
    };
    w1.dright = [&model, t_hi](double t) {
        if (t >= t_hi) return -kInf;
        return model.logpdf.dright(t);
    };
    for (double k : model.logpdf.kinks)
        if (k > t_lo && k < t_hi) w1.kinks.push_back(k);

    // layer boundaries
    double level = -0.8 * ln_n;
    double T = std::pow(static_cast<double>(n), 0.8);
    double D = constants.layer_D;
    int j_n = static_cast<int>(std::ceil(std::log2(T / D))) - 1;
    if (j_n < 0) j_n = 0;

    // coarse high point so the level bisections bracket the peak
    double peak_guess = 0.5 * (t_lo + t_hi);
    {
        double best = -kInf;
        for (int i = 0; i <= 256; ++i) {
            double t = t_lo + (t_hi - t_lo) * i / 256.0;
            double v = w1.value(t);
            if (v > best) {
                best = v;
                peak_guess = t;
            }
        }
    }
    double lev_lo =
        bisect_first_true([&](double t) { return w1.value(t) >= level; }, t_lo, peak_guess);
    double lev_hi =
        bisect_last_true([&](double t) { return w1.value(t) >= level; }, peak_guess, t_hi);

    auto lpos = [&](double s) {
        // leftmost x with w'_+(x) <= s
        return bisect_first_true([&](double t) { return w1.dright(t) <= s; }, lev_lo, lev_hi);
    };
    auto rpos = [&](double s) {
        // rightmost x with w'_-(x) >= -s
        return bisect_last_true([&](double t) { return w1.dleft(t) >= -s; }, lev_lo, lev_hi);
    };

    double B_lo = std::max(lev_lo, lpos(T));
    double B_hi = std::min(lev_hi, rpos(T));
    if (!(B_lo < B_hi))
        throw numeric_error("approximate_density: degenerate working interval B_n");

    // tile B_n: dyadic slope bands on each flank, flat layer in the middle
    std::vector<LayerPiece> pieces;
    double span_tol = 1e-11 * (b_n - a_n);
    auto add_piece = [&](double lo, double hi, double m_real) {
        if (hi - lo <= span_tol) return;
        int m = static_cast<int>(std::ceil(m_real));
        if (m < 1) m = 1;
        pieces.push_back({lo, hi, m});
    };

    double thr_mid = std::pow(2.0, -static_cast<double>(j_n) - 1.0) * T;
    double mid_lo = std::max(B_lo, std::min(B_hi, lpos(thr_mid)));
    double mid_hi = std::max(B_lo, std::min(B_hi, rpos(thr_mid)));
    if (mid_hi < mid_lo) mid_hi = mid_lo;

    double n35 = std::pow(static_cast<double>(n), 0.6);
    double n15 = std::pow(static_cast<double>(n), 0.2);
    double prev = B_lo;
    for (int j = 0; j <= j_n; ++j) {
        double thr = std::pow(2.0, -static_cast<double>(j) - 1.0) * T;
        double cut = std::max(B_lo, std::min(lpos(thr), mid_lo));
        add_piece(prev, cut, std::pow(2.0, -0.5 * j) * n35 * std::sqrt(cut - prev) /
                                 std::sqrt(ln_n));
        prev = cut;
    }
    add_piece(prev, mid_lo, n35 * std::sqrt(mid_lo - prev) / std::sqrt(ln_n));
    // middle flat layer
    add_piece(mid_lo, mid_hi, n15 * std::sqrt(D * (mid_hi - mid_lo) / ln_n));
    prev = mid_hi;
    for (int j = j_n; j >= 0; --j) {
        double thr = std::pow(2.0, -static_cast<double>(j)) * T;
        double cut = std::min(B_hi, std::max(rpos(thr), mid_hi));
        if (j == 0) cut = B_hi;
        add_piece(prev, cut, std::pow(2.0, -0.5 * j) * n35 * std::sqrt(cut - prev) /
                                 std::sqrt(ln_n));
        prev = cut;
    }
    if (prev < B_hi - span_tol)
        add_piece(prev, B_hi, n35 * std::sqrt(B_hi - prev) / std::sqrt(ln_n));

    if (pieces.empty()) throw numeric_error("approximate_density: no layer pieces");

    // A slope-band cut that lands on a kink of w1 (the bisection chases
    // the derivative jump) would leave the kink on a piece boundary where
    // no partition isolates it and the interpolant chords across it.
    // Merge such neighbours; build_partition then handles the kink.
    {
        double ktol = 1e-9 * (b_n - a_n);
        for (std::size_t i = 0; i + 1 < pieces.size();) {
            bool on_kink = false;
            for (double k : w1.kinks)
                if (std::fabs(pieces[i].hi - k) <= ktol) on_kink = true;
            if (on_kink && std::fabs(pieces[i + 1].lo - pieces[i].hi) <= ktol) {
                pieces[i].hi = pieces[i + 1].hi;
                pieces[i].m += pieces[i + 1].m;
                pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i + 1));
            } else {
                ++i;
            }
        }
    }

    // partition every piece and merge
    std::vector<double> merged;
    for (const auto& pc : pieces) {
        Partition part = build_partition(w1, pc.lo, pc.hi, pc.m);
        for (double p : part.points) {
            if (!merged.empty() && p <= merged.back() + span_tol) continue;
            merged.push_back(p);
        }
    }
    if (merged.size() < 2) throw numeric_error("approximate_density: merged partition empty");

    Partition full;
    full.points = merged;
    full.red.assign(merged.size(), false);
    Plf interp = midpoint_interpolant(w1.value, full);

    // measure the sup error on B_n before extending
    double sup_err = 0.0;
    {
        const int grid = 20000;
        for (int i = 0; i <= grid; ++i) {
            double t = B_lo + (B_hi - B_lo) * static_cast<double>(i) / grid;
            double v = w1.value(t);
            if (!std::isfinite(v)) continue;
            sup_err = std::max(sup_err, std::fabs(v - interp(t)));
        }
    }

    // extend linearly to [a_n, b_n] with slopes clipped to +-n^{4/5};
    // clamp against the interpolant's edge slopes so concavity survives fp
    double x0 = interp.lo(), xM = interp.hi();
    double slope_lo = std::min(std::max(w1.dleft(x0), -T), T);
    double slope_hi = std::min(std::max(w1.dright(xM), -T), T);
    slope_lo = std::max(slope_lo, interp.slope(0));
    slope_hi = std::min(slope_hi, interp.slope(interp.segments() - 1));

    std::vector<double> bx = interp.x, by = interp.y;
    if (x0 - a_n > span_tol) {
        bx.insert(bx.begin(), a_n);
        by.insert(by.begin(), interp.y.front() - slope_lo * (x0 - a_n));
    }
    if (b_n - xM > span_tol) {
        bx.push_back(b_n);
        by.push_back(interp.y.back() + slope_hi * (b_n - xM));
    }
    Plf wbar(std::move(bx), std::move(by));

    ApproxReport report;
    report.envelope = env;
    report.sup_error_on_B = sup_err;
    report.log_norm = log_norm_const(wbar);

    // normalized log-density
    Plf wnorm = wbar;
    for (double& v : wnorm.y) v -= report.log_norm;
    report.plf = wnorm;

    MixtureRep rep = plf_to_mixture(wbar, 1e-9);
    report.gamma1 = rep.mixture.gamma1;
    report.gamma2 = rep.mixture.gamma2;
    report.knots = rep.mixture.knots;
    report.weights = rep.mixture.weights;
    report.knot_count = report.knots.size();
    double min_gap = kInf;
    for (std::size_t i = 0; i + 1 < report.knots.size(); ++i)
        min_gap = std::min(min_gap, report.knots[i + 1] - report.knots[i]);
    if (!std::isfinite(min_gap)) min_gap = b_n - a_n;
    report.min_knot_gap = min_gap;

    NormalizedDensity fbar(wbar);
    QuadratureSpec hspec;
    hspec.lo = std::min(a_n, model.eff_lo);
    hspec.hi = std::max(b_n, model.eff_hi);
    hspec.critical_points = wbar.x;
    hspec.critical_points.push_back(model.supp_lo);
    hspec.critical_points.push_back(model.supp_hi);
    hspec.tol = 1e-12;
    double h = hellinger(model.pdf, [&fbar](double t) { return fbar.pdf(t); }, hspec);
    report.hellinger_sq = h * h;

    double ratio_max = 0.0;
    const int dom_grid = 10000;
    for (int i = 0; i <= dom_grid; ++i) {
        double t = a_n + (b_n - a_n) * static_cast<double>(i) / dom_grid;
        double f0 = model.pdf(t);
        if (f0 <= 0.0) continue;
        ratio_max = std::max(ratio_max, f0 / fbar.pdf(t));
    }
    report.domination_max_ratio = ratio_max;

    report.bound_knot_count = constants.knot_count_C * n15 * ln_n;
    report.bound_min_gap = constants.min_gap_c * std::pow(static_cast<double>(n), -1.2) * ln_n;
    report.bound_hellinger =
        constants.hellinger_C *
        (ln_n * ln_n * std::pow(static_cast<double>(n), -0.8) +
         (b_n - a_n) * (b_n - a_n) * std::pow(static_cast<double>(n), -1.6));
    report.ok_knot_count = static_cast<double>(report.knot_count) <= report.bound_knot_count;
    report.ok_min_gap = report.min_knot_gap >= report.bound_min_gap;
    report.ok_support = wbar.lo() == a_n && wbar.hi() == b_n &&
                        std::isfinite(wbar.y.front()) && std::isfinite(wbar.y.back());
    report.ok_domination = ratio_max <= constants.domination_C;
    report.ok_hellinger = report.hellinger_sq <= report.bound_hellinger;
    return report;
}

} // namespace lcb
