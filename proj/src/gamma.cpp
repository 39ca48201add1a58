#include "orbitforge/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitforge {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double value_at(double m, double c, double d) {
    double a = m * c;
    double b = d == 0.0 ? 0.0 : d / m;
    return std::max(a, b);
}
}  // namespace

GammaSet GammaSet::singleton(cplx lambda0) {
    double m = std::abs(lambda0);
    if (m == 0.0) throw ArgumentError("gamma singleton must be nonzero");
    return GammaSet{Kind::Singleton, m, m, {}};
}

GammaSet GammaSet::annulus(double r, double R) {
    if (!(0.0 < r && r <= R) || !std::isfinite(R)) throw ArgumentError("annulus needs 0 < r <= R < inf");
    return GammaSet{Kind::Annulus, r, R, {}};
}

GammaSet GammaSet::grid_of(std::vector<cplx> points) {
    std::vector<double> mags;
    for (const auto& z : points) {
        double m = std::abs(z);
        if (m > 0.0) mags.push_back(m);
    }
    if (mags.empty()) throw ArgumentError("gamma grid needs a nonzero member");
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    return GammaSet{Kind::Grid, mags.front(), mags.back(), std::move(mags)};
}

double GammaSet::mag_min() const {
    switch (kind) {
        case Kind::Singleton: return r;
        case Kind::Annulus: return r;
        case Kind::ZeroToOne: return 0.0;  // open end
        case Kind::OneToInf: return 1.0;
        case Kind::AllNonzero: return 0.0;
        case Kind::Grid: return grid.front();
    }
    return 0.0;
}

double GammaSet::mag_max() const {
    switch (kind) {
        case Kind::Singleton: return r;
        case Kind::Annulus: return R;
        case Kind::ZeroToOne: return 1.0;
        case Kind::OneToInf: return kInf;
        case Kind::AllNonzero: return kInf;
        case Kind::Grid: return grid.back();
    }
    return kInf;
}

double GammaSet::project_magnitude(double target) const {
    if (!(target > 0.0)) target = std::numeric_limits<double>::min();
    switch (kind) {
        case Kind::Singleton: return r;
        case Kind::Annulus: return std::clamp(target, r, R);
        case Kind::ZeroToOne: return std::min(target, 1.0);
        case Kind::OneToInf: return std::max(target, 1.0);
        case Kind::AllNonzero: return target;
        case Kind::Grid: {
            auto it = std::lower_bound(grid.begin(), grid.end(), target);
            if (it == grid.end()) return grid.back();
            if (it == grid.begin()) return grid.front();
            double up = *it, down = *(it - 1);
            // log-scale nearest, ties toward the smaller magnitude
            return std::log(target / down) <= std::log(up / target) ? down : up;
        }
    }
    return target;
}

GammaObjective objective(double c, double d, const GammaSet& g) {
    if (c < 0.0 || d < 0.0) throw ArgumentError("objective needs c, d >= 0");
    GammaObjective out;
    switch (g.kind) {
        case GammaSet::Kind::Singleton:
            out.argmin_magnitude = g.r;
            out.value = value_at(g.r, c, d);
            return out;
        case GammaSet::Kind::AllNonzero:
            if (c == 0.0 && d == 0.0) {
                out = {0.0, 1.0, true};
            } else if (c == 0.0) {
                out = {0.0, kInf, false};  // limit as |lambda| -> inf
            } else if (d == 0.0) {
                out = {0.0, 0.0, false};  // limit as |lambda| -> 0
            } else {
                double m = std::sqrt(d / c);
                out = {std::sqrt(c * d), m, true};
            }
            return out;
        case GammaSet::Kind::ZeroToOne:
            if (d == 0.0) {
                out = c == 0.0 ? GammaObjective{0.0, 1.0, true} : GammaObjective{0.0, 0.0, false};
            } else if (c == 0.0) {
                out = {d, 1.0, true};
            } else if (d <= c) {
                double m = std::sqrt(d / c);
                out = {std::sqrt(c * d), m, true};
            } else {
                out = {d, 1.0, true};
            }
            return out;
        case GammaSet::Kind::OneToInf:
            if (c == 0.0) {
                out = d == 0.0 ? GammaObjective{0.0, 1.0, true} : GammaObjective{0.0, kInf, false};
            } else if (d == 0.0) {
                out = {c, 1.0, true};
            } else if (c <= d) {
                double m = std::sqrt(d / c);
                out = {std::sqrt(c * d), m, true};
            } else {
                out = {c, 1.0, true};
            }
            return out;
        case GammaSet::Kind::Annulus: {
            double m;
            if (c == 0.0 && d == 0.0)
                m = g.r;
            else if (c == 0.0)
                m = g.R;
            else if (d == 0.0)
                m = g.r;
            else
                m = std::clamp(std::sqrt(d / c), g.r, g.R);
            out = {value_at(m, c, d), m, true};
            return out;
        }
        case GammaSet::Kind::Grid: {
            double best = kInf, arg = g.grid.front();
            for (double m : g.grid) {
                double v = value_at(m, c, d);
                if (v < best) {
                    best = v;
                    arg = m;
                }
            }
            out = {best, arg, true};
            return out;
        }
    }
    throw ArgumentError("unreachable");
}

double objective_log2(double lc, double ld, const GammaSet& g, double* log_argmin) {
    auto at = [&](double lm) {
        double a = lm + lc;
        double b = ld - lm;
        return std::max(a, b);
    };
    auto ret = [&](double v, double lm) {
        if (log_argmin) *log_argmin = lm;
        return v;
    };
    switch (g.kind) {
        case GammaSet::Kind::Singleton:
            return ret(at(std::log2(g.r)), std::log2(g.r));
        case GammaSet::Kind::AllNonzero:
            if (lc == kInf || ld == kInf) return ret(kInf, 0.0);
            if (lc == -kInf) return ret(-kInf, kInf);
            if (ld == -kInf) return ret(-kInf, -kInf);
            return ret(0.5 * (lc + ld), 0.5 * (ld - lc));
        case GammaSet::Kind::ZeroToOne: {
            if (lc == kInf || ld == kInf) return ret(kInf, 0.0);
            if (ld == -kInf) return ret(-kInf, -kInf);     // shrink |lambda|
            if (lc == -kInf) return ret(ld, 0.0);          // best at |lambda| = 1
            double lm = std::min(0.5 * (ld - lc), 0.0);
            return ret(at(lm), lm);
        }
        case GammaSet::Kind::OneToInf: {
            if (lc == kInf || ld == kInf) return ret(kInf, 0.0);
            if (lc == -kInf) return ret(-kInf, kInf);      // grow |lambda|
            if (ld == -kInf) return ret(lc, 0.0);
            double lm = std::max(0.5 * (ld - lc), 0.0);
            return ret(at(lm), lm);
        }
        case GammaSet::Kind::Annulus: {
            if (lc == kInf || ld == kInf) return ret(kInf, std::log2(g.r));
            double lr = std::log2(g.r), lR = std::log2(g.R);
            double lm;
            if (lc == -kInf && ld == -kInf) return ret(-kInf, lr);
            if (lc == -kInf)
                lm = lR;
            else if (ld == -kInf)
                lm = lr;
            else
                lm = std::clamp(0.5 * (ld - lc), lr, lR);
            return ret(at(lm), lm);
        }
        case GammaSet::Kind::Grid: {
            double best = kInf, arg = std::log2(g.grid.front());
            for (double m : g.grid) {
                double v = at(std::log2(m));
                if (v < best) {
                    best = v;
                    arg = std::log2(m);
                }
            }
            return ret(best, arg);
        }
    }
    throw ArgumentError("unreachable");
}

namespace {

// Witness selection inside the open magnitude interval (lo, hi),
// additionally constrained to [glo, ghi] with closed ends where the set
// has them. Prefers the unconstrained balance point sqrt(lo*hi).
std::optional<double> pick_in(double lo, double hi, double glo, bool glo_closed, double ghi,
                              bool ghi_closed) {
    double l = std::max(lo, glo);
    double h = std::min(hi, ghi);
    if (l > h) return std::nullopt;
    bool l_open = lo >= glo || !glo_closed;  // lower end open unless the set's closed end is inside
    bool h_open = hi <= ghi || !ghi_closed;
    if (l == h) {
        if (l_open || h_open) return std::nullopt;
        return l;
    }
    // closed candidate ends first (exact), then the geometric midpoint
    if (!h_open && h < hi) return h;
    if (!l_open && l > lo) return l;
    if (std::isfinite(l) && std::isfinite(h) && l > 0.0) return std::sqrt(l * h);
    if (!std::isfinite(h)) return l > 0.0 ? 2.0 * l : 1.0;
    return 0.5 * h;
}

Feasibility feasible_interval(double lo, double hi, const GammaSet& g) {
    Feasibility f;
    if (!(lo < hi)) return f;
    std::optional<double> w;
    switch (g.kind) {
        case GammaSet::Kind::Singleton:
            if (lo < g.r && g.r < hi) w = g.r;
            break;
        case GammaSet::Kind::AllNonzero:
            w = pick_in(lo, hi, 0.0, false, kInf, false);
            break;
        case GammaSet::Kind::ZeroToOne:
            w = pick_in(lo, hi, 0.0, false, 1.0, true);
            break;
        case GammaSet::Kind::OneToInf:
            w = pick_in(lo, hi, 1.0, true, kInf, false);
            break;
        case GammaSet::Kind::Annulus:
            w = pick_in(lo, hi, g.r, true, g.R, true);
            break;
        case GammaSet::Kind::Grid: {
            double target = std::isfinite(hi) && lo > 0.0 ? std::sqrt(lo * hi)
                            : std::isfinite(hi)           ? 0.5 * hi
                                                          : 2.0 * std::max(lo, 1.0);
            double best = 0.0, best_dist = kInf;
            for (double m : g.grid) {
                if (m > lo && m < hi) {
                    double dist = std::fabs(std::log(m / target));
                    if (dist < best_dist || (dist == best_dist && m < best)) {
                        best_dist = dist;
                        best = m;
                    }
                }
            }
            if (best_dist < kInf) w = best;
            break;
        }
    }
    if (w) {
        f.ok = true;
        f.witness_magnitude = *w;
    }
    return f;
}

}  // namespace

Feasibility feasible(double c, double d, double eps, const GammaSet& g) {
    if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
    // max(|l| c, d/|l|) < eps  <=>  |l| in (d/eps, eps/c)
    double lo = d == 0.0 ? 0.0 : d / eps;
    double hi = c == 0.0 ? kInf : eps / c;
    return feasible_interval(lo, hi, g);
}

Feasibility feasible_log2(double lc, double ld, double leps, const GammaSet& g) {
    double lo = ld == -kInf ? 0.0 : std::exp2(ld - leps);
    double hi = lc == -kInf ? kInf : std::exp2(leps - lc);
    if (lc == kInf || ld == kInf) return Feasibility{};
    return feasible_interval(lo, hi, g);
}

}  // namespace orbitforge
