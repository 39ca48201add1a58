#include "orbitforge/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793;

double err_at(const SupportedVec& h, const SupportedVec& g, cplx lambda, const Weight& w, double p) {
    return weighted_norm(vec_sub(scale(h, lambda), g), w, p);
}

bool real_coefficients(const SupportedVec& v) {
    if (v.space() == Space::R) {
        for (const auto& part : v.as_step().parts)
            if (part.coef.imag() != 0.0) return false;
        return true;
    }
    for (const auto& e : v.as_discrete().entries)
        if (e.second.imag() != 0.0) return false;
    return true;
}

// Weighted inner product <g, h>_{w^2} = integral of g * conj(h) * w^2.
cplx weighted_inner(const SupportedVec& g, const SupportedVec& h, const Weight& w) {
    if (g.space() != h.space()) throw SpaceMismatchError("inner product space mismatch");
    cplx acc(0.0, 0.0);
    if (g.space() != Space::R) {
        const auto& a = g.as_discrete();
        const auto& b = h.as_discrete();
        std::size_t i = 0, j = 0;
        while (i < a.entries.size() && j < b.entries.size()) {
            if (a.entries[i].first < b.entries[j].first) {
                ++i;
            } else if (b.entries[j].first < a.entries[i].first) {
                ++j;
            } else {
                double omega = eval(w, GroupPoint::integer(a.entries[i].first[0]));
                acc += a.entries[i].second * std::conj(b.entries[j].second) * omega * omega;
                ++i;
                ++j;
            }
        }
        return acc;
    }
    const auto& a = g.as_step();
    const auto& b = h.as_step();
    if (a.parts.empty() || b.parts.empty()) return acc;
    const AnchorTable& t = *a.anchors;
    for (const auto& pa : a.parts) {
        for (const auto& pb : b.parts) {
            double shift = static_cast<double>(t.position(pb.anchor) - t.position(pa.anchor));
            double lo = std::max(pa.lo, pb.lo + shift);
            double hi = std::min(pa.hi, pb.hi + shift);
            if (lo >= hi) continue;
            RealUnion piece;
            piece.anchors = a.anchors;
            piece.spans.push_back(RealSpan{pa.anchor, lo, hi});
            double wint = local_norm_pow(w, Window::real_union(a.anchors, piece.spans), 2.0);
            acc += pa.coef * std::conj(pb.coef) * wint;
        }
    }
    return acc;
}

// Golden-section minimization of a unimodal scalar function on [a, b].
template <typename F>
double golden_min(F f, double a, double b, double rel_tol, double* at) {
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (std::fabs(b - a) > rel_tol * (std::fabs(x1) + std::fabs(x2) + 1e-300)) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    double x = f1 < f2 ? x1 : x2;
    if (at) *at = x;
    return std::min(f1, f2);
}

// min over the phase for fixed magnitude; exact two-point check for real
// data, coarse grid plus golden refinement otherwise.
double phase_min(const SupportedVec& h, const SupportedVec& g, double mag, const Weight& w, double p,
                 bool real_data, double* best_phase) {
    if (real_data) {
        double e0 = err_at(h, g, cplx(mag, 0.0), w, p);
        double e1 = err_at(h, g, cplx(-mag, 0.0), w, p);
        if (best_phase) *best_phase = e0 <= e1 ? 0.0 : kPi;
        return std::min(e0, e1);
    }
    int grid = 32;
    double best = kInf, arg = 0.0;
    for (int i = 0; i < grid; ++i) {
        double th = -kPi + 2.0 * kPi * i / grid;
        double e = err_at(h, g, std::polar(mag, th), w, p);
        if (e < best) {
            best = e;
            arg = th;
        }
    }
    double span = 2.0 * kPi / grid;
    double refined_at = arg;
    double refined = golden_min(
        [&](double th) { return err_at(h, g, std::polar(mag, th), w, p); }, arg - span, arg + span,
        1e-9, &refined_at);
    if (refined < best) {
        best = refined;
        arg = refined_at;
    }
    if (best_phase) *best_phase = arg;
    return best;
}

}  // namespace

LambdaFit best_lambda(const SupportedVec& f, const SupportedVec& g, const GroupPoint& s,
                      const GammaSet& gamma, double p, const Weight& w) {
    if (p < 1.0) throw ArgumentError("p must be >= 1");
    SupportedVec h = translate(f, s);
    double gnorm = weighted_norm(g, w, p);
    LambdaFit fit;
    if (h.is_zero()) {
        fit.lambda = cplx(0.0, 0.0);
        fit.error = gnorm;
        fit.attained = false;
        return fit;
    }
    bool zero_accumulates = gamma.kind == GammaSet::Kind::AllNonzero ||
                            gamma.kind == GammaSet::Kind::ZeroToOne;
    if (p == 2.0) {
        double h2 = weighted_norm_pow(h, w, 2.0);
        cplx inner = weighted_inner(g, h, w);
        cplx lam_un = inner / h2;
        if (std::abs(lam_un) == 0.0) {
            // orthogonal target: the error is monotone in |lambda|
            double mmin = gamma.mag_min();
            if (mmin > 0.0) {
                fit.lambda = cplx(mmin, 0.0);
                fit.error = err_at(h, g, fit.lambda, w, p);
                return fit;
            }
            fit.lambda = cplx(0.0, 0.0);
            fit.error = gnorm;
            fit.attained = false;
            return fit;
        }
        if (gamma.kind == GammaSet::Kind::Grid) {
            // the squared error is quadratic along the optimal-phase ray,
            // so scan the grid magnitudes instead of snapping by log distance
            double ph = std::arg(lam_un);
            double best = kInf;
            cplx best_lam(0.0, 0.0);
            for (double m : gamma.grid) {
                cplx lam = std::polar(m, ph);
                double e = err_at(h, g, lam, w, 2.0);
                if (e < best) {
                    best = e;
                    best_lam = lam;
                }
            }
            fit.lambda = best_lam;
            fit.error = best;
            return fit;
        }
        double mproj = gamma.project_magnitude(std::abs(lam_un));
        cplx lam = std::polar(mproj, std::arg(lam_un));
        fit.lambda = lam;
        fit.error = err_at(h, g, lam, w, 2.0);
        return fit;
    }
    // general p: nested golden-section over log-magnitude and phase
    bool real_data = real_coefficients(f) && real_coefficients(g);
    double hnorm = weighted_norm(h, w, p);
    double scale0 = gnorm > 0.0 ? gnorm / hnorm : 1.0 / hnorm;
    // any |lambda| above 2 gnorm/hnorm loses to lambda -> 0, so the optimum
    // lives in this bracket (log scale spans 18 decades below it)
    double m_hi = std::min(2.0 * scale0 + 1e-300, gamma.mag_max());
    double m_lo = std::max(m_hi * 1e-18, gamma.mag_min());
    if (gamma.kind == GammaSet::Kind::Singleton) {
        double ph = 0.0;
        fit.error = phase_min(h, g, gamma.r, w, p, real_data, &ph);
        fit.lambda = std::polar(gamma.r, ph);
        return fit;
    }
    double best = kInf, best_m = m_hi, best_ph = 0.0;
    if (gamma.kind == GammaSet::Kind::Grid) {
        for (double m : gamma.grid) {
            double ph = 0.0;
            double e = phase_min(h, g, m, w, p, real_data, &ph);
            if (e < best) {
                best = e;
                best_m = m;
                best_ph = ph;
            }
        }
    } else {
        if (!(m_lo > 0.0)) m_lo = m_hi * 1e-18;
        double la = std::log(m_lo), lb = std::log(m_hi);
        double at = la;
        double got = golden_min(
            [&](double lm) {
                return phase_min(h, g, std::exp(lm), w, p, real_data, nullptr);
            },
            la, lb, 1e-8, &at);
        best = got;
        best_m = std::exp(at);
        phase_min(h, g, best_m, w, p, real_data, &best_ph);
        for (double m : {m_lo, m_hi}) {
            double ph = 0.0;
            double e = phase_min(h, g, m, w, p, real_data, &ph);
            if (e < best) {
                best = e;
                best_m = m;
                best_ph = ph;
            }
        }
    }
    if (zero_accumulates && gnorm < best) {
        fit.lambda = cplx(0.0, 0.0);
        fit.error = gnorm;
        fit.attained = false;
        return fit;
    }
    fit.lambda = std::polar(best_m, best_ph);
    fit.error = best;
    return fit;
}

ApproxResult best_approx(const SupportedVec& f, const SupportedVec& g, const ShiftSet& s,
                         const GammaSet& gamma, double p, const Weight& w, std::int64_t horizon) {
    Space sp = f.space();
    auto shifts = enumerate_shifts(s, sp, horizon, 1u << 14);
    if (shifts.empty()) throw ArgumentError("empty shift enumeration");
    ApproxResult best;
    best.error = kInf;
    const AnchorTable* table = sp == Space::R ? f.as_step().anchors.get() : nullptr;
    for (const auto& sh : shifts) {
        LambdaFit fit = best_lambda(f, g, sh, gamma, p, w);
        bool better = fit.error < best.error;
        if (!better && fit.error == best.error) {
            if (canon_less(sh, best.s_star, table))
                better = true;
            else if (!canon_less(best.s_star, sh, table) && std::abs(fit.lambda) < std::abs(best.lambda_star))
                better = true;
        }
        if (better) {
            best.s_star = sh;
            best.lambda_star = fit.lambda;
            best.error = fit.error;
            best.attained = fit.attained;
        }
    }
    return best;
}

double brute_oracle(const SupportedVec& f, const SupportedVec& g, const GroupPoint& s,
                    const GammaSet& gamma, double p, const Weight& w, const OracleGrid& grid) {
    SupportedVec h = translate(f, s);
    double gnorm = weighted_norm(g, w, p);
    if (h.is_zero()) return gnorm;
    // flattened evaluation over the combined support keeps the grid scan
    // allocation-free on Z
    std::vector<cplx> hv, gv;
    std::vector<double> wp;
    bool fast = h.space() == Space::Z;
    if (fast) {
        const auto& ha = h.as_discrete().entries;
        const auto& ga = g.as_discrete().entries;
        std::size_t i = 0, j = 0;
        while (i < ha.size() || j < ga.size()) {
            std::int64_t t;
            cplx hval(0.0, 0.0), gval(0.0, 0.0);
            bool take_h = i < ha.size() && (j >= ga.size() || ha[i].first <= ga[j].first);
            bool take_g = j < ga.size() && (i >= ha.size() || ga[j].first <= ha[i].first);
            t = take_h ? ha[i].first[0] : ga[j].first[0];
            if (take_h) hval = ha[i++].second;
            if (take_g) gval = ga[j++].second;
            hv.push_back(hval);
            gv.push_back(gval);
            wp.push_back(std::pow(eval(w, GroupPoint::integer(t)), p));
        }
    }
    auto eval_err = [&](cplx lam) {
        if (!fast) return err_at(h, g, lam, w, p);
        double acc = 0.0;
        if (p == 2.0) {
            for (std::size_t i = 0; i < hv.size(); ++i)
                acc += std::norm(lam * hv[i] - gv[i]) * wp[i];
            return std::sqrt(acc);
        }
        for (std::size_t i = 0; i < hv.size(); ++i)
            acc += std::pow(std::abs(lam * hv[i] - gv[i]), p) * wp[i];
        return std::pow(acc, 1.0 / p);
    };
    double hnorm = weighted_norm(h, w, p);
    double hi = grid.mag_hi > 0.0 ? grid.mag_hi : 2.0 * (gnorm > 0.0 ? gnorm / hnorm : 1.0 / hnorm);
    double lo = grid.mag_lo > 0.0 ? grid.mag_lo : hi * 1e-9;
    double best = gamma.kind == GammaSet::Kind::AllNonzero ||
                          gamma.kind == GammaSet::Kind::ZeroToOne
                      ? gnorm
                      : kInf;
    double best_m = lo, best_ph = 0.0;
    double phase_lo = -kPi, phase_hi = kPi;
    for (int round = 0; round <= grid.refine_rounds; ++round) {
        double llo = std::log(lo), lhi = std::log(hi);
        double step = (lhi - llo) / std::max(1, grid.mag_points - 1);
        double pstep = (phase_hi - phase_lo) / grid.phase_points;
        for (int i = 0; i < grid.mag_points; ++i) {
            double m = gamma.project_magnitude(std::exp(llo + step * i));
            for (int j = 0; j <= grid.phase_points; ++j) {
                double th = phase_lo + pstep * j;
                double e = eval_err(std::polar(m, th));
                if (e < best) {
                    best = e;
                    best_m = m;
                    best_ph = th;
                }
            }
        }
        if (gamma.kind == GammaSet::Kind::Grid) break;  // grid magnitudes are exact already
        double zoom_m = 8.0 * step;
        lo = best_m * std::exp(-zoom_m);
        hi = best_m * std::exp(zoom_m);
        double zoom_p = 8.0 * pstep;
        phase_lo = best_ph - zoom_p;
        phase_hi = best_ph + zoom_p;
    }
    return best;
}

std::vector<double> continuity_probe(const SupportedVec& f, const GroupPoint& s0,
                                     const std::vector<GroupPoint>& approach, const Weight& w,
                                     double p) {
    SupportedVec base = translate(f, s0);
    std::vector<double> out;
    out.reserve(approach.size());
    for (const auto& s : approach)
        out.push_back(weighted_norm(vec_sub(translate(f, s), base), w, p));
    return out;
}

}  // namespace orbitforge
