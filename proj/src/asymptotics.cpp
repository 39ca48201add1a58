#include "orbitforge/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitforge {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void ExpSum::add_term(double rate, double coef) {
    if (coef == 0.0) return;
    if (rate == 0.0) {
        konst += coef;
        return;
    }
    for (auto& t : terms) {
        if (t.rate == rate) {
            t.coef += coef;
            if (t.coef == 0.0) {
                t.rate = terms.back().rate;
                t.coef = terms.back().coef;
                terms.pop_back();
            }
            return;
        }
    }
    terms.push_back(Term{rate, coef});
}

ExpSum ExpSum::plus(const ExpSum& other) const {
    ExpSum r = *this;
    r.slope += other.slope;
    r.konst += other.konst;
    for (const auto& t : other.terms) r.add_term(t.rate, t.coef);
    return r;
}

ExpSum ExpSum::negated() const {
    ExpSum r;
    r.slope = -slope;
    r.konst = -konst;
    for (const auto& t : terms) r.terms.push_back(Term{t.rate, -t.coef});
    return r;
}

double ExpSum::eval(double n) const {
    double v = slope * n + konst;
    for (const auto& t : terms) v += t.coef * std::exp2(t.rate * n);
    return v;
}

double ExpSum::limit() const {
    double top_rate = -kInf;
    double top_coef = 0.0;
    for (const auto& t : terms) {
        if (t.rate > 0.0 && t.rate > top_rate) {
            top_rate = t.rate;
            top_coef = t.coef;
        }
    }
    if (top_coef != 0.0) return top_coef > 0.0 ? kInf : -kInf;
    if (slope != 0.0) return slope > 0.0 ? kInf : -kInf;
    return konst;  // negative-rate terms vanish
}

int ExpSum::eventual_sign() const {
    // Dominance order: largest positive rate, then the linear part, then
    // the constant, then the largest negative rate.
    double best_rate = -kInf;
    double best_coef = 0.0;
    for (const auto& t : terms)
        if (t.rate > 0.0 && t.rate > best_rate) {
            best_rate = t.rate;
            best_coef = t.coef;
        }
    if (best_coef != 0.0) return best_coef > 0.0 ? 1 : -1;
    if (slope != 0.0) return slope > 0.0 ? 1 : -1;
    if (konst != 0.0) return konst > 0.0 ? 1 : -1;
    best_rate = -kInf;
    best_coef = 0.0;
    for (const auto& t : terms)
        if (t.rate > best_rate) {
            best_rate = t.rate;
            best_coef = t.coef;
        }
    if (best_coef != 0.0) return best_coef > 0.0 ? 1 : -1;
    return 0;
}

namespace {

// Derivative of f up to the positive factor ln 2 on the exponential part.
// Zeros are unaffected by scaling each exponential coefficient by
// rate (sign-correct) and dropping konst.
ExpSum derivative_shape(const ExpSum& f) {
    ExpSum d;
    d.konst = f.slope;
    for (const auto& t : f.terms) d.add_term(t.rate, t.coef * t.rate);
    return d;
}

// Smallest n >= n0 from which the dominant component of g outweighs twice
// the sum of all the others, so sign(g) is locked from there on. The lock
// persists because every magnitude ratio rest_i/dom is nonincreasing past
// the reported point: exponential-vs-exponential ratios are monotone
// outright, and the exponential-vs-linear ratio turns monotone only past
// 1/(rate ln 2), which the lock therefore waits for. Returns false if no
// such point is reachable within the step budget.
bool dominance_point(const ExpSum& g, std::int64_t n0, std::int64_t* out) {
    int sgn = g.eventual_sign();
    if (sgn == 0) {
        *out = n0;
        return true;
    }
    constexpr double kLn2 = 0.6931471805599453;
    auto locked = [&](double n) {
        // dominant component value vs. rest at n
        double best_rate = -kInf;
        double best_coef = 0.0;
        bool best_is_linear = false, best_is_const = false;
        for (const auto& t : g.terms)
            if (t.rate > 0.0 && (best_coef == 0.0 || t.rate > best_rate)) {
                best_rate = t.rate;
                best_coef = t.coef;
            }
        if (best_coef == 0.0 && g.slope != 0.0) best_is_linear = true;
        if (best_coef == 0.0 && !best_is_linear && g.konst != 0.0) best_is_const = true;
        if (best_coef == 0.0 && !best_is_linear && !best_is_const) {
            for (const auto& t : g.terms)
                if (best_coef == 0.0 || t.rate > best_rate) {
                    best_rate = t.rate;
                    best_coef = t.coef;
                }
        }
        double dom, rest = 0.0;
        if (best_is_linear) {
            dom = std::fabs(g.slope * n);
            rest = std::fabs(g.konst);
            for (const auto& t : g.terms) rest += std::fabs(t.coef) * std::exp2(t.rate * n);
        } else if (best_is_const) {
            dom = std::fabs(g.konst);
            for (const auto& t : g.terms) rest += std::fabs(t.coef) * std::exp2(t.rate * n);
        } else {
            // past the turning point of 2^(rn)/n the linear ratio is
            // monotone too; do not lock before it
            if (best_rate > 0.0 && g.slope != 0.0 && n < 1.0 / (best_rate * kLn2)) return false;
            dom = std::fabs(best_coef) * std::exp2(best_rate * n);
            rest = std::fabs(g.konst) + std::fabs(g.slope * n);
            for (const auto& t : g.terms)
                if (t.rate != best_rate) rest += std::fabs(t.coef) * std::exp2(t.rate * n);
        }
        return dom >= 2.0 * rest && std::isfinite(rest);
    };
    std::int64_t n = std::max<std::int64_t>(n0, 1);
    for (int step = 0; step < 96; ++step) {
        if (locked(static_cast<double>(n))) {
            *out = n;
            return true;
        }
        n = n + std::max<std::int64_t>(1, n / 2);
        if (n > (std::int64_t{1} << 40)) break;
    }
    return false;
}

}  // namespace

TailInf integer_inf_from(const ExpSum& f, std::int64_t n0) {
    TailInf r;
    double lim = f.limit();
    std::int64_t nstar = 0;
    bool have_star = dominance_point(derivative_shape(f), n0, &nstar);
    if (have_star && nstar - n0 > 300000) have_star = false;  // enumeration out of reach
    std::int64_t n_end = have_star ? nstar : n0 + 4096;
    double best = kInf;
    std::int64_t arg = n0;
    for (std::int64_t n = n0; n <= n_end; ++n) {
        double v = f.eval(static_cast<double>(n));
        if (v < best) {
            best = v;
            arg = n;
        }
    }
    if (have_star) {
        // beyond nstar the derivative sign is locked: f is monotone there
        if (lim < best) {
            r.value = lim;
            r.exact = true;
            r.at_limit = true;
            r.argmin = n_end;
        } else {
            r.value = best;
            r.exact = true;
            r.argmin = arg;
        }
    } else {
        r.value = std::min(best, lim);
        r.exact = false;
        r.argmin = arg;
        r.at_limit = lim < best;
    }
    return r;
}

TailInf integer_sup_from(const ExpSum& f, std::int64_t n0) {
    TailInf r = integer_inf_from(f.negated(), n0);
    r.value = -r.value;
    return r;
}

}  // namespace orbitforge
