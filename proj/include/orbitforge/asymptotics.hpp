#pragma once

#include <cstdint>
#include <vector>

#include "orbitforge/common.hpp"

namespace orbitforge {

/// Sum of exponentials plus an affine part, used as the log2-scale
/// asymptotic form of weight tails and of criterion functionals:
///
///     f(n) = sum_i coef_i * 2^(rate_i * n)  +  slope * n  +  konst
///
/// Values of this class are what tail certification manipulates: limits,
/// eventual signs and infima over integer half-lines are all decidable
/// because a nonzero exponential sum has finitely many real zeros and an
/// explicitly computable dominance point.
struct ExpSum {
    struct Term {
        double rate;  // != 0
        double coef;  // != 0
    };
    std::vector<Term> terms;  // distinct rates
    double slope = 0.0;
    double konst = 0.0;

    void add_term(double rate, double coef);
    ExpSum plus(const ExpSum& other) const;
    ExpSum negated() const;

    double eval(double n) const;

    /// Limit as n -> +inf in the extended reals. Negative-rate terms
    /// vanish; the dominant surviving contribution decides.
    double limit() const;

    /// Sign of f(n) for all sufficiently large n: -1, 0, +1.
    int eventual_sign() const;
};

struct TailInf {
    double value = 0.0;  // certified lower bound of the infimum
    bool exact = false;  // true when value equals the infimum over the integers
    std::int64_t argmin = 0;
    bool at_limit = false;
};

/// Certified infimum of f over the integers n >= n0. Enumerates exactly up
/// to a rigorous dominance point past which f is monotone, then closes with
/// the limit. Falls back to exact=false (sampled bound) if the dominance
/// point is out of enumeration reach.
TailInf integer_inf_from(const ExpSum& f, std::int64_t n0);

/// Certified supremum (same mechanics on -f).
TailInf integer_sup_from(const ExpSum& f, std::int64_t n0);

}  // namespace orbitforge
