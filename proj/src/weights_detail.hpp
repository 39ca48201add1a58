#pragma once

// Internal surface between the dispatching layer and the real-line
// implementation of the weight operations.

#include "orbitforge/weights.hpp"

namespace orbitforge::detail {

double real_local_norm_pow(const RealWeight& w, const RealUnion& k, double p);
double real_sup_on(const RealWeight& w, const RealUnion& k);
double real_weighted_norm_pow(const StepVec& f, const RealWeight& w, double p);
MBound real_m_bound(const RealWeight& w, const RealPoint& s, int max_anchor);

}  // namespace orbitforge::detail
