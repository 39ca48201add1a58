#pragma once

#include <vector>

#include "orbitforge/group.hpp"

namespace orbitforge {

/// Descriptor of the shift set S. Enumerable in canonical order within any
/// horizon; on R the half-line variants enumerate the dyadic ladder +-2^k.
struct ShiftSet {
    enum class Kind { All, HalfLinePos, HalfLineNeg, SingleGenerator, List, Arithmetic };
    Kind kind = Kind::All;
    GroupPoint generator;           // SingleGenerator: semigroup powers n*g, n >= 1
    std::vector<GroupPoint> list;   // List
    std::int64_t a = 0, step = 1;   // Arithmetic on Z: a, a+step, a+2*step, ...

    static ShiftSet all() { return ShiftSet{Kind::All, {}, {}, 0, 1}; }
    static ShiftSet half_line_pos() { return ShiftSet{Kind::HalfLinePos, {}, {}, 0, 1}; }
    static ShiftSet half_line_neg() { return ShiftSet{Kind::HalfLineNeg, {}, {}, 0, 1}; }
    static ShiftSet single(GroupPoint g) { return ShiftSet{Kind::SingleGenerator, std::move(g), {}, 0, 1}; }
    static ShiftSet of_list(std::vector<GroupPoint> pts) { return ShiftSet{Kind::List, {}, std::move(pts), 0, 1}; }
    static ShiftSet arithmetic(std::int64_t a, std::int64_t step) { return ShiftSet{Kind::Arithmetic, {}, {}, a, step}; }
};

/// Canonical enumeration of S within the horizon (|s| <= horizon on Z,
/// ladder exponent bounded on R), capped at max_count entries.
std::vector<GroupPoint> enumerate_shifts(const ShiftSet& s, Space space, std::int64_t horizon,
                                         std::size_t max_count = 1u << 20);

/// Unbounded directions of S on Z as a subset of {+1, -1}; tail
/// certification analyses the criterion functionals along these.
std::vector<int> tail_directions(const ShiftSet& s);

}  // namespace orbitforge
