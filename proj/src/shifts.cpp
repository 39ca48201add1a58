#include "orbitforge/shifts.hpp"

#include <algorithm>
#include <cmath>

namespace orbitforge {

namespace {

std::vector<GroupPoint> ladder_real(bool positive, bool negative, std::int64_t horizon,
                                    std::size_t max_count) {
    // dyadic ladder 1, 1/2, 2, 1/4, 4, ... up to |s| <= horizon
    std::vector<GroupPoint> out;
    int kmax = horizon >= 1 ? static_cast<int>(std::floor(std::log2(static_cast<double>(horizon)))) : 0;
    auto push = [&](double v) {
        if (out.size() >= max_count) return;
        if (positive) out.push_back(GroupPoint::real(v));
        if (negative && out.size() < max_count) out.push_back(GroupPoint::real(-v));
    };
    push(1.0);
    for (int k = 1; k <= std::max(kmax, 30) && out.size() < max_count; ++k) {
        push(std::exp2(-k));
        if (k <= kmax) push(std::exp2(k));
    }
    return out;
}

}  // namespace

std::vector<GroupPoint> enumerate_shifts(const ShiftSet& s, Space space, std::int64_t horizon,
                                         std::size_t max_count) {
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    std::vector<GroupPoint> out;
    switch (s.kind) {
        case ShiftSet::Kind::All:
        case ShiftSet::Kind::HalfLinePos:
        case ShiftSet::Kind::HalfLineNeg: {
            bool pos = s.kind != ShiftSet::Kind::HalfLineNeg;
            bool neg = s.kind != ShiftSet::Kind::HalfLinePos;
            if (space == Space::R) return ladder_real(pos, neg, horizon, max_count);
            if (space == Space::Zd)
                throw ArgumentError("half-line shift sets are not defined on Z^d; use a list");
            for (std::int64_t n = 1; n <= horizon && out.size() < max_count; ++n) {
                if (pos) out.push_back(GroupPoint::integer(n));
                if (neg && out.size() < max_count) out.push_back(GroupPoint::integer(-n));
            }
            return out;
        }
        case ShiftSet::Kind::SingleGenerator: {
            if (s.generator.space() != space) throw SpaceMismatchError("generator space mismatch");
            GroupPoint cur = s.generator;
            for (std::int64_t n = 1; out.size() < max_count; ++n) {
                if (space == Space::Z && std::llabs(static_cast<long long>(cur.as_int())) > horizon) break;
                if (space == Space::R && std::fabs(cur.as_real().offset) > static_cast<double>(horizon))
                    break;
                if (space == Space::Zd) {
                    std::int64_t m = 0;
                    for (auto v : cur.as_lattice())
                        m = std::max<std::int64_t>(m, v < 0 ? -v : v);
                    if (m > horizon) break;
                }
                out.push_back(cur);
                cur = add(cur, s.generator);
            }
            return out;
        }
        case ShiftSet::Kind::List: {
            out = s.list;
            for (const auto& p : out)
                if (p.space() != space) throw SpaceMismatchError("list shift space mismatch");
            std::sort(out.begin(), out.end(),
                      [](const GroupPoint& a, const GroupPoint& b) { return canon_less(a, b); });
            if (out.size() > max_count) out.resize(max_count);
            return out;
        }
        case ShiftSet::Kind::Arithmetic: {
            if (space != Space::Z) throw ArgumentError("arithmetic shift sets live on Z");
            if (s.step == 0) throw ArgumentError("arithmetic step must be nonzero");
            for (std::int64_t v = s.a; std::llabs(v) <= horizon && out.size() < max_count; v += s.step)
                out.push_back(GroupPoint::integer(v));
            return out;
        }
    }
    return out;
}

std::vector<int> tail_directions(const ShiftSet& s) {
    switch (s.kind) {
        case ShiftSet::Kind::All: return {+1, -1};
        case ShiftSet::Kind::HalfLinePos: return {+1};
        case ShiftSet::Kind::HalfLineNeg: return {-1};
        case ShiftSet::Kind::SingleGenerator: {
            if (s.generator.space() == Space::Z) {
                std::int64_t g = s.generator.as_int();
                if (g > 0) return {+1};
                if (g < 0) return {-1};
            }
            return {};
        }
        case ShiftSet::Kind::List: return {};
        case ShiftSet::Kind::Arithmetic: return {s.step > 0 ? +1 : -1};
    }
    return {};
}

}  // namespace orbitforge
