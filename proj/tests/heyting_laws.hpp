#pragma once

#include <string>
#include <vector>

#include "hecc/topology.hpp"

namespace hecc::testing {

/// Checks the standard complete Heyting algebra identities on every tuple of
/// opens of `topo`. Returns the first violation, or an empty string.
inline std::string heyting_law_violation(const FiniteTopology& topo) {
    const std::vector<OpenSet> opens = topo.opens();
    const OpenSet top = topo.full();
    auto name = [&](const OpenSet& o) { return topo.render(o.bits()); };

    for (const auto& x : opens)
        for (const auto& a : opens)
            for (const auto& b : opens) {
                if (exponential(exponential(x, b), a) != exponential(x, meet(a, b)))
                    return "(x^b)^a = x^(a meet b) fails at x=" + name(x) + " a=" + name(a) + " b=" + name(b);
                if (meet(exponential(x, a), exponential(x, b)) != exponential(x, join(a, b)))
                    return "x^a meet x^b = x^(a join b) fails at x=" + name(x) + " a=" + name(a) + " b=" + name(b);
            }

    for (const auto& a : opens) {
        std::vector<OpenSet> family;
        for (const auto& t : opens) family.push_back(exponential(t, exponential(t, a)));
        if (meet_family(topo, family) != a) return "meet of t^(t^a) = a fails at a=" + name(a);
    }

    const std::size_t n = opens.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<OpenSet> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) s.push_back(opens[i]);
        for (const auto& a : opens) {
            std::vector<OpenSet> family;
            for (const auto& t : s) family.push_back(exponential(a, t));
            if (meet_family(topo, family) != exponential(a, join_family(topo, s)))
                return "meet of a^t over S = a^(join S) fails at a=" + name(a);
        }
        if (meet_family(topo, s) == top)
            for (const auto& t : s)
                if (t != top) return "meet S = X implies members are X fails";
    }

    if (meet_family(topo, {}) != top) return "empty meet is not X";

    for (const auto& x : opens)
        for (const auto& y : opens) {
            if (!x.subset_of(exponential(x, y))) return "x <= x^y fails at x=" + name(x) + " y=" + name(y);
            if (meet(exponential(x, y), exponential(y, x)) == top && x != y)
                return "x^y meet y^x = X implies x = y fails at x=" + name(x) + " y=" + name(y);
        }
    return {};
}

/// x <= z^y iff x meet y <= z, for all opens.
inline bool adjunction_holds(const FiniteTopology& topo) {
    const auto opens = topo.opens();
    for (const auto& x : opens)
        for (const auto& y : opens)
            for (const auto& z : opens)
                if (x.subset_of(exponential(z, y)) != meet(x, y).subset_of(z)) return false;
    return true;
}

}  // namespace hecc::testing
