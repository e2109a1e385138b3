#pragma once

#include <cstddef>
#include <set>
#include <vector>

namespace hecc::testing {

using PointSet = std::set<int>;
using Family = std::set<PointSet>;

/// Naive topology enumeration over explicit point sets: every family of
/// subsets containing the empty set and the whole space, kept when closed
/// under pairwise union and intersection.
inline std::vector<Family> naive_topologies(int n) {
    std::vector<PointSet> subsets;
    for (int m = 0; m < (1 << n); ++m) {
        PointSet s;
        for (int i = 0; i < n; ++i)
            if (m & (1 << i)) s.insert(i);
        subsets.push_back(s);
    }
    PointSet whole = subsets.back();
    std::vector<PointSet> proper(subsets.begin() + 1, subsets.end() - 1);

    std::vector<Family> out;
    for (long choice = 0; choice < (1L << proper.size()); ++choice) {
        Family f{PointSet{}, whole};
        for (std::size_t i = 0; i < proper.size(); ++i)
            if (choice & (1L << i)) f.insert(proper[i]);
        bool closed = true;
        for (const auto& a : f) {
            for (const auto& b : f) {
                PointSet u = a, in;
                u.insert(b.begin(), b.end());
                for (int p : a)
                    if (b.count(p)) in.insert(p);
                if (!f.count(u) || !f.count(in)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) out.push_back(f);
    }
    return out;
}

/// b^a straight from the definition: the union of every open t whose
/// intersection with a lies inside b.
inline PointSet naive_exponential(const Family& opens, const PointSet& b, const PointSet& a) {
    PointSet out;
    for (const auto& t : opens) {
        bool inside = true;
        for (int p : t)
            if (a.count(p) && !b.count(p)) inside = false;
        if (inside) out.insert(t.begin(), t.end());
    }
    return out;
}

}  // namespace hecc::testing
