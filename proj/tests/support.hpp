#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "wheelcalc/lincomb.hpp"

namespace wct {

using namespace wc;

// Random uni-trivalent graph: random perfect matching of all half-edges.
inline Diagram random_diagram(std::mt19937& rng, Space s, int nv, const std::vector<LegKind>& legs) {
    Diagram d;
    d.space = s;
    d.nv = nv;
    d.legs = legs;
    int H = d.num_half();
    std::vector<int> h(H);
    std::iota(h.begin(), h.end(), 0);
    std::shuffle(h.begin(), h.end(), rng);
    d.mate.assign(H, -1);
    for (int i = 0; i + 1 < H; i += 2) {
        d.mate[h[i]] = h[i + 1];
        d.mate[h[i + 1]] = h[i];
    }
    return d;
}

inline int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// Relabel vertices by vperm (old i -> new vperm[i]), permute the slots of
// every vertex, and reorder legs by order (order[k] = old leg at k).
// Returns the sign s with d = s * result.
inline int relabel(const Diagram& d, const std::vector<int>& vperm,
                   const std::vector<std::array<int, 3>>& slots, const std::vector<int>& order,
                   Diagram& out) {
    int nv = d.nv, L = d.num_legs();
    std::vector<int> hmap(d.num_half());
    int sign = 1;
    for (int i = 0; i < nv; ++i) {
        std::vector<int> sp(slots[i].begin(), slots[i].end());
        sign *= perm_sign(sp);
        for (int s = 0; s < 3; ++s) hmap[3 * i + slots[i][s]] = 3 * vperm[i] + s;
    }
    std::vector<int> odd;
    for (int k = 0; k < L; ++k) {
        hmap[3 * nv + order[k]] = 3 * nv + k;
        odd.push_back(sign_grade(d.space, d.legs[k]));
    }
    sign *= koszul_sign(order, odd);
    out = d;
    for (int k = 0; k < L; ++k) out.legs[k] = d.legs[order[k]];
    for (int h = 0; h < d.num_half(); ++h) out.mate[hmap[h]] = hmap[d.mate[h]];
    return sign;
}

inline int random_relabel(std::mt19937& rng, const Diagram& d, const std::vector<char>& leg_free,
                          Diagram& out) {
    std::vector<int> vp(d.nv);
    std::iota(vp.begin(), vp.end(), 0);
    std::shuffle(vp.begin(), vp.end(), rng);
    std::vector<std::array<int, 3>> sl(d.nv);
    for (auto& a : sl) {
        a = {0, 1, 2};
        std::shuffle(a.begin(), a.end(), rng);
    }
    // shuffle legs among free positions sharing a kind
    std::vector<int> order(d.num_legs());
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < kNumKinds; ++k) {
        std::vector<int> pos;
        for (int j = 0; j < d.num_legs(); ++j)
            if (leg_free[j] && static_cast<int>(d.legs[j]) == k) pos.push_back(j);
        auto vals = pos;
        std::shuffle(vals.begin(), vals.end(), rng);
        for (std::size_t t = 0; t < pos.size(); ++t) order[pos[t]] = vals[t];
    }
    return relabel(d, vp, sl, order, out);
}

// Exhaustive oracle: does some symmetry fix d with sign -1?
inline bool oracle_vanishes(const Diagram& d, const std::vector<char>& leg_free) {
    int nv = d.nv, L = d.num_legs();
    std::vector<int> vp(nv);
    std::iota(vp.begin(), vp.end(), 0);
    std::vector<std::array<int, 3>> perms3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    std::vector<std::vector<int>> legorders;
    {
        std::vector<int> free;
        for (int j = 0; j < L; ++j)
            if (leg_free[j]) free.push_back(j);
        auto vals = free;
        do {
            bool ok = true;
            for (std::size_t t = 0; t < free.size(); ++t)
                if (d.legs[free[t]] != d.legs[vals[t]]) ok = false;
            if (!ok) continue;
            std::vector<int> order(L);
            std::iota(order.begin(), order.end(), 0);
            for (std::size_t t = 0; t < free.size(); ++t) order[free[t]] = vals[t];
            legorders.push_back(order);
        } while (std::next_permutation(vals.begin(), vals.end()));
    }
    do {
        int total = 1;
        for (int i = 0; i < nv; ++i) total *= 6;
        for (int code = 0; code < total; ++code) {
            std::vector<std::array<int, 3>> sl(nv);
            int c = code;
            for (int i = 0; i < nv; ++i) {
                sl[i] = perms3[c % 6];
                c /= 6;
            }
            for (auto& order : legorders) {
                Diagram r;
                int s = relabel(d, vp, sl, order, r);
                if (r == d && s == -1) return true;
            }
        }
    } while (std::next_permutation(vp.begin(), vp.end()));
    return false;
}

}  // namespace wct
