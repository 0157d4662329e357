// Canonical labelling by breadth-first traversal.  Each component is
// explored from every admissible starting point; whenever a new vertex is
// reached through one of its half-edges the two possible orientations are
// branched on.  The lexicographically least token sequence wins, and a
// second path reaching the same sequence with the opposite sign exhibits an
// odd automorphism, so the diagram vanishes.

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "wheelcalc/lincomb.hpp"

namespace wc {

LegClass leg_class(Space s, LegKind k) {
    bool op = is_op(k), par = is_param(k);
    switch (s) {
        case Space::B:
        case Space::W:
            return {0, false};
        case Space::A:
        case Space::Wtilde:
        case Space::What:
            return {0, true};
        case Space::What_ab:
            if (par) return {1, false};
            if (op) return {2, false};
            return {0, true};
        case Space::WhatF:
            return k == LegKind::p1 ? LegClass{0, true} : LegClass{1, true};
        case Space::WhatWedge:
            return k == LegKind::F ? LegClass{0, true} : LegClass{1, false};
        case Space::WhatF_ab:
            if (par) return {2, false};
            if (op) return {3, false};
            return k == LegKind::p1 ? LegClass{0, true} : LegClass{1, true};
        case Space::WhatWedge_ab:
            if (par) return {2, false};
            if (op) return {3, false};
            return k == LegKind::F ? LegClass{0, true} : LegClass{1, false};
    }
    return {};
}

namespace {

using Tok = std::int64_t;
constexpr Tok tok(int type, int a, int b) {
    return (static_cast<Tok>(type) << 40) | (static_cast<Tok>(a) << 20) | static_cast<Tok>(b);
}
enum : int { T_STREAM = 0, T_FREE = 1, T_VERT = 2, T_START = 3 };

struct Path {
    std::vector<int> label;                 // original vertex -> local label
    std::vector<int> order;                 // local label -> original vertex
    std::vector<std::array<int, 3>> slots;  // local label -> original halves
    std::vector<int> leg_idx;               // original leg -> local index per kind
    std::array<int, kNumKinds> kcount{};
    std::vector<Tok> toks;
    int vsign = 1;
    int root = -1;
    int q = 0;
    int slot = 1;
};

struct Best {
    bool have = false;
    std::vector<Tok> toks;
    Path path;
    int vsign = 1;
    int lsign = 1;
    bool conflict = false;
};

struct Searcher {
    const Diagram& d;
    const std::vector<int>& sorted_pos;  // original leg -> position after class sort
    const std::vector<char>& stream;     // original leg -> stream class?
    const std::vector<int>& odd;         // original leg -> odd?
    const std::vector<int>& comp_legs;   // legs of this component
    Best best;

    bool emit(Path& p, Tok t, int& cmp) {
        if (best.have && cmp == 0) {
            std::size_t i = p.toks.size();
            Tok b = best.toks[i];
            if (t > b) return false;
            if (t < b) cmp = 1;
        }
        p.toks.push_back(t);
        return true;
    }

    static void orient(Path& p, int u, int entry_half, int dir) {
        int s = entry_half % 3;
        int L = static_cast<int>(p.order.size());
        p.label[u] = L;
        p.order.push_back(u);
        if (dir == 0) p.slots.push_back({entry_half, 3 * u + (s + 1) % 3, 3 * u + (s + 2) % 3});
        else {
            p.slots.push_back({entry_half, 3 * u + (s + 2) % 3, 3 * u + (s + 1) % 3});
            p.vsign = -p.vsign;
        }
    }

    void run(Path p, int cmp) {
        while (true) {
            int h;
            if (p.root >= 0) {
                h = p.root;
                p.root = -1;
            } else {
                if (p.q >= static_cast<int>(p.order.size())) break;
                h = p.slots[p.q][p.slot];
                if (++p.slot == 3) {
                    ++p.q;
                    p.slot = 1;
                }
            }
            int m = d.mate[h];
            if (d.is_leg_half(m)) {
                int j = d.leg_of(m);
                Tok t;
                if (stream[j]) t = tok(T_STREAM, sorted_pos[j], 0);
                else {
                    int k = static_cast<int>(d.legs[j]);
                    if (p.leg_idx[j] < 0) p.leg_idx[j] = p.kcount[k]++;
                    t = tok(T_FREE, k, p.leg_idx[j]);
                }
                if (!emit(p, t, cmp)) return;
                continue;
            }
            int u = m / 3;
            if (p.label[u] >= 0) {
                int L = p.label[u];
                int s = p.slots[L][0] == m ? 0 : (p.slots[L][1] == m ? 1 : 2);
                if (!emit(p, tok(T_VERT, L, s), cmp)) return;
                continue;
            }
            if (!emit(p, tok(T_VERT, static_cast<int>(p.order.size()), 0), cmp)) return;
            Path p2 = p;
            orient(p2, u, m, 1);
            orient(p, u, m, 0);
            run(std::move(p2), cmp);
            // the sibling may have replaced best
            cmp = 0;
            for (std::size_t i = 0; i < p.toks.size(); ++i) {
                if (p.toks[i] < best.toks[i]) {
                    cmp = 1;
                    break;
                }
                if (p.toks[i] > best.toks[i]) return;
            }
            run(std::move(p), cmp);
            return;
        }
        finish(p, cmp);
    }

    int local_leg_sign(const Path& p) const {
        std::vector<int> fl;
        for (int j : comp_legs)
            if (!stream[j]) fl.push_back(j);
        std::sort(fl.begin(), fl.end(), [&](int x, int y) {
            if (d.legs[x] != d.legs[y]) return d.legs[x] < d.legs[y];
            return p.leg_idx[x] < p.leg_idx[y];
        });
        int inv = 0;
        for (std::size_t x = 0; x < fl.size(); ++x)
            if (odd[fl[x]])
                for (std::size_t y = x + 1; y < fl.size(); ++y)
                    if (odd[fl[y]] && sorted_pos[fl[x]] > sorted_pos[fl[y]]) ++inv;
        return inv % 2 ? -1 : 1;
    }

    void finish(const Path& p, int cmp) {
        int ls = local_leg_sign(p);
        int total = ls * p.vsign;
        if (!best.have || cmp == 1) {
            best.have = true;
            best.toks = p.toks;
            best.path = p;
            best.vsign = p.vsign;
            best.lsign = ls;
            best.conflict = false;
        } else if (total != best.vsign * best.lsign) {
            best.conflict = true;
        }
    }
};

}  // namespace

int koszul_sign(const std::vector<int>& order, const std::vector<int>& odd) {
    int inv = 0;
    for (std::size_t x = 0; x < order.size(); ++x)
        if (odd[order[x]])
            for (std::size_t y = x + 1; y < order.size(); ++y)
                if (odd[order[y]] && order[x] > order[y]) ++inv;
    return inv % 2 ? -1 : 1;
}

CanonResult canonical_form(const Diagram& d) {
    const int nv = d.nv, L = d.num_legs(), H = d.num_half();
    for (int i = 0; i < nv; ++i)
        for (int s = 0; s < 3; ++s)
            if (d.mate[3 * i + s] / 3 == i && !d.is_leg_half(d.mate[3 * i + s])) return {Diagram{}, 0};

    std::vector<LegClass> ci(L);
    std::vector<int> odd(L), by_class(L);
    std::vector<char> stream(L);
    for (int j = 0; j < L; ++j) {
        ci[j] = leg_class(d.space, d.legs[j]);
        odd[j] = sign_grade(d.space, d.legs[j]);
        stream[j] = ci[j].stream;
    }
    std::iota(by_class.begin(), by_class.end(), 0);
    std::stable_sort(by_class.begin(), by_class.end(),
                     [&](int x, int y) { return ci[x].cls < ci[y].cls; });
    std::vector<int> sorted_pos(L);
    for (int k = 0; k < L; ++k) sorted_pos[by_class[k]] = k;

    std::vector<int> comp;
    int nc = components(d, comp);
    std::vector<std::vector<int>> cverts(nc), clegs(nc);
    for (int i = 0; i < nv; ++i) cverts[comp[3 * i]].push_back(i);
    for (int j = 0; j < L; ++j) clegs[comp[d.leg_half(j)]].push_back(j);

    struct CompRes {
        int kind;   // 0 anchored, 1 free, 2 closed
        int anchor;
        Best best;
        int nodd = 0;
    };
    std::vector<CompRes> res;
    res.reserve(nc);

    Path blank;
    blank.label.assign(nv, -1);
    blank.leg_idx.assign(L, -1);

    for (int c = 0; c < nc; ++c) {
        CompRes cr;
        Searcher S{d, sorted_pos, stream, odd, clegs[c], {}};
        int anchor = -1;
        for (int j : clegs[c])
            if (stream[j] && (anchor < 0 || sorted_pos[j] < sorted_pos[anchor])) anchor = j;
        if (anchor >= 0) {
            cr.kind = 0;
            cr.anchor = sorted_pos[anchor];
            Path p = blank;
            p.root = d.leg_half(anchor);
            S.run(p, 0);
        } else if (!clegs[c].empty()) {
            cr.kind = 1;
            cr.anchor = -1;
            LegKind kmin = d.legs[clegs[c][0]];
            for (int j : clegs[c]) kmin = std::min(kmin, d.legs[j]);
            for (int j : clegs[c]) {
                if (d.legs[j] != kmin) continue;
                Path p = blank;
                int cmp = 0;
                int k = static_cast<int>(kmin);
                p.leg_idx[j] = p.kcount[k]++;
                if (!S.emit(p, tok(T_START, k, 0), cmp)) continue;
                p.root = d.leg_half(j);
                S.run(p, cmp);
            }
        } else {
            cr.kind = 2;
            cr.anchor = -1;
            for (int v : cverts[c])
                for (int e = 0; e < 3; ++e)
                    for (int dir = 0; dir < 2; ++dir) {
                        Path p = blank;
                        Searcher::orient(p, v, 3 * v + e, dir);
                        p.slot = 0;
                        S.run(p, 0);
                    }
        }
        if (S.best.conflict) return {Diagram{}, 0};
        for (int j : clegs[c]) cr.nodd += odd[j];
        cr.best = std::move(S.best);
        res.push_back(std::move(cr));
    }

    std::sort(res.begin(), res.end(), [](const CompRes& x, const CompRes& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.kind == 0) return x.anchor < y.anchor;
        return x.best.toks < y.best.toks;
    });
    for (std::size_t c = 1; c < res.size(); ++c)
        if (res[c].kind == 1 && res[c - 1].kind == 1 && res[c].best.toks == res[c - 1].best.toks &&
            res[c].nodd % 2 == 1)
            return {Diagram{}, 0};

    CanonResult out;
    Diagram& r = out.d;
    r.space = d.space;
    r.nv = nv;
    r.loops = d.loops;
    std::vector<int> hmap(H, -1);
    std::vector<long> free_key(L, -1);
    std::array<int, kNumKinds> koff{};
    int vsign = 1, voff = 0;
    for (auto& cr : res) {
        const Path& p = cr.best.path;
        vsign *= cr.best.vsign;
        for (std::size_t l = 0; l < p.order.size(); ++l)
            for (int s = 0; s < 3; ++s) hmap[p.slots[l][s]] = 3 * (voff + static_cast<int>(l)) + s;
        voff += static_cast<int>(p.order.size());
        std::array<int, kNumKinds> cnt{};
        for (int j = 0; j < L; ++j)
            if (p.leg_idx[j] >= 0 && !stream[j]) {
                int k = static_cast<int>(d.legs[j]);
                free_key[j] = static_cast<long>(koff[k] + p.leg_idx[j]);
                cnt[k]++;
            }
        for (int k = 0; k < kNumKinds; ++k) koff[k] += cnt[k];
    }
    std::vector<int> final_order = by_class;
    auto first_free = std::find_if(final_order.begin(), final_order.end(),
                                   [&](int j) { return !stream[j]; });
    std::sort(first_free, final_order.end(), [&](int x, int y) {
        if (ci[x].cls != ci[y].cls) return ci[x].cls < ci[y].cls;
        if (d.legs[x] != d.legs[y]) return d.legs[x] < d.legs[y];
        return free_key[x] < free_key[y];
    });
    r.legs.resize(L);
    for (int k = 0; k < L; ++k) {
        r.legs[k] = d.legs[final_order[k]];
        hmap[d.leg_half(final_order[k])] = 3 * nv + k;
    }
    r.mate.assign(H, -1);
    for (int h = 0; h < H; ++h) r.mate[hmap[h]] = hmap[d.mate[h]];
    out.sign = vsign * koszul_sign(final_order, odd);
    return out;
}

}  // namespace wc
