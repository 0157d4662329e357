#include "wheelcalc/quotient.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "wheelcalc/maps.hpp"

namespace wc {

LegRule leg_rule(Space s, LegKind x, LegKind y) {
    using K = LegKind;
    switch (base_space(s)) {
        case Space::A:
            return {RuleType::stu, K::p1};
        case Space::What:
            if (x == K::p1 && y == K::p1) return {RuleType::clifford, K::p1};
            if (x == K::f2 && y == K::f2) return {RuleType::stu, K::f2};
            return {RuleType::stu, K::p1};
        case Space::WhatF:
            if (x == K::p1 && y == K::p1) return {RuleType::clifford, K::p1};
            if (x == K::F && y == K::F) return {RuleType::stu, K::F};
            return {};
        case Space::WhatWedge:
            if (x == K::F && y == K::F) return {RuleType::stu, K::F};
            return {};
        default:
            return {};
    }
}

bool has_clifford(Space s) {
    Space b = base_space(s);
    return b == Space::What || b == Space::WhatF;
}

namespace {

// Partner of h in the builder's edge list; the edge is removed.
int cut(Builder& b, int h) {
    auto& e = b.edges;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i].first == h || e[i].second == h) {
            int m = e[i].first == h ? e[i].second : e[i].first;
            e[i] = e.back();
            e.pop_back();
            return m;
        }
    throw StructuralError("half-edge without edge");
}

void drop_vertex(Builder& b, int v) {
    b.verts.erase(b.verts.begin() + v);
}

// Grade-1 legs plus two per circle; no relation increases it.
int clifford_weight(const Diagram& d) {
    return static_cast<int>(std::count(d.legs.begin(), d.legs.end(), LegKind::p1)) + 2 * d.loops;
}

bool same_stream(Space s, LegKind x, LegKind y) {
    auto cx = leg_class(s, x), cy = leg_class(s, y);
    return cx.stream && cy.stream && cx.cls == cy.cls;
}

Diagram swap_adjacent(const Diagram& d, int i) {
    std::vector<int> order(d.num_legs());
    for (int k = 0; k < d.num_legs(); ++k) order[k] = k;
    std::swap(order[i], order[i + 1]);
    return permute_legs(d, order);
}

// Legs i, i+1 replaced by one leg of kind k on a new vertex joined to their
// attachment points.  Empty when the two legs form a strut.
std::optional<Diagram> contract_pair(const Diagram& d, int i, LegKind k) {
    int hi = d.leg_half(i), hj = d.leg_half(i + 1);
    if (d.mate[hi] == hj) return std::nullopt;
    Builder b = to_builder(d);
    int p = cut(b, hi), q = cut(b, hj);
    b.legs.erase(b.legs.begin() + i, b.legs.begin() + i + 2);
    int l = b.half(), r = b.half(), n = b.half(), leg = b.half();
    if (conventions().stu_reversed) b.vertex(r, l, n);
    else b.vertex(l, r, n);
    b.join(l, p);
    b.join(r, q);
    b.join(n, leg);
    b.legs.insert(b.legs.begin() + i, {k, leg});
    return b.build();
}

LinComb pair_relation(const Diagram& d, int i) {
    LinComb r(d.space);
    auto rule = leg_rule(d.space, d.legs[i], d.legs[i + 1]);
    if (rule.type == RuleType::none) return r;
    int eps = (sign_grade(d.space, d.legs[i]) && sign_grade(d.space, d.legs[i + 1])) ? -1 : 1;
    r.add(d, 1);
    r.add(swap_adjacent(d, i), -eps);
    if (rule.type == RuleType::stu) {
        if (auto u = contract_pair(d, i, rule.target)) r.add(*u, -1);
    } else {
        r.add(glue_legs(d, {{i, i + 1}}), -conventions().clifford_coeff);
    }
    return r;
}

// The two other terms of IHX at the internal edge through half x.
LinComb ihx_relation(const Diagram& d, int x) {
    int y = d.mate[x];
    int u = x / 3, v = y / 3;
    int su = x % 3, sv = y % 3;
    int ua = 3 * u + (su + 1) % 3, ub = 3 * u + (su + 2) % 3;
    int vc = 3 * v + (sv + 1) % 3, vd = 3 * v + (sv + 2) % 3;
    std::array<int, 4> stub = {ua, ub, vc, vd};
    LinComb r(d.space);
    r.add(d, 1);
    // roles a b c d = 0 1 2 3; each layout lists the roles of (u1, u2, v1, v2)
    const std::array<std::array<int, 4>, 2> layouts = {{{1, 2, 0, 3}, {2, 0, 1, 3}}};
    for (auto& lay : layouts) {
        Builder b = to_builder(d);
        std::vector<std::pair<int, int>> kept;
        auto touches = [&](int h) { return h / 3 == u || h / 3 == v; };
        for (auto& e : b.edges)
            if (!(e.first < 3 * d.nv && touches(e.first)) && !(e.second < 3 * d.nv && touches(e.second)))
                kept.push_back(e);
        b.edges = kept;
        int hi = std::max(u, v), lo = std::min(u, v);
        drop_vertex(b, hi);
        drop_vertex(b, lo);
        auto nu = b.vertex(), nv = b.vertex();
        b.join(nu[0], nv[0]);
        std::array<int, 4> fresh{};
        fresh[lay[0]] = nu[1];
        fresh[lay[1]] = nu[2];
        fresh[lay[2]] = nv[1];
        fresh[lay[3]] = nv[2];
        for (int role = 0; role < 4; ++role) {
            int m = d.mate[stub[role]];
            auto it = std::find(stub.begin(), stub.end(), m);
            if (it != stub.end()) {
                int other = static_cast<int>(it - stub.begin());
                if (other > role) b.join(fresh[role], fresh[other]);
            } else {
                b.join(fresh[role], m);
            }
        }
        r.add(b.build(), 1);
    }
    return r;
}

}  // namespace

std::vector<LinComb> relations_at(const Diagram& d, int p1cap) {
    std::vector<LinComb> out;
    auto push = [&](LinComb&& r) {
        if (!r.is_zero()) out.push_back(std::move(r));
    };
    const int nv = d.nv, L = d.num_legs();
    for (int h = 0; h < 3 * nv; ++h) {
        int m = d.mate[h];
        if (m < 3 * nv && h < m && h / 3 != m / 3) push(ihx_relation(d, h));
    }
    for (int i = 0; i + 1 < L; ++i)
        if (same_stream(d.space, d.legs[i], d.legs[i + 1])) push(pair_relation(d, i));
    // d as a contraction term
    const LegKind kinds[] = {LegKind::p1, LegKind::f2, LegKind::F};
    for (int w = 0; w < nv; ++w)
        for (int s = 0; s < 3; ++s) {
            int m = d.mate[3 * w + s];
            if (!d.is_leg_half(m)) continue;
            int j = d.leg_of(m);
            LegKind k = d.legs[j];
            if (!leg_class(d.space, k).stream) continue;
            int left = 3 * w + (s + 1) % 3, right = 3 * w + (s + 2) % 3;
            if (conventions().stu_reversed) std::swap(left, right);
            for (LegKind k1 : kinds)
                for (LegKind k2 : kinds) {
                    if (!allows(d.space, k1) || !allows(d.space, k2) || !same_stream(d.space, k1, k2))
                        continue;
                    auto rule = leg_rule(d.space, k1, k2);
                    if (rule.type != RuleType::stu || rule.target != k) continue;
                    Builder b = to_builder(d);
                    int lm = cut(b, left), rm = cut(b, right);
                    cut(b, 3 * w + s);
                    drop_vertex(b, w);
                    b.legs.erase(b.legs.begin() + j);
                    int l1 = b.half(), l2 = b.half();
                    b.legs.insert(b.legs.begin() + j, {{k1, l1}, {k2, l2}});
                    b.join(l1, lm);
                    b.join(l2, rm);
                    push(pair_relation(b.build(), j));
                }
        }
    if (has_clifford(d.space)) {
        int lo = 0, hi = 0;
        auto c0 = leg_class(d.space, LegKind::p1);
        while (lo < L && leg_class(d.space, d.legs[lo]).cls < c0.cls) ++lo;
        hi = lo;
        while (hi < L && leg_class(d.space, d.legs[hi]).cls == c0.cls) ++hi;
        bool grow = clifford_weight(d) + 2 <= p1cap;
        for (int i = lo; i <= hi; ++i) {
            for (int h = 0; h < d.num_half() && grow; ++h) {
                int m = d.mate[h];
                if (h >= m) continue;
                Builder b = to_builder(d);
                cut(b, h);
                int l1 = b.half(), l2 = b.half();
                b.legs.insert(b.legs.begin() + i, {{LegKind::p1, l1}, {LegKind::p1, l2}});
                b.join(l1, h);
                b.join(l2, m);
                push(pair_relation(b.build(), i));
            }
            if (d.loops > 0) {
                Builder b = to_builder(d);
                b.loops--;
                int l1 = b.half(), l2 = b.half();
                b.legs.insert(b.legs.begin() + i, {{LegKind::p1, l1}, {LegKind::p1, l2}});
                b.join(l1, l2);
                push(pair_relation(b.build(), i));
            }
        }
    }
    return out;
}

std::vector<Diagram> enumerate_slice(const Slice& sl, std::size_t budget) {
    if (budget == 0) budget = conventions().budget * 10;
    std::vector<LegKind> legs = sl.legs;
    std::sort(legs.begin(), legs.end());
    std::vector<std::vector<LegKind>> orders;
    bool ordered = false;
    for (auto k : legs)
        if (leg_class(sl.space, k).stream) ordered = true;
    if (ordered) {
        do {
            bool ok = true, op = false;
            for (auto k : legs) {
                if (is_op(k)) op = true;
                else if (op) ok = false;
            }
            if (ok) orders.push_back(legs);
        } while (std::next_permutation(legs.begin(), legs.end()));
    } else {
        std::stable_partition(legs.begin(), legs.end(), [](LegKind k) { return !is_op(k); });
        orders.push_back(legs);
    }
    int H = 3 * sl.nv + static_cast<int>(legs.size());
    std::vector<Diagram> out;
    if (H % 2) return out;
    std::size_t work = 0;
    std::map<Diagram, int> seen;
    for (auto& ord : orders) {
        Diagram d;
        d.space = sl.space;
        d.nv = sl.nv;
        d.legs = ord;
        d.mate.assign(H, -1);
        std::function<void()> rec = [&]() {
            int h = 0;
            while (h < H && d.mate[h] >= 0) ++h;
            if (h == H) {
                if (++work > budget) throw BudgetExceeded("enumerate_slice: budget exceeded");
                auto c = canonical_form(d);
                if (c.sign != 0) seen.emplace(c.d, 0);
                return;
            }
            for (int m = h + 1; m < H; ++m)
                if (d.mate[m] < 0) {
                    d.mate[h] = m;
                    d.mate[m] = h;
                    rec();
                    d.mate[h] = d.mate[m] = -1;
                }
        };
        rec();
    }
    for (auto& [d, _] : seen) out.push_back(d);
    return out;
}

namespace {

struct Component {
    std::vector<int> ids;  // sorted by key
    std::unordered_map<int, int> rank;
    std::map<int, std::vector<std::pair<int, Q>>> rows;  // pivot rank -> row, descending
};

class Closure {
public:
    Closure(Space s, int cap) : space_(s), cap_(cap) {}

    LinComb reduce(const LinComb& x) {
        std::map<int, std::map<int, Q>> by_comp;
        for (auto& [d, c] : x.terms) {
            int id = ensure(d);
            int ci = comp_of_[id];
            by_comp[ci][comps_[ci]->rank.at(id)] += c;
        }
        LinComb out(x.space);
        for (auto& [ci, acc] : by_comp) {
            Component& C = *comps_[ci];
            eliminate(C, acc);
            for (auto& [rk, c] : acc) out.add_canonical(diagrams_[C.ids[rk]], c);
        }
        return out;
    }

    QuotientStats stats() const {
        QuotientStats s;
        s.diagrams = diagrams_.size();
        s.relations = relations_;
        s.components = comps_.size();
        return s;
    }

private:
    static void eliminate(const Component& C, std::map<int, Q>& acc) {
        auto cur = acc.end();
        while (cur != acc.begin()) {
            --cur;
            auto row = C.rows.find(cur->first);
            if (row == C.rows.end()) continue;
            Q c = cur->second;
            int piv = cur->first;
            for (auto& [rk, v] : row->second) {
                auto t = acc.try_emplace(rk, 0).first;
                t->second -= c * v;
                if (t->second == 0) acc.erase(t);
            }
            cur = acc.lower_bound(piv);
        }
    }

    int intern(const Diagram& d) {
        auto [it, fresh] = index_.try_emplace(d, static_cast<int>(diagrams_.size()));
        if (fresh) {
            diagrams_.push_back(d);
            keys_.push_back(serialize(d));
            comp_of_.push_back(-1);
        }
        return it->second;
    }

    int ensure(const Diagram& d) {
        int id = intern(d);
        if (comp_of_[id] >= 0) return id;
        std::vector<int> members{id};
        std::vector<LinComb> rels;
        std::deque<int> q{id};
        std::unordered_map<int, char> in;
        in[id] = 1;
        std::size_t limit = conventions().budget;
        while (!q.empty()) {
            int cur = q.front();
            q.pop_front();
            Diagram dc = diagrams_[cur];
            for (auto& r : relations_at(dc, cap_)) {
                for (auto& [t, c] : r.terms) {
                    int tid = intern(t);
                    if (comp_of_[tid] >= 0) throw std::logic_error("relation closure is not symmetric");
                    if (in.emplace(tid, 1).second) {
                        members.push_back(tid);
                        q.push_back(tid);
                        if (members.size() > limit)
                            throw BudgetExceeded(std::string("relation closure in ") + space_name(space_) +
                                                 " exceeds budget");
                    }
                }
                rels.push_back(std::move(r));
            }
        }
        auto C = std::make_unique<Component>();
        std::sort(members.begin(), members.end(), [&](int a, int b) { return keys_[a] < keys_[b]; });
        C->ids = members;
        for (std::size_t k = 0; k < members.size(); ++k) C->rank[members[k]] = static_cast<int>(k);
        int ci = static_cast<int>(comps_.size());
        for (int m : members) comp_of_[m] = ci;
        // short relations first keeps fill-in low
        std::stable_sort(rels.begin(), rels.end(),
                         [](const LinComb& a, const LinComb& b) { return a.size() < b.size(); });
        for (auto& r : rels) {
            std::map<int, Q> acc;
            for (auto& [t, c] : r.terms) acc[C->rank.at(index_.at(t))] += c;
            for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
            eliminate(*C, acc);
            if (acc.empty()) continue;
            auto lead = std::prev(acc.end());
            Q inv = 1 / lead->second;
            std::vector<std::pair<int, Q>> row;
            for (auto it = acc.rbegin(); it != acc.rend(); ++it) row.emplace_back(it->first, it->second * inv);
            C->rows.emplace(lead->first, std::move(row));
        }
        relations_ += rels.size();
        comps_.push_back(std::move(C));
        return id;
    }

    Space space_;
    int cap_;
    std::map<Diagram, int> index_;
    std::vector<Diagram> diagrams_;
    std::vector<std::string> keys_;
    std::vector<int> comp_of_;
    std::vector<std::unique_ptr<Component>> comps_;
    std::size_t relations_ = 0;
};

std::mutex g_mutex;
std::map<std::pair<Space, int>, std::unique_ptr<Closure>> g_cache;

Closure& closure(Space s, int cap) {
    auto& slot = g_cache[{s, cap}];
    if (!slot) slot = std::make_unique<Closure>(s, cap);
    return *slot;
}

int default_cap(const LinComb& x) {
    if (!has_clifford(x.space)) return -1;
    int m = 0;
    for (auto& [d, c] : x.terms) m = std::max(m, clifford_weight(d));
    return m + conventions().clifford_slack;
}

}  // namespace

LinComb reduce(const LinComb& x, int p1cap) {
    if (!has_clifford(x.space)) p1cap = -1;
    else if (p1cap < 0) p1cap = default_cap(x);
    std::lock_guard<std::mutex> lock(g_mutex);
    return closure(x.space, p1cap).reduce(x);
}

bool equal_mod_direct(const LinComb& x, const LinComb& y, int p1cap) {
    if (x.space != y.space) throw StructuralError("equal_mod: space mismatch");
    return reduce(x - y, p1cap).is_zero();
}

bool equal_mod(const LinComb& x, const LinComb& y) {
    if (x.space != y.space) throw StructuralError("equal_mod: space mismatch");
    LinComb z = x - y;
    if (z.is_zero()) return true;
    Space b = base_space(z.space);
    if (b == Space::What) z = lambda_map(fat_to_F(z));
    else if (b == Space::WhatF) z = lambda_map(z);
    return reduce(z).is_zero();
}

std::vector<LinComb> relation_vectors(const Slice& s) {
    std::vector<LinComb> out;
    int cap = -1;
    if (has_clifford(s.space))
        cap = static_cast<int>(std::count(s.legs.begin(), s.legs.end(), LegKind::p1)) + conventions().clifford_slack;
    for (auto& d : enumerate_slice(s))
        for (auto& r : relations_at(d, cap)) out.push_back(std::move(r));
    return out;
}

int rank_of(const std::vector<LinComb>& v) {
    std::map<Diagram, int> col;
    for (auto& x : v)
        for (auto& [d, c] : x.terms) col.emplace(d, 0);
    int n = 0;
    for (auto& [d, k] : col) k = n++;
    std::map<int, std::map<int, Q>> rows;
    int rank = 0;
    for (auto& x : v) {
        std::map<int, Q> acc;
        for (auto& [d, c] : x.terms) acc[col[d]] = c;
        while (!acc.empty()) {
            auto lead = std::prev(acc.end());
            auto r = rows.find(lead->first);
            if (r == rows.end()) break;
            Q c = lead->second;
            for (auto& [k, t] : r->second) {
                Q& s = acc[k];
                s -= c * t;
                if (s == 0) acc.erase(k);
            }
        }
        if (acc.empty()) continue;
        auto lead = std::prev(acc.end());
        Q inv = 1 / lead->second;
        for (auto& [k, t] : acc) t *= inv;
        rows.emplace(lead->first, std::move(acc));
        ++rank;
    }
    return rank;
}

int dim(const Slice& s) {
    std::vector<LinComb> res;
    for (auto& d : enumerate_slice(s)) res.push_back(reduce(LinComb::of(d)));
    return rank_of(res);
}

void clear_quotient_caches() {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_cache.clear();
}

QuotientStats quotient_stats(Space s, int p1cap) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_cache.find({s, has_clifford(s) ? p1cap : -1});
    return it == g_cache.end() ? QuotientStats{} : it->second->stats();
}

}  // namespace wc
