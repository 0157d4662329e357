#include "wheelcalc/maps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wheelcalc/conventions.hpp"

namespace wc {

void for_each_pairing(const std::vector<int>& pos, const std::function<void(const Pairing&)>& f) {
    Pairing cur;
    std::vector<char> used(pos.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        while (i < pos.size() && used[i]) ++i;
        if (i == pos.size()) {
            f(cur);
            return;
        }
        used[i] = 1;
        rec(i + 1);
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            cur.emplace_back(pos[i], pos[j]);
            rec(i + 1);
            cur.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec(0);
}

int pairing_sign(const std::vector<LegKind>& kinds, const Pairing& p) {
    const int n = static_cast<int>(kinds.size());
    std::vector<char> paired(n, 0);
    for (auto [i, j] : p) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j || paired[i] || paired[j])
            throw StructuralError("ill-formed pairing");
        if (grade(kinds[i]) != 1 || grade(kinds[j]) != 1)
            throw StructuralError("pairing touches a grade-2 leg");
        paired[i] = paired[j] = 1;
    }
    int x = 0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        int i = std::min(p[a].first, p[a].second), j = std::max(p[a].first, p[a].second);
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            int k = std::min(p[b].first, p[b].second), l = std::max(p[b].first, p[b].second);
            if ((i < k && k < j && j < l) || (k < i && i < l && l < j)) ++x;
        }
        for (int q = i + 1; q < j; ++q)
            if (!paired[q] && grade(kinds[q]) == 1) ++x;
    }
    return x % 2 ? -1 : 1;
}

namespace {

void require(const LinComb& v, std::initializer_list<Space> ok, const char* name) {
    for (Space s : ok)
        if (v.space == s) return;
    throw StructuralError(std::string(name) + ": unexpected space " + space_name(v.space));
}

// Average over all permutations of the legs at `pos`, Koszul-signed when graded.
LinComb average(const Diagram& d, const std::vector<int>& pos, bool graded, Space target) {
    LinComb r(target);
    const int L = d.num_legs();
    std::vector<int> odd(L);
    for (int j = 0; j < L; ++j) odd[j] = graded ? grade(d.legs[j]) % 2 : 0;
    std::vector<int> vals = pos;
    std::sort(vals.begin(), vals.end());
    Q fact = 1;
    for (std::size_t i = 2; i <= vals.size(); ++i) fact *= static_cast<long>(i);
    Q w = 1 / fact;
    Diagram base = retag(d, target);
    do {
        std::vector<int> order(L);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t t = 0; t < pos.size(); ++t) order[pos[t]] = vals[t];
        int s = koszul_sign(order, odd);
        r.add(permute_legs(base, order), s > 0 ? w : Q(-w));
    } while (std::next_permutation(vals.begin(), vals.end()));
    return r;
}

Diagram fork(const Diagram& d, int j) { return fork_leg(d, j, LegKind::p1, conventions().fork_reversed); }

// Replace every leg of kind `from` by c1 * (leg of kind `to`) + c2 * fork.
LinComb split_legs(const Diagram& d, LegKind from, LegKind to, const Q& c1, const Q& c2, Space target) {
    std::vector<std::pair<Diagram, Q>> cur = {{retag(d, target), Q(1)}};
    for (int j = d.num_legs() - 1; j >= 0; --j) {
        if (d.legs[j] != from) continue;
        std::vector<std::pair<Diagram, Q>> next;
        for (auto& [x, c] : cur) {
            Diagram y = x;
            y.legs[j] = to;
            next.emplace_back(y, c * c1);
            next.emplace_back(fork(x, j), c * c2);
        }
        cur = std::move(next);
    }
    LinComb r(target);
    for (auto& [x, c] : cur) r.add(x, c);
    return r;
}

Space lambda_target(Space s) { return s == Space::WhatF_ab ? Space::WhatWedge_ab : Space::WhatWedge; }

}  // namespace

LinComb chi_B(const LinComb& v) {
    require(v, {Space::B}, "chi_B");
    LinComb r(Space::A);
    for (auto& [d, c] : v.terms) {
        std::vector<int> pos(d.num_legs());
        std::iota(pos.begin(), pos.end(), 0);
        r.add(average(d, pos, false, Space::A), c);
    }
    return r;
}

LinComb glue_partial(const LinComb& x, const LinComb& y) {
    require(x, {Space::B}, "glue_partial");
    require(y, {Space::B}, "glue_partial");
    LinComb r(Space::B);
    for (auto& [X, cx] : x.terms)
        for (auto& [Y, cy] : y.terms) {
            int k = X.num_legs(), m = Y.num_legs();
            if (k > m) continue;
            Diagram J = juxtapose(X, Y);
            std::vector<int> target(k, 0);
            std::vector<char> used(m, 0);
            std::function<void(int)> rec = [&](int i) {
                if (i == k) {
                    Pairing p;
                    for (int t = 0; t < k; ++t) p.emplace_back(t, k + target[t]);
                    r.add(glue_legs(J, p), cx * cy);
                    return;
                }
                for (int j = 0; j < m; ++j)
                    if (!used[j]) {
                        used[j] = 1;
                        target[i] = j;
                        rec(i + 1);
                        used[j] = 0;
                    }
            };
            rec(0);
        }
    return r;
}

LinComb omega(int leg_budget) {
    LinComb s(Space::B);
    const auto& tab = conventions().omega;
    for (std::size_t n = 1; n <= tab.size() && static_cast<int>(2 * n) <= leg_budget; ++n)
        s.add(wheel(Space::B, static_cast<int>(2 * n)), tab[n - 1]);
    if (leg_budget > 2 * static_cast<int>(tab.size()))
        throw BudgetExceeded("omega: coefficient table shorter than leg budget");
    auto trunc = [&](const LinComb& a) {
        LinComb t(Space::B);
        for (auto& [d, c] : a.terms)
            if (d.num_legs() <= leg_budget) t.add_canonical(d, c);
        return t;
    };
    LinComb result = LinComb::of(Diagram{}), power = result;
    for (int k = 1; 2 * k <= leg_budget; ++k) {
        power = trunc(disjoint_union(power, s));
        power *= Q(1, k);
        if (power.is_zero()) break;
        result += power;
    }
    return result;
}

LinComb d_omega(const LinComb& v) {
    require(v, {Space::B}, "d_omega");
    int maxl = 0;
    for (auto& [d, c] : v.terms) maxl = std::max(maxl, d.num_legs());
    return glue_partial(omega(maxl - maxl % 2), v);
}

LinComb upsilon(const LinComb& v) {
    require(v, {Space::B}, "upsilon");
    LinComb r(Space::W);
    for (auto& [d, c] : v.terms) r.add(split_legs(d, LegKind::p1, LegKind::f2, 1, Q(-1, 2), Space::W), c);
    return r;
}

LinComb chi_W(const LinComb& v) {
    require(v, {Space::W}, "chi_W");
    LinComb r(Space::Wtilde);
    for (auto& [d, c] : v.terms) {
        std::vector<int> pos(d.num_legs());
        std::iota(pos.begin(), pos.end(), 0);
        r.add(average(d, pos, true, Space::Wtilde), c);
    }
    return r;
}

LinComb pi_hat(const LinComb& v) {
    require(v, {Space::Wtilde}, "pi_hat");
    return v.retagged(Space::What);
}

LinComb fat_to_F(const LinComb& v) {
    require(v, {Space::What, Space::What_ab}, "fat_to_F");
    Space t = v.space == Space::What ? Space::WhatF : Space::WhatF_ab;
    LinComb r(t);
    for (auto& [d, c] : v.terms) r.add(split_legs(d, LegKind::f2, LegKind::F, 1, Q(1, 2), t), c);
    return r;
}

LinComb phi_A(const LinComb& v) {
    require(v, {Space::A}, "phi_A");
    LinComb r(Space::WhatWedge);
    for (auto& [d, c] : v.terms) {
        Diagram e = retag(d, Space::WhatWedge);
        for (auto& k : e.legs) k = LegKind::F;
        r.add(e, c);
    }
    return r;
}

std::vector<LambdaTerm> lambda_terms(const Diagram& w) {
    std::vector<int> pos;
    for (int j = 0; j < w.num_legs(); ++j)
        if (w.legs[j] == LegKind::p1) pos.push_back(j);
    Space t = lambda_target(w.space);
    std::vector<LambdaTerm> out;
    for_each_pairing(pos, [&](const Pairing& p) {
        Q c(pairing_sign(w.legs, p));
        for (std::size_t i = 0; i < p.size(); ++i) c /= 2;
        out.push_back({p, c, retag(glue_legs(w, p), t)});
    });
    return out;
}

LinComb lambda_map(const LinComb& w) {
    require(w, {Space::WhatF, Space::WhatF_ab}, "lambda");
    LinComb r(lambda_target(w.space));
    for (auto& [d, c] : w.terms)
        for (auto& t : lambda_terms(d)) r.add(t.glued, c * t.coeff);
    return r;
}

LinComb chi_wedge(const LinComb& v) {
    require(v, {Space::WhatWedge}, "chi_wedge");
    LinComb r(Space::WhatF);
    for (auto& [d, c] : v.terms) {
        std::vector<int> pos;
        for (int j = 0; j < d.num_legs(); ++j)
            if (d.legs[j] == LegKind::p1) pos.push_back(j);
        r.add(average(d, pos, true, Space::WhatF), c);
    }
    return r;
}

LinComb main_lhs(const LinComb& v) { return lambda_map(fat_to_F(pi_hat(chi_W(upsilon(v))))); }
LinComb main_rhs(const LinComb& v) { return phi_A(chi_B(d_omega(v))); }

Space map_source(const std::string& name) {
    if (name == "chiB" || name == "domega" || name == "upsilon" || name == "mainL" || name == "mainR")
        return Space::B;
    if (name == "chiW") return Space::W;
    if (name == "pi") return Space::Wtilde;
    if (name == "fatF") return Space::What;
    if (name == "phiA") return Space::A;
    if (name == "lambda") return Space::WhatF;
    if (name == "chiwedge") return Space::WhatWedge;
    throw std::invalid_argument("unknown map '" + name + "'");
}

LinComb apply_map(const std::string& name, const LinComb& v) {
    if (name == "chiB") return chi_B(v);
    if (name == "domega") return d_omega(v);
    if (name == "upsilon") return upsilon(v);
    if (name == "chiW") return chi_W(v);
    if (name == "pi") return pi_hat(v);
    if (name == "fatF") return fat_to_F(v);
    if (name == "phiA") return phi_A(v);
    if (name == "lambda") return lambda_map(v);
    if (name == "chiwedge") return chi_wedge(v);
    if (name == "mainL") return main_lhs(v);
    if (name == "mainR") return main_rhs(v);
    throw std::invalid_argument("unknown map '" + name + "'");
}

}  // namespace wc
