#include "wheelcalc/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wheelcalc/enumerative.hpp"
#include "wheelcalc/maps.hpp"
#include "wheelcalc/quotient.hpp"
#include "wheelcalc/series.hpp"

namespace wc {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

namespace {

const std::vector<CheckInfo> kCatalog = {
    {"tanh", 1, "psi(n) = phi(n) by brute force and Psi = tanh"},
    {"phi-recursion", 2, "phi(1) = 1, phi(2) = 0 and the recursion for phi(n)/n!"},
    {"cardinalities", 3, "sizes of the arrow families against enumeration"},
    {"lambda-inverse", 4, "lambda o chi_wedge = id on WhatWedge generators"},
    {"lambda-figure", 5, "the ten-term example of lambda"},
    {"vdash-agree", 6, "rewriting and gluing-sum definitions of |- agree"},
    {"associativity", 7, "(u |- v) |- w = u |- (v |- w)"},
    {"symmpro", 8, "[intoop(v) |- exp#(a + b)]_00 = pi chi_W(v)"},
    {"comblemcor", 8, "[intoop(v) |- exp#(j + k/2 + l)]_00 = B pi chi_W(v)"},
    {"howtosplit", 8, "B(v) |- exp|-(-Z/2) = exp|-(-Z/2) |- intoop(upsilon v)"},
    {"connected", 9, "connected pairing contributions against closed forms"},
    {"decomposition", 9, "lambda(exp#(k/2 + l)) = exp# of the connected sum"},
    {"grid", 10, "grid contributions C_0, C_2 against closed forms"},
    {"xcalculate", 10, "[X]_(b=0) = exp#(1/2 wheels)"},
    {"series-identities", 10, "the two power series identities behind C_0 and C_2"},
    {"main-theorem", 11, "lambda B pi chi_W upsilon = phi_A chi_B d_Omega"},
    {"factorization", 12, "T_tau is the #-product of its components"},
    {"content-count", 12, "number of pairing types with a given content"},
};

using Clock = std::chrono::steady_clock;

struct Run {
    CheckResult& r;
    void fail(const std::string& ce) {
        if (r.status != Status::fail) r.counterexample = ce;
        r.status = Status::fail;
    }
    void expect(bool ok, const std::string& ce) {
        ++r.instances;
        if (!ok) fail(ce);
    }
};

bool same(const LinComb& x, const LinComb& y) { return x == y || equal_mod(x, y); }

bool same_window(const OpSeries& x, const OpSeries& y, int t1, std::string* where) {
    for (int i = 0; i <= t1; ++i)
        for (int j = 0; i + j <= t1; ++j)
            if (!same(x.comp(i, j), y.comp(i, j))) {
                if (where) *where = "type (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
    return true;
}

mpz_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

mpz_class pow2(int n) {
    mpz_class p = 1;
    p <<= n;
    return p;
}

std::vector<Diagram> b_generators(int max_nv, int max_legs, bool connected_only) {
    std::vector<Diagram> out;
    for (int nv = 0; nv <= max_nv; ++nv)
        for (int L = 0; L <= max_legs; ++L) {
            if ((3 * nv + L) % 2) continue;
            for (auto& g : enumerate_slice({Space::B, nv, std::vector<LegKind>(L, LegKind::p1)}))
                if (!connected_only || is_connected(g)) out.push_back(g);
        }
    return out;
}

// ---------------------------------------------------------------------------

void check_tanh(const CheckConfig& c, Run& run) {
    for (int n = 1; n <= c.word_n; ++n)
        run.expect(phi_number(n) == psi_number(n), "phi(" + std::to_string(n) + ") != psi(" + std::to_string(n) + ")");
    ExactSeries p = series_psi(c.word_n), t = series_tanh(c.word_n);
    run.expect(p == t, "Psi = " + to_string(p) + " but tanh = " + to_string(t));
    run.r.detail = "tanh = " + to_string(t);
}

void check_phi_recursion(const CheckConfig& c, Run& run) {
    run.expect(phi_number(1) == 1, "phi(1) = " + phi_number(1).get_str());
    run.expect(phi_number(2) == 0, "phi(2) = " + phi_number(2).get_str());
    for (int n = 3; n <= c.word_n; ++n) {
        mpq_class brute(phi_number(n), factorial(n));
        brute.canonicalize();
        mpq_class rec = phi_recursive(n);
        run.expect(brute == rec, "n = " + std::to_string(n) + ": brute " + brute.get_str() + ", recursion " + rec.get_str());
    }
}

void check_cardinalities(const CheckConfig& c, Run& run) {
    auto stated = [](Family f, int n) -> mpz_class {
        mpz_class fn = factorial(n), p = pow2(n - 1);
        switch (f) {
            case Family::GammaArrow: return fn * p;
            case Family::XiArrow: return factorial(n - 1) * p;
            case Family::PhiArrow: return pow2(n) * fn * p * factorial(n - 1);
            case Family::ThetaArrow: return fn * pow2(n) * (factorial(n + 1) / 2) * p;
            default: return -1;
        }
    };
    for (Family f : {Family::GammaArrow, Family::XiArrow, Family::OmegaArrow, Family::DeltaArrow, Family::PhiArrow,
                     Family::ThetaArrow})
        for (int n = 1; n <= c.card_n; ++n) {
            mpz_class formula, counted;
            try {
                formula = family_size_formula(f, n);
                counted = family_count(f, n);
            } catch (const std::invalid_argument&) {
                continue;
            }
            std::string tag = std::string(family_name(f)) + " n = " + std::to_string(n) + ": counted " +
                              counted.get_str() + ", formula " + formula.get_str();
            run.expect(counted == formula, tag);
            mpz_class s = stated(f, n);
            if (s >= 0) run.expect(counted == s, tag + ", stated " + s.get_str());
        }
}

void check_lambda_inverse(const CheckConfig& c, Run& run) {
    for (int nv = 0; nv <= c.max_internal; ++nv)
        for (int L = 0; L <= c.max_legs; ++L) {
            if ((3 * nv + L) % 2) continue;
            for (int nF = 0; nF <= L; ++nF) {
                std::vector<LegKind> legs(L, LegKind::p1);
                std::fill(legs.begin() + (L - nF), legs.end(), LegKind::F);
                for (auto& d : enumerate_slice({Space::WhatWedge, nv, legs})) {
                    auto v = LinComb::of(d);
                    run.expect(same(lambda_map(chi_wedge(v)), v), serialize(d));
                }
            }
        }
}

Diagram lambda_figure_input() { return chain(Space::WhatF, LegKind::p1, LegKind::p1, 2, LegKind::p1); }

void check_lambda_figure(const CheckConfig&, Run& run) {
    // Legs of the input in drawing order 1..4; coefficients as in the figure.
    const std::map<Pairing, Q> expected = {
        {{}, Q(1)},
        {{{0, 1}}, Q(1, 2)},
        {{{0, 2}}, Q(-1, 2)},
        {{{0, 3}}, Q(1, 2)},
        {{{1, 2}}, Q(1, 2)},
        {{{1, 3}}, Q(-1, 2)},
        {{{2, 3}}, Q(1, 2)},
        {{{0, 1}, {2, 3}}, Q(1, 4)},
        {{{0, 2}, {1, 3}}, Q(-1, 4)},
        {{{0, 3}, {1, 2}}, Q(1, 4)},
    };
    auto terms = lambda_terms(lambda_figure_input());
    run.expect(terms.size() == expected.size(), std::to_string(terms.size()) + " terms");
    for (auto& t : terms) {
        Pairing p = t.pairing;
        for (auto& e : p)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(p.begin(), p.end());
        auto it = expected.find(p);
        std::ostringstream os;
        for (auto [x, y] : p) os << "{" << x + 1 << "," << y + 1 << "}";
        run.expect(it != expected.end() && it->second == t.coeff, "pairing " + os.str() + " coefficient " + t.coeff.get_str());
    }
    // The sign example: seven grade-1 legs with pairing {1,3},{2,4},{5,7}.
    std::vector<LegKind> seven(7, LegKind::p1);
    Pairing p = {{0, 2}, {1, 3}, {4, 6}};
    run.expect(pairing_sign(seven, p) == 1, "D_{{1,3},{2,4},{5,7}} sign");
    run.expect(pairing_crossings(seven, Space::WhatF, p) % 2 == 0, "D_{{1,3},{2,4},{5,7}} drawing");
}

Diagram example_v() {
    const Space S = Space::WhatF_ab;
    return juxtapose(fork_tripod(S, LegKind::db, LegKind::db, LegKind::db), strut(S, LegKind::db, LegKind::db));
}

Diagram example_w() { return fork_tripod(Space::WhatF_ab, LegKind::b, LegKind::b, LegKind::b); }

void check_vdash_agree(const CheckConfig& c, Run& run) {
    for (Space S : {Space::WhatF_ab, Space::WhatWedge_ab}) {
        auto g = operator_generators(S, c.max_internal, 3);
        for (auto& v : g)
            for (auto& w : g) {
                auto V = LinComb::of(v), W = LinComb::of(w);
                run.expect(vdash(V, W) == vdash_rewrite(V, W), serialize(v) + " |- " + serialize(w));
                for (auto& s : gluings(v, w)) {
                    int x = grid_crossings(v, w, s);
                    if (gluing_sign(v, w, s) != (x % 2 ? -1 : 1)) run.fail("grid sign " + serialize(v) + " |- " + serialize(w));
                }
            }
        auto big = operator_generators(S, c.max_internal, 5);
        std::mt19937_64 rng(c.seed);
        std::uniform_int_distribution<std::size_t> pick(0, big.size() - 1);
        for (int k = 0; k < c.random_pairs; ++k) {
            const Diagram& v = big[pick(rng)];
            const Diagram& w = big[pick(rng)];
            auto V = LinComb::of(v), W = LinComb::of(w);
            run.expect(vdash(V, W) == vdash_rewrite(V, W), serialize(v) + " |- " + serialize(w));
        }
    }
    // Operators 1..5 and parameters 1..3 numbered from the left; glue 2->1, 4->3, 5->2.
    Diagram v = example_v(), w = example_w();
    Gluing s;
    s.pairs = {{1, 0}, {3, 2}, {4, 1}};
    s.grade = 3;
    int x = grid_crossings(v, w, s);
    run.expect(x == 3 && gluing_sign(v, w, s) == -1, "worked example: x = " + std::to_string(x));
}

void check_associativity(const CheckConfig& c, Run& run) {
    for (Space S : {Space::WhatF_ab, Space::WhatWedge_ab}) {
        auto g = operator_generators(S, c.max_internal, 2);
        const std::size_t n = g.size();
        std::vector<LinComb> single, prod(n * n);
        for (auto& d : g) single.push_back(LinComb::of(d));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = vdash(single[i], single[j]);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < n; ++w)
                    run.expect(vdash(single[u], prod[v * n + w]) == vdash(prod[u * n + v], single[w]),
                               serialize(g[u]) + ", " + serialize(g[v]) + ", " + serialize(g[w]));
    }
    const Space S = Space::WhatWedge_ab;
    const int nv = c.trunc.t2, t1 = c.trunc.t1;
    auto A = exp_vdash(Q(-1, 2) * obj_Z(S), nv);
    auto B = polynomial(LinComb::of(strut(S, LegKind::da, LegKind::db)) + LinComb::of(raw_Z(S)), nv);
    auto C = lambda_op(exp_sharp(Q(1, 2) * obj_k() + obj_l(), nv));
    std::string why;
    run.expect(check_condition_S(A, B, C, t1, &why), "condition fails: " + why);
    std::string where;
    run.expect(same_window(vdash(A, vdash(B, C)), vdash(vdash(A, B), C), t1, &where), "series triple at " + where);
    // exp#(da-da strut) |- exp#(a-a strut) diverges.
    auto P = exp_sharp(LinComb::of(strut(Space::What_ab, LegKind::da, LegKind::da)), nv);
    auto R = exp_sharp(LinComb::of(strut(Space::What_ab, LegKind::a, LegKind::a)), nv);
    run.expect(!converges(P, R, t1), "divergent pair reported convergent");
    bool threw = false;
    try {
        vdash(P, R).comp(0, 0);
    } catch (const ConvergenceError&) {
        threw = true;
    }
    run.expect(threw, "divergent pair did not raise");
    auto one = polynomial(LinComb::of(Diagram{Space::What_ab, 0, {}, {}, 0}), nv);
    run.expect(!check_condition_S(one, P, R, t1), "condition holds on a divergent triple");
}

std::vector<Diagram> w_generators(int max_nv, int max_legs) {
    std::vector<Diagram> out;
    for (int nv = 0; nv <= max_nv; ++nv)
        for (int L = 1; L <= max_legs; ++L)
            for (int nf = 0; nf <= L; ++nf) {
                std::vector<LegKind> legs(L, LegKind::p1);
                std::fill(legs.begin(), legs.begin() + nf, LegKind::f2);
                for (auto& g : enumerate_slice({Space::W, nv, legs})) out.push_back(g);
            }
    return out;
}

void check_symmpro(const CheckConfig& c, Run& run) {
    const int nv = c.max_internal + c.max_legs;
    auto e = exp_sharp(obj_param_a() + obj_param_b(), nv);
    for (auto& g : w_generators(c.max_internal, c.max_legs)) {
        auto v = LinComb::of(g);
        auto lhs = project_00(vdash(polynomial(intoop(v, Space::What_ab), nv), e)).retagged(Space::What);
        run.expect(same(lhs, pi_hat(chi_W(v))), serialize(g));
    }
}

void check_comblemcor(const CheckConfig& c, Run& run) {
    const int nv = c.max_internal + c.max_legs;
    auto e = exp_sharp(obj_j() + Q(1, 2) * obj_k() + obj_l(), nv);
    for (auto& g : w_generators(c.max_internal, c.max_legs)) {
        auto v = LinComb::of(g);
        auto lhs = project_00(vdash(polynomial(intoop(v, Space::WhatF_ab), nv), e)).retagged(Space::WhatF);
        run.expect(same(lhs, fat_to_F(pi_hat(chi_W(v)))), serialize(g));
    }
}

void check_howtosplit(const CheckConfig& c, Run& run) {
    const int nv = c.max_internal + c.max_legs;
    const Space S = Space::WhatF_ab;
    auto E = exp_vdash(Q(-1, 2) * obj_Z(S), nv);
    for (auto& g : b_generators(c.max_internal, c.max_legs, false)) {
        if (g.num_legs() == 0) continue;
        auto v = LinComb::of(g);
        auto lhs = vdash(polynomial(legs_to_partial_a(v, S), nv), E);
        auto rhs = vdash(E, polynomial(intoop(upsilon(v), S), nv));
        std::string where;
        run.expect(same_window(lhs, rhs, c.trunc.t1, &where), serialize(g) + " at " + where);
    }
}

void check_connected(const CheckConfig& c, Run& run) {
    for (auto& k : connected_contributions(c.max_blocks)) {
        run.expect(k.match, k.name + ": brute " + to_text(k.brute) + " closed " + to_text(k.closed));
        run.expect(!k.brute.is_zero(), k.name + " is empty");
    }
    const Space S = Space::WhatWedge_ab;
    run.expect(LinComb::of(wheel(S, 1, LegKind::a)).is_zero(), "one-spoke loop survives");
    for (int n = 1; n <= c.max_blocks; ++n) {
        bool zero = LinComb::of(chain(S, LegKind::p1, LegKind::p1, n)).is_zero();
        run.expect(zero == (n % 2 == 0), "chain with " + std::to_string(n) + " spokes");
    }
    // Traversal words and the sign of the standard form.
    const int nmax = std::min(5, c.max_blocks);
    for (int n = 1; n <= nmax; ++n) {
        std::map<Family, std::set<ArrowWord>> img;
        for_each_pairing_type(n, [&](const PairingType& t) {
            auto tw = traversal_word(t);
            if (!tw) return;
            run.expect(img[tw->first].insert(tw->second).second, "two types with word " + to_string(tw->second));
            if (tw->first != Family::GammaArrow || n < 2) return;
            int d = descent(tw->second.w1);
            Q coeff(d % 2 ? -1 : 1);
            for (int i = 0; i < 2 * n - 1; ++i) coeff /= 2;
            auto expect = coeff * LinComb::of(chain(S, LegKind::p1, LegKind::p1, n));
            run.expect(term_of_pairing(t) == expect, "gamma sign " + to_string(t));
        });
        for (Family f : {Family::GammaArrow, Family::XiArrow, Family::OmegaArrow, Family::DeltaArrow}) {
            std::set<ArrowWord> fam;
            try {
                auto e = enumerate_family(f, n);
                fam.insert(e.begin(), e.end());
            } catch (const std::invalid_argument&) {
                continue;
            }
            run.expect(img[f] == fam, std::string(family_name(f)) + " n = " + std::to_string(n) + ": " +
                                          std::to_string(img[f].size()) + " words from types, " +
                                          std::to_string(fam.size()) + " in the family");
        }
    }
}

LinComb connected_closed(int order) {
    const Space S = Space::WhatWedge_ab;
    ExactSeries th = series_tanh(order);
    ExactSeries t1 = th;
    t1.c[1] -= 1;
    return strut_series(S, LegKind::p1, LegKind::p1, rescale(th, Q(1, 2))) +
           Q(1, 2) * loop_series(S, rescale(series_logcosh(order), Q(1, 2))) +
           Q(-1, 4) * strut_series(S, LegKind::b, LegKind::b, rescale(shift_down(t1, 2), Q(1, 2))) +
           Q(-1) * strut_series(S, LegKind::p1, LegKind::b, rescale(shift_down(th, 1), Q(1, 2)));
}

void check_decomposition(const CheckConfig& c, Run& run) {
    const int nv = c.max_blocks, t1 = c.trunc.t1;
    auto lhs = lambda_op(exp_sharp(Q(1, 2) * obj_k() + obj_l(), nv));
    auto rhs = exp_sharp(connected_closed(t1 + 2), nv);
    for (int i = 0; i <= t1; ++i)
        for (int j = 0; i + j <= t1; ++j)
            run.expect(same(lhs.comp(i, j), rhs.comp(i, j)), "type (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

ExactSeries random_series(std::mt19937_64& rng, int order, int parity) {
    ExactSeries s(order);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (int n = parity; n <= order; n += 2) s.c[n] = Q(num(rng), den(rng));
    for (auto& x : s.c) x.canonicalize();
    return s;
}

void check_grid(const CheckConfig& c, Run& run) {
    const int A = c.trunc.t1;
    auto g = grid_contributions(A, series_Y(A), series_Z(A));
    run.expect(g.match, "C_0 brute " + to_text(g.C0_brute) + " closed " + to_text(g.C0_closed) + "; C_2 brute " +
                            to_text(g.C2_brute) + " closed " + to_text(g.C2_closed));
    run.expect(!g.C2_brute.is_zero() && !g.C0_brute.is_zero(), "empty grid sums");
    std::mt19937_64 rng(c.seed);
    const int Ar = std::min(A, 6);
    for (int k = 0; k < 3; ++k) {
        auto r = grid_contributions(Ar, random_series(rng, Ar, 0), random_series(rng, Ar, 1));
        run.expect(r.match, "random Y, Z sample " + std::to_string(k));
    }
    for (int n = 1; n <= 4; ++n)
        run.expect(count_connected_grids(Family::PhiArrow, n) == family_size_formula(Family::PhiArrow, n),
                   "connected grids n = " + std::to_string(n) + " vs Phi");
    for (int n = 1; n <= 3; ++n)
        run.expect(count_connected_grids(Family::ThetaArrow, n) == family_size_formula(Family::ThetaArrow, n),
                   "connected grids n = " + std::to_string(n) + " vs Theta");
}

void check_xcalculate(const CheckConfig& c, Run& run) {
    const Space S = Space::WhatWedge_ab;
    const int t1 = c.trunc.t1, nv = c.trunc.t2;
    auto Y = series_Y(t1), Z = series_Z(t1);
    auto ops = exp_vdash(Q(-1, 2) * obj_Z(S), nv);
    std::string where;
    auto grid = set_b_zero(vdash(ops, exp_sharp(yterm(Y) + zterm(Z), nv)));
    auto closed = exp_sharp(grid_C0_closed(Z, t1) + grid_C2_closed(Y, Z, t1), nv);
    run.expect(same_window(grid, closed, t1, &where), "grid exponential at " + where);
    auto X = set_b_zero(vdash(ops, lambda_op(exp_sharp(Q(1, 2) * obj_k() + obj_l(), nv))));
    auto W = exp_sharp(Q(1, 2) * loop_series(S, series_wheels(t1)), nv);
    run.expect(same_window(X, W, t1, &where), "X at " + where);
}

void check_series_identities(const CheckConfig& c, Run& run) {
    auto rep = series_identity_checks(c.trunc.t1);
    run.expect(rep.log_identity, "sum (aZ)^n / n = -ln(tanh(a/2)/(a/2))");
    run.expect(rep.tanh_identity, "1/2 sum Y (aZ)^n aY = tanh(a/2)");
    ExactSeries z = series_Z(c.trunc.t1 + 2);
    z.c[3] += Q(1, 7);
    auto bad = series_identity_checks(c.trunc.t1, &z);
    run.expect(!bad.log_identity && !bad.tanh_identity, "perturbed Z not detected");
}

void check_main_theorem(const CheckConfig& c, Run& run) {
    auto gens = b_generators(c.max_internal, c.max_legs, true);
    auto test = [&](const LinComb& v, const std::string& name) {
        auto l = main_lhs(v), r = main_rhs(v);
        run.r.tested.push_back(name);
        bool ok = same(l, r);
        run.expect(ok, name + "\n  lhs " + to_text(reduce(l)) + "  rhs " + to_text(reduce(r)));
    };
    for (auto& g : gens) test(LinComb::of(g), serialize(g));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            if (gens[i].num_legs() + gens[j].num_legs() > c.max_legs + 2) continue;
            if (gens[i].num_legs() + gens[i].nv == 0 || gens[j].num_legs() + gens[j].nv == 0) continue;
            test(disjoint_union(LinComb::of(gens[i]), LinComb::of(gens[j])),
                 serialize(gens[i]) + " u " + serialize(gens[j]));
        }
    run.r.detail = describe(conventions());
}

void check_factorization(const CheckConfig& c, Run& run) {
    const Diagram one{Space::WhatWedge_ab, 0, {}, {}, 0};
    for (int b = 1; b <= c.max_blocks; ++b)
        for_each_pairing_type(b, [&](const PairingType& t) {
            LinComb prod = LinComb::of(one);
            for (auto& k : components_of(t)) prod = juxtapose(prod, term_of_pairing(k));
            run.expect(prod == term_of_pairing(t), to_string(t));
        });
    PairingType ex{"AAAAAB", {{2, 9}, {4, 5}, {8, 11}}};
    run.expect(raw_term_of_pairing(ex).sign == 1, "sign of " + to_string(ex));
    std::vector<int> signs;
    for (auto& k : components_of(ex)) signs.push_back(raw_term_of_pairing(k).sign);
    std::sort(signs.begin(), signs.end());
    run.expect(signs == std::vector<int>{-1, 1, 1}, "component signs of " + to_string(ex));
}

void check_content_count(const CheckConfig& c, Run& run) {
    for (int b = 1; b <= c.max_blocks; ++b) {
        std::map<Content, mpz_class> seen;
        for_each_pairing_type(b, [&](const PairingType& t) { seen[content_of(t)]++; });
        for (auto& [k, n] : seen) {
            std::ostringstream os;
            for (auto& [t, m] : k) os << to_string(t) << " x" << m << " ";
            run.expect(count_with_content(k) == n, os.str() + ": counted " + n.get_str() + ", formula " +
                                                       count_with_content(k).get_str());
        }
    }
    PairingType ex{"AAAAABAA", {{1, 10}, {2, 9}, {3, 5}, {4, 6}, {7, 13}, {8, 12}, {11, 14}}};
    Content want = {{PairingType{"AA", {{1, 4}, {2, 3}}}, 2},
                    {PairingType{"AA", {{1, 3}, {2, 4}}}, 1},
                    {PairingType{"BA", {{1, 2}}}, 1}};
    run.expect(content_of(ex) == want, "content of " + to_string(ex));
    run.expect(count_with_content({}) == 1, "empty content");
}

using CheckFn = void (*)(const CheckConfig&, Run&);

CheckFn check_fn(const std::string& id) {
    static const std::map<std::string, CheckFn> fns = {
        {"tanh", check_tanh},
        {"phi-recursion", check_phi_recursion},
        {"cardinalities", check_cardinalities},
        {"lambda-inverse", check_lambda_inverse},
        {"lambda-figure", check_lambda_figure},
        {"vdash-agree", check_vdash_agree},
        {"associativity", check_associativity},
        {"symmpro", check_symmpro},
        {"comblemcor", check_comblemcor},
        {"howtosplit", check_howtosplit},
        {"connected", check_connected},
        {"decomposition", check_decomposition},
        {"grid", check_grid},
        {"xcalculate", check_xcalculate},
        {"series-identities", check_series_identities},
        {"main-theorem", check_main_theorem},
        {"factorization", check_factorization},
        {"content-count", check_content_count},
    };
    auto it = fns.find(id);
    if (it == fns.end()) throw std::invalid_argument("unknown check '" + id + "'");
    return it->second;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() { return kCatalog; }

bool is_check_id(const std::string& id) {
    return std::any_of(kCatalog.begin(), kCatalog.end(), [&](const CheckInfo& c) { return c.id == id; });
}

CheckResult run_check(const std::string& id, const CheckConfig& cfg) {
    CheckFn fn = check_fn(id);
    CheckResult r;
    r.id = id;
    for (auto& c : kCatalog)
        if (c.id == id) r.criterion = c.criterion;
    auto t0 = Clock::now();
    Run run{r};
    try {
        fn(cfg, run);
    } catch (const BudgetExceeded& e) {
        r.status = Status::skipped;
        r.detail = std::string("budget exceeded: ") + e.what();
    } catch (const ConvergenceError& e) {
        run.fail(e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& ids, const CheckConfig& cfg) {
    for (auto& id : ids) check_fn(id);
    std::vector<CheckResult> out;
    for (auto& id : ids) out.push_back(run_check(id, cfg));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Seg {
    int strand;
    bool vertical;
    long fixed, lo, hi;  // x for vertical, y for horizontal; span on the other axis
};

long count_crossings(const std::vector<Seg>& segs) {
    long x = 0;
    for (const Seg& h : segs) {
        if (h.vertical) continue;
        for (const Seg& v : segs) {
            if (!v.vertical || v.strand == h.strand) continue;
            if (v.fixed > h.lo && v.fixed < h.hi && h.fixed > v.lo && h.fixed < v.hi) ++x;
        }
    }
    return x;
}

}  // namespace

int grid_crossings(const Diagram& v, const Diagram& w, const Gluing& s) {
    std::vector<int> ops, cols;
    for (int j = 0; j < v.num_legs(); ++j)
        if (is_op(v.legs[j])) ops.push_back(j);
    for (int j = 0; j < w.num_legs(); ++j)
        if (!is_op(w.legs[j])) cols.push_back(j);
    const long R = static_cast<long>(ops.size()), C = static_cast<long>(cols.size());
    // Coordinates doubled so that corners sit strictly inside spans.
    auto row_y = [](long r) { return 2 * (r + 1); };
    auto col_x = [](long c) { return 2 * (c + 1); };
    const long top = 2 * (R + 1);
    std::vector<long> target(R, -1);
    std::vector<char> glued_col(C, 0);
    for (auto [x, y] : s.pairs) {
        long r = std::find(ops.begin(), ops.end(), x) - ops.begin();
        long c = std::find(cols.begin(), cols.end(), y) - cols.begin();
        if (r >= R || c >= C) throw std::invalid_argument("grid_crossings: gluing outside the grid");
        target[r] = c;
        glued_col[c] = 1;
    }
    std::vector<Seg> segs;
    int strand = 0;
    long next_out = 2 * (C + 1);
    for (long r = 0; r < R; ++r, ++strand) {
        if (sign_grade(v.space, v.legs[ops[r]]) == 0) continue;
        if (target[r] >= 0) {
            long x = col_x(target[r]);
            segs.push_back({strand, false, row_y(r), 0, x});
            segs.push_back({strand, true, x, row_y(r), top});
        } else {
            long x = next_out;
            next_out += 2;
            segs.push_back({strand, false, row_y(r), 0, x});
            segs.push_back({strand, true, x, 0, row_y(r)});
        }
    }
    for (long c = 0; c < C; ++c, ++strand) {
        if (glued_col[c] || sign_grade(w.space, w.legs[cols[c]]) == 0) continue;
        segs.push_back({strand, true, col_x(c), 0, top});
    }
    return static_cast<int>(count_crossings(segs));
}

int pairing_crossings(const std::vector<LegKind>& kinds, Space s, const Pairing& p) {
    const long L = static_cast<long>(kinds.size());
    // Arc (i, j) is a box dipping deeper the wider it is (ties broken by i);
    // unpaired legs drop to the bottom line below every arc.
    std::vector<Seg> segs;
    std::vector<char> used(L, 0);
    int strand = 0;
    for (auto [a, b] : p) {
        long i = std::min(a, b), j = std::max(a, b);
        used[i] = used[j] = 1;
        long depth = 2 * ((j - i) * (L + 1) + i) + 1;
        segs.push_back({strand, true, 2 * i, -depth, 0});
        segs.push_back({strand, true, 2 * j, -depth, 0});
        segs.push_back({strand, false, -depth, 2 * i, 2 * j});
        ++strand;
    }
    for (long i = 0; i < L; ++i, ++strand) {
        if (used[i] || sign_grade(s, kinds[i]) == 0) continue;
        segs.push_back({strand, true, 2 * i, -(4 * (L + 1) * (L + 1)), 0});
    }
    return static_cast<int>(count_crossings(segs));
}

std::vector<Diagram> operator_generators(Space s, int max_nv, int max_legs) {
    std::vector<LegKind> ks;
    for (int k = 0; k < kNumKinds; ++k)
        if (allows(s, static_cast<LegKind>(k))) ks.push_back(static_cast<LegKind>(k));
    std::vector<Diagram> out;
    for (int nv = 0; nv <= max_nv; ++nv)
        for (int L = 0; L <= max_legs; ++L) {
            if ((3 * nv + L) % 2) continue;
            std::vector<LegKind> legs(L);
            std::function<void(int, std::size_t)> rec = [&](int p, std::size_t lo) {
                if (p == L) {
                    for (auto& d : enumerate_slice({s, nv, legs})) out.push_back(d);
                    return;
                }
                for (std::size_t i = lo; i < ks.size(); ++i) {
                    legs[p] = ks[i];
                    rec(p + 1, i);
                }
            };
            rec(0, 0);
        }
    return out;
}

std::string to_json(const std::vector<CheckResult>& rs, const CheckConfig& cfg) {
    nlohmann::ordered_json j;
    j["config"] = {{"t1", cfg.trunc.t1},
                   {"t2", cfg.trunc.t2},
                   {"seed", cfg.seed},
                   {"word_n", cfg.word_n},
                   {"card_n", cfg.card_n},
                   {"max_internal", cfg.max_internal},
                   {"max_legs", cfg.max_legs},
                   {"max_blocks", cfg.max_blocks},
                   {"random_pairs", cfg.random_pairs},
                   {"conventions", describe(conventions())}};
    j["checks"] = nlohmann::ordered_json::array();
    bool all = true;
    for (auto& r : rs) {
        nlohmann::ordered_json c = {{"id", r.id},
                                    {"criterion", r.criterion},
                                    {"status", status_name(r.status)},
                                    {"instances", r.instances}};
        if (!r.counterexample.empty()) c["counterexample"] = r.counterexample;
        if (!r.detail.empty()) c["detail"] = r.detail;
        if (!r.tested.empty()) c["tested"] = r.tested;
        c["seconds"] = r.seconds;
        j["checks"].push_back(c);
        all = all && r.status == Status::pass;
    }
    j["all_pass"] = all;
    return j.dump(2);
}

std::string to_text(const std::vector<CheckResult>& rs) {
    std::ostringstream os;
    for (auto& r : rs) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%8.2fs", r.seconds);
        os << "[" << status_name(r.status) << "] " << r.id << " (criterion " << r.criterion << "): " << r.instances
           << " instances, " << buf << "\n";
        for (auto& t : r.tested) os << "    tested " << t << "\n";
        if (!r.detail.empty()) os << "    " << r.detail << "\n";
        if (!r.counterexample.empty()) os << "    counterexample: " << r.counterexample << "\n";
    }
    return os.str();
}

}  // namespace wc
