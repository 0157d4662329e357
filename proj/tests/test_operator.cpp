#include <random>

#include "doctest.h"
#include "wheelcalc/checks.hpp"
#include "wheelcalc/operator.hpp"
#include "wheelcalc/quotient.hpp"

using namespace wc;

namespace {

const Space S = Space::WhatF_ab;

const std::vector<Diagram>& small_ops() {
    static const std::vector<Diagram> g = operator_generators(S, 1, 3);
    return g;
}

}  // namespace

TEST_CASE("empty diagram is a unit for |-") {
    LinComb one = LinComb::of(Diagram{S, 0, {}, {}, 0});
    for (auto& d : small_ops()) {
        auto w = LinComb::of(d);
        CHECK(vdash(one, w) == w);
        CHECK(vdash(w, one) == w);
    }
}

TEST_CASE("push-past signs") {
    Diagram v = strut(S, LegKind::p1, LegKind::db);
    Gluing none;
    CHECK(gluing_sign(v, strut(S, LegKind::a, LegKind::a), none) == 1);
    CHECK(gluing_sign(v, fork_tripod(S, LegKind::p1, LegKind::a, LegKind::a), none) == -1);
    Diagram va = strut(S, LegKind::p1, LegKind::da);
    CHECK(gluing_sign(va, fork_tripod(S, LegKind::p1, LegKind::a, LegKind::a), none) == 1);
}

TEST_CASE("gluings respect labels") {
    Diagram v = juxtapose(strut(S, LegKind::da, LegKind::db), strut(S, LegKind::db, LegKind::db));
    Diagram w = strut(S, LegKind::a, LegKind::b);
    for (auto& g : gluings(v, w))
        for (auto [x, y] : g.pairs) CHECK((v.legs[x] == LegKind::da) == (w.legs[y] == LegKind::a));
    // da -> a or not; db -> b from one of three or not
    CHECK(gluings(v, w).size() == 2 * 4);
}

TEST_CASE("the worked gluing has three crossings") {
    Diagram v = juxtapose(fork_tripod(S, LegKind::db, LegKind::db, LegKind::db), strut(S, LegKind::db, LegKind::db));
    Diagram w = fork_tripod(S, LegKind::b, LegKind::b, LegKind::b);
    Gluing s;
    s.pairs = {{1, 0}, {3, 2}, {4, 1}};
    s.grade = 3;
    CHECK(grid_crossings(v, w, s) == 3);
    CHECK(gluing_sign(v, w, s) == -1);
}

TEST_CASE("grid sign against the drawing") {
    for (auto& v : small_ops())
        for (auto& w : small_ops())
            for (auto& s : gluings(v, w)) CHECK(gluing_sign(v, w, s) == (grid_crossings(v, w, s) % 2 ? -1 : 1));
}

TEST_CASE("rewriting and gluing sums agree on random pairs") {
    auto g = operator_generators(S, 2, 4);
    std::mt19937 rng(11);
    for (int k = 0; k < 50; ++k) {
        auto v = LinComb::of(g[rng() % g.size()]), w = LinComb::of(g[rng() % g.size()]);
        CHECK(vdash(v, w) == vdash_rewrite(v, w));
    }
}

TEST_CASE("exp# of a parameter strut") {
    auto x = obj_param_a();
    auto e = exp_sharp(x, 6);
    CHECK(e.comp(0, 0) == LinComb::of(Diagram{Space::What_ab, 0, {}, {}, 0}));
    LinComb p = LinComb::of(Diagram{Space::What_ab, 0, {}, {}, 0});
    mpq_class f = 1;
    for (int n = 1; n <= 4; ++n) {
        p = juxtapose(p, x);
        f *= n;
        CHECK(e.comp(2 * n, 0) == (1 / f) * p);
    }
    CHECK(e.op_bound(10) == 0);
    CHECK(e.param_bound(0) == kUnbounded);
}

TEST_CASE("projections") {
    auto a = polynomial(obj_param_a(), 4);
    CHECK(project_00(a).is_zero());
    auto b = polynomial(obj_l(), 4);
    CHECK(set_b_zero(b).window(6).is_zero());
    auto ka = polynomial(obj_j(), 4);
    CHECK(set_b_zero(ka).window(6) == ka.window(6));
}

TEST_CASE("intoop and B(l -> da) leg counts") {
    Diagram w = strut(Space::W, LegKind::f2, LegKind::p1);
    auto o = intoop(LinComb::of(w), Space::What_ab);
    REQUIRE(o.size() == 1);
    auto& d = o.terms.begin()->first;
    int nda = 0, ndb = 0;
    for (auto k : d.legs) {
        nda += k == LegKind::da;
        ndb += k == LegKind::db;
    }
    CHECK(nda == 1);
    CHECK(ndb == 1);
    auto bl = legs_to_partial_a(LinComb::of(strut(Space::B, LegKind::p1, LegKind::p1)), S);
    REQUIRE(bl.size() == 1);
    auto gr = grading(bl.terms.begin()->first);
    CHECK(gr.type_i == 0);
    CHECK(gr.type_j == 4);
}

TEST_CASE("divergent products raise") {
    auto P = exp_sharp(LinComb::of(strut(Space::What_ab, LegKind::da, LegKind::da)), 4);
    auto R = exp_sharp(LinComb::of(strut(Space::What_ab, LegKind::a, LegKind::a)), 4);
    CHECK_FALSE(converges(P, R, 4));
    CHECK_THROWS_AS(vdash(P, R).comp(0, 0), ConvergenceError);
    auto Rp = polynomial(LinComb::of(strut(Space::What_ab, LegKind::a, LegKind::a)), 4);
    CHECK(converges(P, Rp, 4));
}

TEST_CASE("exp|- refuses self-gluing exponents") {
    CHECK_THROWS(exp_vdash(LinComb::of(strut(S, LegKind::a, LegKind::da)), 4));
}

TEST_CASE("lambda commutes with operators free of grade-1 legs") {
    std::vector<Diagram> plain, any;
    for (auto& d : operator_generators(S, 1, 3)) {
        any.push_back(d);
        if (std::none_of(d.legs.begin(), d.legs.end(), [](LegKind k) { return k == LegKind::p1; })) plain.push_back(d);
    }
    std::mt19937 rng(5);
    for (int k = 0; k < 60; ++k) {
        auto v = LinComb::of(plain[rng() % plain.size()]);
        auto w = LinComb::of(any[rng() % any.size()]);
        CHECK(lambda_map(vdash(v, w)) == vdash(lambda_map(v), lambda_map(w)));
    }
}

TEST_CASE("two operators against two parameters give seven signed terms") {
    Diagram v = strut(S, LegKind::db, LegKind::db);
    Diagram w = strut(S, LegKind::b, LegKind::b);
    auto gs = gluings(v, w);
    REQUIRE(gs.size() == 7);
    int plus = 0;
    for (auto& g : gs) plus += gluing_sign(v, w, g) > 0;
    CHECK(plus == 4);
    CHECK(vdash(LinComb::of(v), LinComb::of(w)) == vdash_rewrite(LinComb::of(v), LinComb::of(w)));
}
