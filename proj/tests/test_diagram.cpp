#include "doctest.h"
#include "support.hpp"

using namespace wc;
using namespace wct;

namespace {

std::vector<char> free_mask(const Diagram& d) {
    std::vector<char> m;
    for (auto k : d.legs) {
        bool f = false;
        switch (d.space) {
            case Space::B:
            case Space::W: f = true; break;
            case Space::WhatWedge: f = k == LegKind::p1; break;
            case Space::What_ab: f = is_param(k) || is_op(k); break;
            default: f = false;
        }
        m.push_back(f);
    }
    return m;
}

}  // namespace

TEST_CASE("serialize and parse") {
    Diagram e;
    CHECK(serialize(e) == "D[v:;e:;l:]");
    CHECK(parse("D[v:;e:;l:]") == e);
    Diagram w2 = wheel(Space::B, 2);
    CHECK(parse(serialize(w2), Space::B) == w2);
    CHECK_THROWS_AS(parse("D[v:1"), ParseError);
    CHECK_THROWS_AS(parse("D[v:(0 1 2);e:(0-1);l:]"), ParseError);
    Diagram lp;
    lp.loops = 2;
    CHECK(serialize(lp) == "D[v:;e:;l:;o:2]");
    CHECK(parse(serialize(lp)) == lp);
}

TEST_CASE("json round trip") {
    auto x = LinComb::of(wheel(Space::W, 3, LegKind::f2), Q(3, 4));
    x.add(strut(Space::W, LegKind::p1, LegKind::f2), -2);
    CHECK(lincomb_from_json_text(to_json_text(x)) == x);
    CHECK(lincomb_from_text(to_text(x), Space::B) == x);
}

TEST_CASE("grading") {
    Diagram e;
    auto g = grading(e);
    CHECK(g.type_i == 0);
    CHECK(g.type_j == 0);
    CHECK(g.n_internal == 0);
    Builder b(Space::WhatF_ab);
    int x = b.leg(LegKind::a), y = b.leg(LegKind::b), z = b.leg(LegKind::db);
    auto v = b.vertex();
    b.join(v[0], x);
    b.join(v[1], y);
    b.join(v[2], z);
    g = grading(b.build());
    CHECK(g.type_i == 3);
    CHECK(g.type_j == 1);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(strut(Space::B, LegKind::p1, LegKind::p1)));
    auto s = strut(Space::B, LegKind::p1, LegKind::p1);
    CHECK_FALSE(is_connected(juxtapose(s, s)));
}

TEST_CASE("canonical form basics") {
    CHECK(canonical_form(wheel(Space::B, 1)).sign == 0);
    CHECK(canonical_form(wheel(Space::What, 1)).sign == 0);
    auto w2 = wheel(Space::A, 2);
    Diagram r;
    relabel(w2, {1, 0}, {std::array<int, 3>{0, 1, 2}, {0, 1, 2}}, {0, 1}, r);
    auto c1 = canonical_form(w2), c2 = canonical_form(r);
    CHECK(c1.d == c2.d);
    CHECK(c1.sign == c2.sign);
    auto y = fork_tripod(Space::What, LegKind::f2, LegKind::p1, LegKind::f2);
    auto cy = canonical_form(y);
    CHECK(cy.sign != 0);
    auto cc = canonical_form(cy.d);
    CHECK(cc.d == cy.d);
    CHECK(cc.sign == 1);
    auto s = LinComb::of(wheel(Space::B, 2));
    CHECK(disjoint_union(s, s).size() == 1);
}

TEST_CASE("canonical form agrees with exhaustive relabeling oracle") {
    std::mt19937 rng(7);
    struct Case {
        Space s;
        std::vector<LegKind> legs;
    };
    using K = LegKind;
    std::vector<Case> cases = {
        {Space::B, {}},
        {Space::B, {K::p1, K::p1}},
        {Space::B, {K::p1, K::p1, K::p1, K::p1}},
        {Space::A, {K::p1, K::p1}},
        {Space::W, {K::p1, K::p1}},
        {Space::W, {K::p1, K::f2, K::p1, K::f2}},
        {Space::What, {K::p1, K::f2}},
        {Space::What, {K::p1, K::p1, K::f2, K::f2}},
        {Space::WhatWedge, {K::F, K::p1, K::p1}},
        {Space::WhatWedge, {K::p1, K::p1, K::p1, K::p1}},
        {Space::What_ab, {K::p1, K::a, K::b, K::b, K::db}},
    };
    int tested = 0;
    for (auto& c : cases) {
        for (int nv = 0; nv <= 4; ++nv) {
            if ((3 * nv + static_cast<int>(c.legs.size())) % 2) continue;
            for (int rep = 0; rep < 25; ++rep) {
                auto d = random_diagram(rng, c.s, nv, c.legs);
                auto mask = free_mask(d);
                auto cd = canonical_form(d);
                if (nv <= 3) {
                    bool vanish = oracle_vanishes(d, mask);
                    CHECK_MESSAGE((cd.sign == 0) == vanish, serialize(d));
                }
                for (int t = 0; t < 4; ++t) {
                    Diagram r;
                    int s = random_relabel(rng, d, mask, r);
                    auto cr = canonical_form(r);
                    CHECK_MESSAGE(cr.sign * s == cd.sign, serialize(d));
                    if (cd.sign) CHECK_MESSAGE(cr.d == cd.d, serialize(d));
                }
                if (cd.sign) {
                    auto again = canonical_form(cd.d);
                    CHECK(again.d == cd.d);
                    CHECK(again.sign == 1);
                }
                ++tested;
            }
        }
    }
    CHECK(tested > 100);
}
