#include <random>

#include "doctest.h"
#include "wheelcalc/checks.hpp"
#include "wheelcalc/maps.hpp"
#include "wheelcalc/quotient.hpp"

using namespace wc;

TEST_CASE("pairing sign parity matches the two-line drawing") {
    std::mt19937 rng(2);
    for (int L = 0; L <= 8; ++L)
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<LegKind> kinds(L);
            for (auto& k : kinds) k = rng() % 3 ? LegKind::p1 : LegKind::F;
            std::vector<int> pos;
            for (int j = 0; j < L; ++j)
                if (kinds[j] == LegKind::p1) pos.push_back(j);
            for_each_pairing(pos, [&](const Pairing& p) {
                CHECK(pairing_sign(kinds, p) == (pairing_crossings(kinds, Space::WhatF, p) % 2 ? -1 : 1));
            });
        }
}

TEST_CASE("pairings are enumerated once each") {
    int n = 0;
    for_each_pairing({0, 1, 2, 3, 4, 5}, [&](const Pairing&) { ++n; });
    // involutions of six points
    CHECK(n == 76);
}

TEST_CASE("lambda of four grade-1 legs has ten terms") {
    auto t = lambda_terms(chain(Space::WhatF, LegKind::p1, LegKind::p1, 2, LegKind::p1));
    CHECK(t.size() == 10);
    int halves = 0, quarters = 0;
    for (auto& x : t) {
        halves += abs(x.coeff) == mpq_class(1, 2);
        quarters += abs(x.coeff) == mpq_class(1, 4);
    }
    CHECK(halves == 6);
    CHECK(quarters == 3);
}

TEST_CASE("chi_B fixes diagrams with at most one leg") {
    for (int nv = 0; nv <= 3; ++nv)
        for (int L = 0; L <= 1; ++L) {
            if ((3 * nv + L) % 2) continue;
            for (auto& d : enumerate_slice({Space::B, nv, std::vector<LegKind>(L, LegKind::p1)})) {
                auto v = LinComb::of(d);
                CHECK(chi_B(v) == v.retagged(Space::A));
            }
        }
}

TEST_CASE("chi_W kills the relations of W") {
    for (int nv = 0; nv <= 1; ++nv)
        for (auto legs : {std::vector<LegKind>{LegKind::p1, LegKind::p1, LegKind::f2},
                          std::vector<LegKind>{LegKind::p1, LegKind::p1},
                          std::vector<LegKind>{LegKind::f2, LegKind::p1, LegKind::p1, LegKind::p1}}) {
            if ((3 * nv + static_cast<int>(legs.size())) % 2) continue;
            for (auto& r : relation_vectors({Space::W, nv, legs})) CHECK(reduce(chi_W(r)).is_zero());
        }
}

TEST_CASE("lambda inverts chi_wedge on random diagrams") {
    std::vector<Diagram> g;
    for (auto legs : {std::vector<LegKind>{LegKind::p1, LegKind::p1, LegKind::F},
                      std::vector<LegKind>{LegKind::p1, LegKind::p1, LegKind::p1, LegKind::p1},
                      std::vector<LegKind>{LegKind::p1, LegKind::F, LegKind::F}})
        for (auto& d : enumerate_slice({Space::WhatWedge, 1, legs})) g.push_back(d);
    REQUIRE_FALSE(g.empty());
    for (auto& d : g) {
        auto v = LinComb::of(d);
        CHECK(equal_mod(lambda_map(chi_wedge(v)), v));
    }
}

TEST_CASE("main theorem on the strut and the theta") {
    for (auto& d : {strut(Space::B, LegKind::p1, LegKind::p1)}) {
        auto v = LinComb::of(d);
        CHECK(equal_mod(main_lhs(v), main_rhs(v)));
    }
    auto theta = enumerate_slice({Space::B, 2, {}});
    REQUIRE(theta.size() == 1);
    auto v = LinComb::of(theta[0]);
    CHECK(equal_mod(main_lhs(v), main_rhs(v)));
}

TEST_CASE("a wrong wheel coefficient breaks the main theorem") {
    auto saved = conventions().omega;
    conventions().omega[0] = -saved[0];
    auto w2 = enumerate_slice({Space::B, 2, {LegKind::p1, LegKind::p1}});
    bool all = true;
    for (auto& d : w2) all = all && equal_mod(main_lhs(LinComb::of(d)), main_rhs(LinComb::of(d)));
    conventions().omega = saved;
    CHECK_FALSE(all);
}

TEST_CASE("named maps") {
    auto v = LinComb::of(strut(Space::B, LegKind::p1, LegKind::p1));
    CHECK(apply_map("chiB", v) == chi_B(v));
    CHECK(map_source("lambda") == Space::WhatF);
    CHECK_THROWS(apply_map("nope", v));
}

TEST_CASE("nested pairing with enclosed parameter legs") {
    // bottom legs 1 b 2 b 3 4; {1,4} encloses both b legs, {2,3} one of them
    std::vector<LegKind> k = {LegKind::p1, LegKind::b, LegKind::p1, LegKind::b, LegKind::p1, LegKind::p1};
    Pairing p = {{0, 5}, {2, 4}};
    CHECK(pairing_sign(k, p) == -1);
    CHECK(pairing_crossings(k, Space::WhatF_ab, p) == 3);
}
