#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "wheelcalc/enumerative.hpp"
#include "wheelcalc/quotient.hpp"

using namespace wc;

TEST_CASE("descent") {
    CHECK(descent({4, 1, 2, 3, 5}) == 1);
    CHECK(descent({1, 2, 3, 4}) == 0);
    CHECK(descent({4, 3, 2, 1}) == 3);
    CHECK_THROWS(descent({1, 2, 1}));
}

TEST_CASE("reversal sends d(w) to n - 1 - d(w)") {
    for (auto& w : permutation_words(5)) {
        Word r(w.rbegin(), w.rend());
        CHECK(descent(r) == 4 - descent(w));
    }
}

TEST_CASE("phi and psi") {
    CHECK(phi_number(1) == 1);
    CHECK(phi_number(2) == 0);
    CHECK(phi_number(3) == -2);
    for (int n = 1; n <= 7; ++n) CHECK(phi_number(n) == psi_number(n));
    mpq_class p5(phi_number(5), 120);
    p5.canonicalize();
    CHECK(phi_recursive(5) == p5);
}

TEST_CASE("listed families") {
    auto g = enumerate_family(Family::GammaArrow, 3);
    CHECK(g.size() == 24);
    for (auto& a : g) {
        CHECK(a.w1.front() < a.w1.back());
        CHECK(std::none_of(a.d1.begin(), a.d1.end(), [](int d) { return d == 0; }));
    }
    auto x = enumerate_family(Family::XiArrow, 3);
    CHECK(x.size() == 8);
    for (auto& a : x) {
        CHECK(a.w1.front() == 1);
        CHECK(a.d1.front() == 0);
    }
    CHECK(family_from_name("thetaArrow") == Family::ThetaArrow);
    CHECK_FALSE(family_from_name("nope").has_value());
}

TEST_CASE("pairing type terms") {
    PairingType a{"A", {}};
    auto t = term_of_pairing(a);
    REQUIRE(t.size() == 1);
    // the bare fork, with its block weight
    CHECK(t.terms.begin()->second == mpq_class(1, 2) * canonical_form(block_A()).sign);
    // four glued pairs and three A blocks
    PairingType w{"AABAB", {{1, 5}, {2, 3}, {4, 6}, {7, 8}}};
    auto r = raw_term_of_pairing(w);
    CHECK(r.sign == 1);
    CHECK(r.coeff == mpq_class(1, 128));
    CHECK_THROWS(validate(PairingType{"AB", {{1, 1}}}));
    CHECK_THROWS(validate(PairingType{"AB", {{1, 4}}}));
}

TEST_CASE("components and content") {
    PairingType t{"AAAAABAA", {{1, 10}, {2, 9}, {3, 5}, {4, 6}, {7, 13}, {8, 12}, {11, 14}}};
    auto c = content_of(t);
    CHECK(c.size() == 3);
    CHECK(c[PairingType{"AA", {{1, 4}, {2, 3}}}] == 2);
    CHECK(c[PairingType{"BA", {{1, 2}}}] == 1);
    // 8! / ((2!^2 2!) (2! 1!) (2! 1!))
    CHECK(count_with_content(c) == 40320 / 32);
    CHECK(is_connected_type(PairingType{"AB", {{2, 3}}}));
    CHECK_FALSE(is_connected_type(PairingType{"AB", {}}));
}

TEST_CASE("factorization on random types") {
    std::mt19937 rng(7);
    for (int k = 0; k < 40; ++k) {
        int nb = 2 + static_cast<int>(rng() % 5);
        std::string w;
        for (int i = 0; i < nb; ++i) w += rng() % 3 ? 'A' : 'B';
        std::vector<int> legs(num_bottom_legs(w));
        std::iota(legs.begin(), legs.end(), 1);
        std::shuffle(legs.begin(), legs.end(), rng);
        PairingType t{w, {}};
        for (std::size_t i = 0; i + 1 < legs.size() && rng() % 4; i += 2)
            t.pairs.emplace_back(std::min(legs[i], legs[i + 1]), std::max(legs[i], legs[i + 1]));
        std::sort(t.pairs.begin(), t.pairs.end());
        LinComb p = LinComb::of(Diagram{Space::WhatWedge_ab, 0, {}, {}, 0});
        for (auto& c : components_of(t)) p = juxtapose(p, term_of_pairing(c));
        CHECK(p == term_of_pairing(t));
    }
}

TEST_CASE("traversal words of three blocks") {
    std::set<ArrowWord> seen;
    int gamma = 0;
    for_each_pairing_type(3, [&](const PairingType& t) {
        auto tw = traversal_word(t);
        if (!tw || tw->first != Family::GammaArrow) return;
        ++gamma;
        CHECK(seen.insert(tw->second).second);
        CHECK(tw->second.w1.front() < tw->second.w1.back());
    });
    CHECK(gamma == 24);
}

TEST_CASE("connected contributions at four blocks") {
    for (auto& c : connected_contributions(4)) {
        CHECK_MESSAGE(c.match, c.name);
        CHECK_FALSE(c.brute.is_zero());
    }
}

TEST_CASE("grid inputs") {
    CHECK_THROWS(grid_contributions(3, series_Z(3), series_Z(3)));
    auto g = grid_contributions(4, series_Y(4), series_Z(4));
    CHECK(g.match);
    CHECK(count_connected_grids(Family::PhiArrow, 2) == family_size_formula(Family::PhiArrow, 2));
    CHECK_THROWS(count_connected_grids(Family::GammaArrow, 2));
}

TEST_CASE("grid terms are unchanged by reordering the top factors") {
    // Moving a column block together with its gluing keeps the signed term.
    const Space S = Space::WhatWedge_ab;
    std::vector<Diagram> top = {chain(S, LegKind::b, LegKind::b, 1), chain(S, LegKind::b, LegKind::b, 3)};
    std::mt19937 rng(3);
    for (int k = 0; k < 20; ++k) {
        // two operators glue to all four parameters
        std::vector<int> s4 = {0, 1, 2, 3};
        std::shuffle(s4.begin(), s4.end(), rng);
        std::vector<Diagram> t2 = {top[0], top[1]};
        auto g = grid_term(2, t2, s4);
        // swap the two factors; parameter i of the old order is now at
        // position (i + 2) % 4
        std::vector<Diagram> t3 = {top[1], top[0]};
        std::vector<int> s5(4);
        for (int r = 0; r < 4; ++r) s5[r] = (s4[r] + 2) % 4;
        auto h = grid_term(2, t3, s5);
        CHECK(LinComb::of(g.d, g.coeff) == LinComb::of(h.d, h.coeff));
    }
}
