#include "doctest.h"
#include "support.hpp"
#include "wheelcalc/maps.hpp"
#include "wheelcalc/quotient.hpp"

using namespace wc;

namespace {

// Chord diagrams on a line with n chords.
std::vector<Diagram> chord_diagrams(int n) {
    std::vector<Diagram> out;
    Diagram d;
    d.space = Space::A;
    d.legs.assign(2 * n, LegKind::p1);
    d.mate.assign(2 * n, -1);
    std::function<void()> rec = [&]() {
        int h = 0;
        while (h < 2 * n && d.mate[h] >= 0) ++h;
        if (h == 2 * n) {
            out.push_back(d);
            return;
        }
        for (int m = h + 1; m < 2 * n; ++m)
            if (d.mate[m] < 0) {
                d.mate[h] = m;
                d.mate[m] = h;
                rec();
                d.mate[h] = d.mate[m] = -1;
            }
    };
    rec();
    return out;
}

}  // namespace

TEST_CASE("slice enumeration") {
    auto s = enumerate_slice({Space::B, 0, {LegKind::p1, LegKind::p1}});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == canonical_form(strut(Space::B, LegKind::p1, LegKind::p1)).d);
    // with unordered legs the tripod equals minus itself
    auto y = enumerate_slice({Space::B, 1, {LegKind::p1, LegKind::p1, LegKind::p1}});
    CHECK(y.empty());
    auto ya = enumerate_slice({Space::A, 1, {LegKind::p1, LegKind::p1, LegKind::p1}});
    CHECK(ya.size() == 1);
    auto w = enumerate_slice({Space::B, 2, {LegKind::p1, LegKind::p1}});
    // the 2-wheel and the strut beside a theta
    CHECK(w.size() == 2);
}

TEST_CASE("chord diagrams modulo STU and IHX give the known dimensions") {
    const int expect[] = {1, 1, 2, 3, 6};
    for (int n = 0; n <= 4; ++n) {
        std::vector<LinComb> v;
        for (auto& d : chord_diagrams(n)) v.push_back(reduce(LinComb::of(d)));
        CHECK_MESSAGE(rank_of(v) == expect[n], "degree " << n);
    }
}

TEST_CASE("relation vectors vanish") {
    auto w2 = wheel(Space::What, 2, LegKind::f2);
    for (auto& r : relations_at(canonical_form(w2).d, 4)) CHECK(reduce(r, 4).is_zero());
    Builder b(Space::WhatWedge);
    auto v = b.vertex();
    int x = b.leg(LegKind::F), y = b.leg(LegKind::F), z = b.leg(LegKind::p1);
    b.join(v[0], x);
    b.join(v[1], y);
    b.join(v[2], z);
    for (auto& r : relations_at(canonical_form(b.build()).d)) CHECK(reduce(r).is_zero());
    CHECK(reduce(LinComb(Space::A)).is_zero());
}

TEST_CASE("wedge space: grade-1 legs move freely") {
    Builder b(Space::WhatWedge);
    auto v = b.vertex();
    int x = b.leg(LegKind::p1), y = b.leg(LegKind::p1), z = b.leg(LegKind::F);
    b.join(v[0], x);
    b.join(v[1], y);
    b.join(v[2], z);
    Diagram d = b.build();
    Diagram s;
    wct::relabel(d, {0}, {std::array<int, 3>{0, 1, 2}}, {1, 0, 2}, s);
    CHECK(equal_mod(LinComb::of(d), -1 * LinComb::of(s)));
}

TEST_CASE("PBW: dimensions of B and A agree in low degree") {
    for (int deg = 1; deg <= 4; ++deg) {
        int db = 0;
        std::vector<LinComb> va;
        for (int nv = 0; nv <= deg; ++nv) {
            int L = 2 * deg - nv;  // nv + L even and degree (nv + L) / 2
            if (L < 0) continue;
            Slice sb{Space::B, nv, std::vector<LegKind>(L, LegKind::p1)};
            auto gens = enumerate_slice(sb);
            // only diagrams whose components all carry legs
            std::vector<LinComb> vb;
            for (auto& d : gens) {
                std::vector<int> comp;
                int nc = components(d, comp);
                std::vector<char> has(nc, 0);
                for (int j = 0; j < d.num_legs(); ++j) has[comp[d.leg_half(j)]] = 1;
                if (std::find(has.begin(), has.end(), 0) != has.end()) continue;
                vb.push_back(reduce(LinComb::of(d)));
                va.push_back(reduce(chi_B(LinComb::of(d))));
            }
            db += rank_of(vb);
        }
        CHECK_MESSAGE(rank_of(va) == db, "degree " << deg);
    }
}
