#include "wheelcalc/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace wc {

int grade(LegKind k) {
    switch (k) {
        case LegKind::p1:
        case LegKind::b:
        case LegKind::db:
            return 1;
        default:
            return 2;
    }
}

bool is_param(LegKind k) { return k == LegKind::a || k == LegKind::b; }
bool is_op(LegKind k) { return k == LegKind::da || k == LegKind::db; }

const char* kind_name(LegKind k) {
    static const char* names[] = {"p1", "f2", "F", "a", "b", "da", "db"};
    return names[static_cast<int>(k)];
}

std::optional<LegKind> kind_from_name(std::string_view s) {
    for (int i = 0; i < kNumKinds; ++i) {
        auto k = static_cast<LegKind>(i);
        if (s == kind_name(k)) return k;
    }
    return std::nullopt;
}

namespace {
const char* kSpaceNames[] = {"B",         "A",        "W",            "Wtilde",  "What",
                             "WhatF",     "WhatWedge", "WhatF_ab",    "WhatWedge_ab",
                             "What_ab"};
}

const char* space_name(Space s) { return kSpaceNames[static_cast<int>(s)]; }

std::optional<Space> space_from_name(std::string_view s) {
    for (int i = 0; i < 10; ++i)
        if (s == kSpaceNames[i]) return static_cast<Space>(i);
    return std::nullopt;
}

bool is_ordered(Space s) { return s != Space::B; }

Space base_space(Space s) {
    switch (s) {
        case Space::WhatF_ab: return Space::WhatF;
        case Space::WhatWedge_ab: return Space::WhatWedge;
        case Space::What_ab: return Space::What;
        default: return s;
    }
}

Space ab_space(Space s) {
    switch (s) {
        case Space::WhatF: return Space::WhatF_ab;
        case Space::WhatWedge: return Space::WhatWedge_ab;
        case Space::What: return Space::What_ab;
        default: return s;
    }
}

bool allows(Space s, LegKind k) {
    bool ab = base_space(s) != s;
    if (is_param(k) || is_op(k)) return ab;
    switch (base_space(s)) {
        case Space::B:
        case Space::A:
            return k == LegKind::p1;
        case Space::W:
        case Space::Wtilde:
        case Space::What:
            return k == LegKind::p1 || k == LegKind::f2;
        case Space::WhatF:
        case Space::WhatWedge:
            return k == LegKind::p1 || k == LegKind::F;
        default:
            return false;
    }
}

int sign_grade(Space s, LegKind k) {
    if (s == Space::B || s == Space::A) return 0;
    return grade(k) % 2;
}

std::array<int, 3> Builder::vertex() {
    std::array<int, 3> v{next, next + 1, next + 2};
    next += 3;
    verts.push_back(v);
    return v;
}

std::array<int, 3> Builder::vertex(int h0, int h1, int h2) {
    std::array<int, 3> v{h0, h1, h2};
    verts.push_back(v);
    return v;
}

int Builder::leg(LegKind k) {
    legs.emplace_back(k, next);
    return next++;
}

Diagram Builder::build() const {
    Diagram d;
    d.space = space;
    d.nv = static_cast<int>(verts.size());
    d.loops = loops;
    std::unordered_map<int, int> idx;
    idx.reserve(verts.size() * 3 + legs.size());
    for (int i = 0; i < d.nv; ++i)
        for (int s = 0; s < 3; ++s)
            if (!idx.emplace(verts[i][s], 3 * i + s).second)
                throw StructuralError("half-edge " + std::to_string(verts[i][s]) + " used twice");
    for (std::size_t j = 0; j < legs.size(); ++j) {
        d.legs.push_back(legs[j].first);
        if (!idx.emplace(legs[j].second, 3 * d.nv + static_cast<int>(j)).second)
            throw StructuralError("half-edge " + std::to_string(legs[j].second) + " used twice");
    }
    d.mate.assign(idx.size(), -1);
    for (auto [x, y] : edges) {
        auto ix = idx.find(x), iy = idx.find(y);
        if (ix == idx.end() || iy == idx.end())
            throw StructuralError("edge refers to unknown half-edge");
        int hx = ix->second, hy = iy->second;
        if (hx == hy || d.mate[hx] != -1 || d.mate[hy] != -1)
            throw StructuralError("half-edge " + std::to_string(hx == hy || d.mate[hx] != -1 ? x : y) +
                                  " in more than one edge");
        d.mate[hx] = hy;
        d.mate[hy] = hx;
    }
    for (std::size_t h = 0; h < d.mate.size(); ++h)
        if (d.mate[h] == -1) throw StructuralError("dangling half-edge");
    return d;
}

Builder to_builder(const Diagram& d) {
    Builder b(d.space);
    for (int i = 0; i < d.nv; ++i) b.verts.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    for (int j = 0; j < d.num_legs(); ++j) b.legs.emplace_back(d.legs[j], d.leg_half(j));
    for (int h = 0; h < d.num_half(); ++h)
        if (h < d.mate[h]) b.edges.emplace_back(h, d.mate[h]);
    b.next = d.num_half();
    b.loops = d.loops;
    return b;
}

void validate(const Diagram& d) {
    if (static_cast<int>(d.mate.size()) != d.num_half()) throw StructuralError("mate size mismatch");
    for (int h = 0; h < d.num_half(); ++h) {
        int m = d.mate[h];
        if (m < 0 || m >= d.num_half() || m == h || d.mate[m] != h)
            throw StructuralError("dangling half-edge " + std::to_string(h));
    }
    bool seen_op = false;
    for (auto k : d.legs) {
        if (!allows(d.space, k))
            throw StructuralError(std::string("leg kind ") + kind_name(k) + " not allowed in " +
                                  space_name(d.space));
        if (is_op(k)) seen_op = true;
        else if (seen_op) throw StructuralError("operator legs must form a suffix");
    }
}

Grading grading(const Diagram& d) {
    Grading g;
    g.n_internal = d.nv;
    for (auto k : d.legs) {
        g.legs_by_kind[static_cast<int>(k)]++;
        if (is_param(k)) g.type_i += grade(k);
        else if (is_op(k)) g.type_j += grade(k);
        else g.leg_grade += grade(k);
    }
    return g;
}

int degree(const Diagram& d) {
    if (d.space == Space::B || d.space == Space::A) return d.nv + d.num_legs();
    int r = d.nv;
    for (auto k : d.legs)
        if (!is_param(k) && !is_op(k) && grade(k) == 2) ++r;
    return r;
}

std::string serialize(const Diagram& d) {
    std::string s = "D[v:";
    for (int i = 0; i < d.nv; ++i) {
        s += '(';
        s += std::to_string(3 * i) + ' ' + std::to_string(3 * i + 1) + ' ' + std::to_string(3 * i + 2);
        s += ')';
    }
    s += ";e:";
    for (int h = 0; h < d.num_half(); ++h)
        if (h < d.mate[h]) s += '(' + std::to_string(h) + '-' + std::to_string(d.mate[h]) + ')';
    s += ";l:";
    for (int j = 0; j < d.num_legs(); ++j) {
        if (j) s += ',';
        s += kind_name(d.legs[j]);
        s += '@';
        s += std::to_string(d.leg_half(j));
    }
    if (d.loops > 0) s += ";o:" + std::to_string(d.loops);
    s += ']';
    return s;
}

namespace {

struct Cursor {
    std::string_view t;
    std::size_t p = 0;
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, p); }
    void skip() {
        while (p < t.size() && t[p] == ' ') ++p;
    }
    bool peek(char c) {
        skip();
        return p < t.size() && t[p] == c;
    }
    void expect(char c) {
        skip();
        if (p >= t.size() || t[p] != c) fail(std::string("expected '") + c + "'");
        ++p;
    }
    void expect(std::string_view w) {
        skip();
        if (t.substr(p, w.size()) != w) fail("expected '" + std::string(w) + "'");
        p += w.size();
    }
    int number() {
        skip();
        std::size_t q = p;
        while (p < t.size() && t[p] >= '0' && t[p] <= '9') ++p;
        if (q == p) fail("expected integer");
        if (p - q > 9) fail("integer too large");
        return std::stoi(std::string(t.substr(q, p - q)));
    }
    std::string word() {
        skip();
        std::size_t q = p;
        while (p < t.size() && ((t[p] >= 'a' && t[p] <= 'z') || (t[p] >= 'A' && t[p] <= 'Z') ||
                                (t[p] >= '0' && t[p] <= '9')))
            ++p;
        if (q == p) fail("expected leg kind");
        return std::string(t.substr(q, p - q));
    }
};

}  // namespace

Diagram parse(std::string_view text, Space space) {
    Cursor c{text};
    Builder b(space);
    c.expect("D[");
    c.expect("v:");
    while (c.peek('(')) {
        c.expect('(');
        int x = c.number(), y = c.number(), z = c.number();
        c.expect(')');
        b.vertex(x, y, z);
    }
    c.expect(';');
    c.expect("e:");
    while (c.peek('(')) {
        c.expect('(');
        int x = c.number();
        c.expect('-');
        int y = c.number();
        c.expect(')');
        b.join(x, y);
    }
    c.expect(';');
    c.expect("l:");
    if (!c.peek(']') && !c.peek(';')) {
        while (true) {
            std::size_t at = c.p;
            auto w = c.word();
            auto k = kind_from_name(w);
            if (!k) throw ParseError("unknown leg kind '" + w + "'", at);
            c.expect('@');
            b.legs.emplace_back(*k, c.number());
            if (!c.peek(',')) break;
            c.expect(',');
        }
    }
    if (c.peek(';')) {
        c.expect(';');
        c.expect("o:");
        b.loops = c.number();
    }
    c.expect(']');
    c.skip();
    if (c.p != text.size()) c.fail("trailing characters");
    Diagram d;
    try {
        d = b.build();
    } catch (const StructuralError& e) {
        throw ParseError(e.what(), text.size());
    }
    return d;
}

int components(const Diagram& d, std::vector<int>& comp) {
    int H = d.num_half();
    std::vector<int> parent(H);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (int i = 0; i < d.nv; ++i) {
        unite(3 * i, 3 * i + 1);
        unite(3 * i, 3 * i + 2);
    }
    for (int h = 0; h < H; ++h) unite(h, d.mate[h]);
    comp.assign(H, -1);
    std::vector<int> id(H, -1);
    int n = 0;
    for (int h = 0; h < H; ++h) {
        int r = find(h);
        if (id[r] < 0) id[r] = n++;
        comp[h] = id[r];
    }
    return n;
}

bool is_connected(const Diagram& d) {
    std::vector<int> comp;
    int n = components(d, comp) + d.loops;
    return n <= 1;
}

Diagram retag(const Diagram& d, Space s) {
    Diagram r = d;
    r.space = s;
    return r;
}

Diagram with_kinds(const Diagram& d, const std::vector<LegKind>& kinds, Space s) {
    Diagram r = d;
    r.space = s;
    r.legs = kinds;
    return r;
}

Diagram permute_legs(const Diagram& d, const std::vector<int>& order) {
    int L = d.num_legs();
    int base = 3 * d.nv;
    std::vector<int> pos(L);
    for (int k = 0; k < L; ++k) pos[order[k]] = k;
    auto tr = [&](int h) { return h < base ? h : base + pos[h - base]; };
    Diagram r;
    r.space = d.space;
    r.nv = d.nv;
    r.loops = d.loops;
    r.legs.resize(L);
    for (int k = 0; k < L; ++k) r.legs[k] = d.legs[order[k]];
    r.mate.assign(d.num_half(), -1);
    for (int h = 0; h < d.num_half(); ++h) r.mate[tr(h)] = tr(d.mate[h]);
    return r;
}

Diagram juxtapose(const Diagram& u, const Diagram& v) {
    Diagram r;
    r.space = u.space;
    r.nv = u.nv + v.nv;
    r.loops = u.loops + v.loops;
    r.legs = u.legs;
    r.legs.insert(r.legs.end(), v.legs.begin(), v.legs.end());
    int Lu = u.num_legs();
    auto tu = [&](int h) { return h < 3 * u.nv ? h : 3 * r.nv + (h - 3 * u.nv); };
    auto tv = [&](int h) { return h < 3 * v.nv ? 3 * u.nv + h : 3 * r.nv + Lu + (h - 3 * v.nv); };
    r.mate.assign(r.num_half(), -1);
    for (int h = 0; h < u.num_half(); ++h) r.mate[tu(h)] = tu(u.mate[h]);
    for (int h = 0; h < v.num_half(); ++h) r.mate[tv(h)] = tv(v.mate[h]);
    return r;
}

Diagram glue_legs(const Diagram& d, const std::vector<std::pair<int, int>>& pairs) {
    int L = d.num_legs();
    int base = 3 * d.nv;
    std::vector<int> partner(L, -1);
    for (auto [x, y] : pairs) {
        if (x == y || partner[x] != -1 || partner[y] != -1) throw StructuralError("ill-formed gluing");
        partner[x] = y;
        partner[y] = x;
    }
    std::vector<int> newpos(L, -1);
    Diagram r;
    r.space = d.space;
    r.nv = d.nv;
    r.loops = d.loops;
    for (int j = 0; j < L; ++j)
        if (partner[j] < 0) {
            newpos[j] = static_cast<int>(r.legs.size());
            r.legs.push_back(d.legs[j]);
        }
    int rbase = 3 * r.nv;
    auto tr = [&](int h) { return h < base ? h : rbase + newpos[h - base]; };
    r.mate.assign(r.num_half(), -1);
    std::vector<char> used(L, 0);
    for (int h = 0; h < d.num_half(); ++h) {
        if (h >= base && partner[h - base] >= 0) continue;
        int m = d.mate[h];
        while (m >= base && partner[m - base] >= 0) {
            int j = m - base;
            used[j] = used[partner[j]] = 1;
            m = d.mate[base + partner[j]];
        }
        r.mate[tr(h)] = tr(m);
    }
    for (int j = 0; j < L; ++j) {
        if (partner[j] < 0 || used[j]) continue;
        int x = j;
        do {
            used[x] = 1;
            int p = partner[x];
            used[p] = 1;
            x = d.mate[base + p] - base;
        } while (x != j);
        r.loops++;
    }
    return r;
}

Diagram fork_leg(const Diagram& d, int j, LegKind k, bool reversed) {
    Builder b = to_builder(d);
    int h = d.leg_half(j);
    int m = d.mate[h];
    auto& e = b.edges;
    for (auto& ed : e)
        if (ed.first == h || ed.second == h) {
            ed = e.back();
            e.pop_back();
            break;
        }
    int stem = b.half(), left = b.half(), right = b.half();
    if (reversed) b.vertex(stem, left, right);
    else b.vertex(stem, right, left);
    b.join(stem, m);
    int lh = b.half(), rh = b.half();
    b.join(left, lh);
    b.join(right, rh);
    auto it = b.legs.erase(b.legs.begin() + j);
    it = b.legs.insert(it, {k, rh});
    b.legs.insert(it, {k, lh});
    return b.build();
}

Diagram strut(Space s, LegKind x, LegKind y) {
    Builder b(s);
    int u = b.leg(x), v = b.leg(y);
    b.join(u, v);
    return b.build();
}

Diagram fork_tripod(Space s, LegKind stem, LegKind left, LegKind right) {
    Builder b(s);
    auto v = b.vertex();
    int hs = b.leg(stem), hl = b.leg(left), hr = b.leg(right);
    // v = (stem, right, left)
    b.join(v[0], hs);
    b.join(v[1], hr);
    b.join(v[2], hl);
    return b.build();
}

Diagram wheel(Space s, int n, LegKind k) {
    Builder b(s);
    std::vector<std::array<int, 3>> vs;
    for (int i = 0; i < n; ++i) vs.push_back(b.vertex());
    for (int i = 0; i < n; ++i) {
        b.join(vs[i][1], vs[(i + 1) % n][0]);
        b.join(vs[i][2], b.leg(k));
    }
    return b.build();
}

Diagram chain(Space s, LegKind end0, LegKind end1, int n, LegKind spoke) {
    Builder b(s);
    int e0 = b.leg(end0), e1 = b.leg(end1);
    if (n == 0) {
        b.join(e0, e1);
        return b.build();
    }
    int prev = e0;
    for (int i = 0; i < n; ++i) {
        auto v = b.vertex();
        b.join(prev, v[0]);
        b.join(v[1], b.leg(spoke));
        prev = v[2];
    }
    b.join(prev, e1);
    return b.build();
}

}  // namespace wc
