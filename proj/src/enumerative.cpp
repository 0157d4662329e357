#include "wheelcalc/enumerative.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "wheelcalc/operator.hpp"
#include "wheelcalc/quotient.hpp"

namespace wc {

namespace {

mpz_class fact(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

mpz_class pow2(int n) {
    mpz_class r = 1;
    r <<= n;
    return r;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int x, int y) { p[find(x)] = find(y); }
    int count() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(p.size()); ++i) c += find(i) == i;
        return c;
    }
};

void for_each_perm(Word w, const std::function<void(const Word&)>& cb) {
    std::sort(w.begin(), w.end());
    do cb(w);
    while (std::next_permutation(w.begin(), w.end()));
}

Word iota_word(int from, int to) {
    Word w;
    for (int s = from; s <= to; ++s) w.push_back(s);
    return w;
}

// Every decoration of the positions flagged in mask.
void for_each_decoration(const std::vector<char>& mask, const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) idx.push_back(static_cast<int>(i));
    std::vector<int> d(mask.size(), 0);
    const unsigned long long total = 1ULL << idx.size();
    for (unsigned long long bits = 0; bits < total; ++bits) {
        for (std::size_t k = 0; k < idx.size(); ++k) d[idx[k]] = (bits >> k) & 1 ? -1 : 1;
        cb(d);
    }
}

bool is_pair_family(Family f) { return f == Family::PhiArrow || f == Family::ThetaArrow; }

}  // namespace

int descent(const Word& w) {
    std::set<int> seen(w.begin(), w.end());
    if (seen.size() != w.size()) throw std::invalid_argument("descent: repeated symbol");
    int d = 0;
    for (std::size_t i = 1; i < w.size(); ++i) d += w[i] < w[i - 1];
    return d;
}

std::vector<Word> permutation_words(int n) {
    std::vector<Word> r;
    for_each_perm(iota_word(1, n), [&](const Word& w) { r.push_back(w); });
    return r;
}

std::vector<Word> sigma_words(int n) { return permutation_words(n); }

std::vector<Word> gamma_words(int n) {
    std::vector<Word> r;
    for_each_perm(iota_word(1, n), [&](const Word& w) {
        if (w.back() > w.front()) r.push_back(w);
    });
    return r;
}

mpz_class phi_number(int n) {
    mpz_class s = 0;
    for_each_perm(iota_word(1, n), [&](const Word& w) { s += descent(w) % 2 ? -1 : 1; });
    return s;
}

mpz_class psi_number(int n) {
    if (n == 1) return 1;
    if (n % 2 == 0) return 0;
    mpz_class s = 0;
    for_each_perm(iota_word(1, n), [&](const Word& w) {
        if (w.back() > w.front()) s += descent(w) % 2 ? -1 : 1;
    });
    return 2 * s;
}

mpq_class phi_recursive(int n) {
    static std::vector<mpq_class> memo = {0, 1, 0};
    while (static_cast<int>(memo.size()) <= n) {
        int m = static_cast<int>(memo.size());
        mpq_class s = 0;
        for (int i = 2; i <= m - 1; ++i) s += memo[i - 1] * memo[m - i];
        memo.push_back(-s / m);
    }
    return memo[n];
}

const char* family_name(Family f) {
    switch (f) {
        case Family::GammaArrow: return "gammaArrow";
        case Family::XiArrow: return "xiArrow";
        case Family::OmegaArrow: return "omegaArrow";
        case Family::DeltaArrow: return "deltaArrow";
        case Family::PhiArrow: return "phiArrow";
        case Family::ThetaArrow: return "thetaArrow";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::GammaArrow, Family::XiArrow, Family::OmegaArrow, Family::DeltaArrow, Family::PhiArrow,
                     Family::ThetaArrow})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

std::string to_string(const ArrowWord& a) {
    auto part = [](const Word& w, const std::vector<int>& d, const char* up, const char* down) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(w[i]);
            if (d[i] > 0) s += up;
            else if (d[i] < 0) s += down;
        }
        return s;
    };
    std::string s = part(a.w1, a.d1, ">", "<");
    if (!a.w2.empty() || !a.d2.empty()) s += " | " + part(a.w2, a.d2, "^", "v");
    return s;
}

void for_each_arrow_word(Family f, int n, int part, const std::function<void(const ArrowWord&)>& cb) {
    if (n < 1) throw std::invalid_argument("family size must be positive");
    auto emit1 = [&](const Word& w, const std::vector<char>& mask) {
        for_each_decoration(mask, [&](const std::vector<int>& d) { cb(ArrowWord{w, d, {}, {}}); });
    };
    auto emit2 = [&](const Word& w, const std::vector<char>& mask) {
        for_each_decoration(mask, [&](const std::vector<int>& d) { cb(ArrowWord{{}, {}, w, d}); });
    };
    switch (f) {
        case Family::GammaArrow:
            if (n < 2) throw std::invalid_argument("gammaArrow needs n >= 2");
            for_each_perm(iota_word(1, n), [&](const Word& w) {
                if (w.back() > w.front()) emit1(w, std::vector<char>(n, 1));
            });
            return;
        case Family::XiArrow:
            for_each_perm(iota_word(1, n), [&](const Word& w) {
                if (w.front() != 1) return;
                std::vector<char> m(n, 1);
                m[0] = 0;
                emit1(w, m);
            });
            return;
        case Family::OmegaArrow:
            if (n < 2) throw std::invalid_argument("omegaArrow needs n >= 2");
            for_each_perm(iota_word(1, n), [&](const Word& w) {
                if (w.back() <= w.front()) return;
                std::vector<char> m(n, 1);
                m[0] = m[n - 1] = 0;
                emit1(w, m);
            });
            return;
        case Family::DeltaArrow:
            for_each_perm(iota_word(1, n), [&](const Word& w) {
                std::vector<char> m(n, 1);
                m[n - 1] = 0;
                emit1(w, m);
            });
            return;
        case Family::PhiArrow:
            if (part == 1) {
                for_each_perm(iota_word(1, n), [&](const Word& w) { emit1(w, std::vector<char>(n, 1)); });
            } else if (part == 2) {
                for_each_perm(iota_word(2, n), [&](const Word& w) { emit2(w, std::vector<char>(n - 1, 1)); });
            } else {
                for_each_arrow_word(f, n, 1, [&](const ArrowWord& x) {
                    for_each_arrow_word(f, n, 2, [&](const ArrowWord& y) { cb(ArrowWord{x.w1, x.d1, y.w2, y.d2}); });
                });
            }
            return;
        case Family::ThetaArrow:
            if (part == 1) {
                for_each_perm(iota_word(1, n + 1), [&](const Word& w) {
                    if (w.back() <= w.front()) return;
                    std::vector<char> m(n + 1, 1);
                    m[0] = m[n] = 0;
                    emit1(w, m);
                });
            } else if (part == 2) {
                for_each_perm(iota_word(1, n), [&](const Word& w) { emit2(w, std::vector<char>(n, 1)); });
            } else {
                for_each_arrow_word(f, n, 1, [&](const ArrowWord& x) {
                    for_each_arrow_word(f, n, 2, [&](const ArrowWord& y) { cb(ArrowWord{x.w1, x.d1, y.w2, y.d2}); });
                });
            }
            return;
    }
}

std::vector<ArrowWord> enumerate_family(Family f, int n) {
    if (family_size_formula(f, n) > 5000000) throw std::invalid_argument("family too large to materialise");
    std::vector<ArrowWord> r;
    for_each_arrow_word(f, n, 0, [&](const ArrowWord& a) { r.push_back(a); });
    return r;
}

mpz_class family_count(Family f, int n) {
    auto count = [&](int part) {
        mpz_class c = 0;
        for_each_arrow_word(f, n, part, [&](const ArrowWord&) { ++c; });
        return c;
    };
    if (is_pair_family(f)) return count(1) * count(2);
    return count(0);
}

mpz_class family_size_formula(Family f, int n) {
    switch (f) {
        case Family::GammaArrow: return fact(n) * pow2(n - 1);
        case Family::XiArrow: return fact(n - 1) * pow2(n - 1);
        case Family::OmegaArrow: return n < 2 ? mpz_class(0) : fact(n) / 2 * pow2(n - 2);
        case Family::DeltaArrow: return fact(n) * pow2(n - 1);
        case Family::PhiArrow: return pow2(n) * fact(n) * pow2(n - 1) * fact(n - 1);
        case Family::ThetaArrow: return fact(n) * pow2(n) * (fact(n + 1) / 2) * pow2(n - 1);
    }
    return 0;
}

// ---------------------------------------------------------------------------

std::string to_string(const PairingType& t) {
    std::string s = "(" + t.word + ", {";
    for (std::size_t i = 0; i < t.pairs.size(); ++i) {
        if (i) s += ",";
        s += "{" + std::to_string(t.pairs[i].first) + "," + std::to_string(t.pairs[i].second) + "}";
    }
    return s + "})";
}

int num_bottom_legs(const std::string& word) {
    int n = 0;
    for (char c : word) {
        if (c == 'A') n += 2;
        else if (c == 'B') n += 1;
        else throw StructuralError("pairing word must use A and B");
    }
    return n;
}

void validate(const PairingType& t) {
    if (t.word.empty()) throw StructuralError("pairing word must be non-empty");
    int L = num_bottom_legs(t.word);
    std::vector<char> used(L + 1, 0);
    for (auto [x, y] : t.pairs) {
        if (x < 1 || y < 1 || x > L || y > L || x == y || used[x] || used[y])
            throw StructuralError("ill-formed pairing " + to_string(t));
        used[x] = used[y] = 1;
    }
}

Diagram block_A() { return raw_k(Space::WhatWedge_ab); }
Diagram block_B() { return raw_l(Space::WhatWedge_ab); }

namespace {

struct BlockLayout {
    Diagram J;
    std::vector<int> bottom;    // bottom leg number - 1 -> leg index of J
    std::vector<int> block_of;  // bottom leg number - 1 -> block
};

BlockLayout layout(const std::string& word) {
    BlockLayout L;
    L.J = Diagram{Space::WhatWedge_ab, 0, {}, {}, 0};
    Diagram A = block_A(), B = block_B();
    for (std::size_t b = 0; b < word.size(); ++b) {
        const Diagram& x = word[b] == 'A' ? A : B;
        int off = L.J.num_legs();
        L.J = juxtapose(L.J, x);
        for (int j = 0; j < x.num_legs(); ++j)
            if (x.legs[j] == LegKind::p1) {
                L.bottom.push_back(off + j);
                L.block_of.push_back(static_cast<int>(b));
            }
    }
    return L;
}

}  // namespace

RawTerm raw_term_of_pairing(const PairingType& t) {
    validate(t);
    BlockLayout L = layout(t.word);
    Pairing p;
    for (auto [x, y] : t.pairs) p.emplace_back(L.bottom[x - 1], L.bottom[y - 1]);
    RawTerm r;
    r.sign = pairing_sign(L.J.legs, p);
    r.coeff = r.sign;
    int nA = static_cast<int>(std::count(t.word.begin(), t.word.end(), 'A'));
    for (std::size_t i = 0; i < t.pairs.size() + nA; ++i) r.coeff /= 2;
    r.glued = glue_legs(L.J, p);
    return r;
}

LinComb term_of_pairing(const PairingType& t) {
    RawTerm r = raw_term_of_pairing(t);
    LinComb x(Space::WhatWedge_ab);
    x.add(r.glued, r.coeff);
    return x;
}

std::vector<PairingType> components_of(const PairingType& t) {
    validate(t);
    const int nb = static_cast<int>(t.word.size());
    std::vector<int> block_of;
    for (int b = 0; b < nb; ++b)
        for (int k = 0; k < (t.word[b] == 'A' ? 2 : 1); ++k) block_of.push_back(b);
    UnionFind uf(nb);
    for (auto [x, y] : t.pairs) uf.unite(block_of[x - 1], block_of[y - 1]);
    std::vector<int> order;  // component roots by first block
    std::map<int, int> idx;
    for (int b = 0; b < nb; ++b) {
        int r = uf.find(b);
        if (!idx.count(r)) {
            idx[r] = static_cast<int>(order.size());
            order.push_back(r);
        }
    }
    std::vector<PairingType> out(order.size());
    std::vector<int> renum(block_of.size(), 0);
    std::vector<int> next(order.size(), 0);
    for (std::size_t leg = 0; leg < block_of.size(); ++leg) {
        int c = idx[uf.find(block_of[leg])];
        renum[leg] = ++next[c];
    }
    for (int b = 0; b < nb; ++b) out[idx[uf.find(b)]].word += t.word[b];
    for (auto [x, y] : t.pairs) {
        int c = idx[uf.find(block_of[x - 1])];
        int a = renum[x - 1], bb = renum[y - 1];
        out[c].pairs.emplace_back(std::min(a, bb), std::max(a, bb));
    }
    for (auto& p : out) std::sort(p.pairs.begin(), p.pairs.end());
    return out;
}

Content content_of(const PairingType& t) {
    Content c;
    for (auto& p : components_of(t)) c[p]++;
    return c;
}

bool is_connected_type(const PairingType& t) { return components_of(t).size() == 1; }

mpz_class count_with_content(const Content& c) {
    int N = 0;
    mpz_class den = 1;
    for (auto& [k, m] : c) {
        N += m * static_cast<int>(k.word.size());
        for (int i = 0; i < m; ++i) den *= fact(static_cast<int>(k.word.size()));
        den *= fact(m);
    }
    return fact(N) / den;
}

void for_each_pairing_type(int blocks, const std::function<void(const PairingType&)>& cb) {
    for (unsigned mask = 0; mask < (1u << blocks); ++mask) {
        std::string w;
        for (int b = blocks - 1; b >= 0; --b) w += (mask >> b) & 1 ? 'B' : 'A';
        int L = num_bottom_legs(w);
        std::vector<int> pos(L);
        std::iota(pos.begin(), pos.end(), 1);
        PairingType t{w, {}};
        for_each_pairing(pos, [&](const Pairing& p) {
            t.pairs = p;
            cb(t);
        });
    }
}

LinComb loop_series(Space s, const ExactSeries& f) {
    LinComb r(s);
    if (f[0] != 0) throw std::invalid_argument("loop_series: constant term must vanish");
    for (int m = 1; m <= f.order(); ++m)
        if (f[m] != 0) r.add(wheel(s, m, LegKind::a), f[m]);
    return r;
}

LinComb strut_series(Space s, LegKind end0, LegKind end1, const ExactSeries& f) {
    LinComb r(s);
    for (int m = 0; m <= f.order(); ++m)
        if (f[m] != 0) r.add(chain(s, end0, end1, m, LegKind::a), f[m]);
    return r;
}

namespace {

// Leg ends of a connected pairing type: (#bottom, #b) unpaired.
std::pair<int, int> free_ends(const PairingType& t) {
    int L = num_bottom_legs(t.word);
    int bottoms = L - 2 * static_cast<int>(t.pairs.size());
    int bs = static_cast<int>(std::count(t.word.begin(), t.word.end(), 'B'));
    return {bottoms, bs};
}

}  // namespace

std::vector<Contribution> connected_contributions(int max_blocks) {
    const Space S = Space::WhatWedge_ab;
    std::vector<Contribution> out(4);
    out[0].name = "C_||";
    out[1].name = "C_o";
    out[2].name = "C_bb";
    out[3].name = "C_|b";
    for (auto& c : out) c.brute = c.closed = LinComb(S);
    for (int N = 1; N <= max_blocks; ++N) {
        Q inv = Q(1) / Q(fact(N));
        for_each_pairing_type(N, [&](const PairingType& t) {
            if (!is_connected_type(t)) return;
            auto [bot, bs] = free_ends(t);
            int cls = bot == 2 ? 0 : bot == 0 && bs == 0 ? 1 : bs == 2 ? 2 : 3;
            out[cls].brute.add(term_of_pairing(t), inv);
        });
    }
    const int N = max_blocks;
    ExactSeries th = rescale(series_tanh(N), Q(1, 2));
    out[0].closed = strut_series(S, LegKind::p1, LegKind::p1, th);
    out[1].closed = Q(1, 2) * loop_series(S, rescale(series_logcosh(N), Q(1, 2)));
    if (N >= 2) {
        ExactSeries t = series_tanh(N);
        t.c[1] -= 1;
        ExactSeries bb = rescale(shift_down(t, 2), Q(1, 2));
        out[2].closed = Q(-1, 4) * strut_series(S, LegKind::b, LegKind::b, bb);
    }
    ExactSeries tx = rescale(shift_down(series_tanh(N), 1), Q(1, 2));
    out[3].closed = Q(-1) * strut_series(S, LegKind::p1, LegKind::b, tx);
    for (auto& c : out) c.match = c.brute == c.closed || equal_mod(c.brute, c.closed);
    return out;
}

std::optional<std::pair<Family, ArrowWord>> traversal_word(const PairingType& t) {
    if (!is_connected_type(t)) return std::nullopt;
    const int nb = static_cast<int>(t.word.size());
    // Ports: for A blocks 0 = left bottom leg, 1 = right; for B 0 = bottom, 1 = b.
    std::vector<std::pair<int, int>> leg_port;  // bottom leg -> (block, port)
    std::vector<std::array<int, 2>> port_leg(nb, {-1, -1});
    for (int b = 0; b < nb; ++b) {
        int k = t.word[b] == 'A' ? 2 : 1;
        for (int p = 0; p < k; ++p) {
            port_leg[b][p] = static_cast<int>(leg_port.size());
            leg_port.emplace_back(b, p);
        }
    }
    std::vector<int> partner(leg_port.size(), -1);
    for (auto [x, y] : t.pairs) {
        partner[x - 1] = y - 1;
        partner[y - 1] = x - 1;
    }
    auto [bot, bs] = free_ends(t);
    ArrowWord a;
    // Walk from (block, entry port); A blocks record direction.
    auto walk = [&](int block, int port, int stop_block) {
        while (true) {
            a.w1.push_back(block + 1);
            if (t.word[block] == 'A') {
                a.d1.push_back(port == 0 ? 1 : -1);
                int out_leg = port_leg[block][1 - port];
                int nxt = partner[out_leg];
                if (nxt < 0) return;
                std::tie(block, port) = leg_port[nxt];
                if (block == stop_block) return;
            } else {
                a.d1.push_back(0);
                if (port == 1) {
                    int nxt = partner[port_leg[block][0]];
                    if (nxt < 0) return;
                    std::tie(block, port) = leg_port[nxt];
                } else {
                    return;
                }
            }
        }
    };
    if (bot == 2) {
        int first = -1;
        for (std::size_t l = 0; l < leg_port.size(); ++l)
            if (partner[l] < 0) {
                first = static_cast<int>(l);
                break;
            }
        walk(leg_port[first].first, leg_port[first].second, -1);
        return std::make_pair(Family::GammaArrow, a);
    }
    if (bot == 0 && bs == 0) {
        a.w1.push_back(1);
        a.d1.push_back(0);
        int nxt = partner[port_leg[0][1]];
        if (leg_port[nxt].first != 0) walk(leg_port[nxt].first, leg_port[nxt].second, 0);
        return std::make_pair(Family::XiArrow, a);
    }
    if (bs == 2) {
        int first = static_cast<int>(t.word.find('B'));
        walk(first, 1, -1);
        a.d1.back() = 0;
        return std::make_pair(Family::OmegaArrow, a);
    }
    int first = -1;
    for (std::size_t l = 0; l < leg_port.size(); ++l)
        if (partner[l] < 0) first = static_cast<int>(l);
    walk(leg_port[first].first, leg_port[first].second, -1);
    return std::make_pair(Family::DeltaArrow, a);
}

// ---------------------------------------------------------------------------

LinComb yterm(const ExactSeries& Y) { return strut_series(Space::WhatWedge_ab, LegKind::p1, LegKind::b, Y); }

LinComb zterm(const ExactSeries& Z) { return Q(1, 2) * strut_series(Space::WhatWedge_ab, LegKind::b, LegKind::b, Z); }

GridTerm grid_term(int n_ops, const std::vector<Diagram>& top, const std::vector<int>& sigma) {
    const Space S = Space::WhatWedge_ab;
    LinComb vz(S);
    Diagram v{S, 0, {}, {}, 0};
    Diagram z = raw_Z(S);
    Q coeff = 1;
    for (int i = 0; i < n_ops; ++i) {
        Gluing none;
        coeff *= gluing_sign(v, z, none);
        v = gluing_diagram(v, z, none);
        coeff *= Q(-1, 2);
    }
    Diagram w{S, 0, {}, {}, 0};
    for (auto& d : top) w = juxtapose(w, d);
    std::vector<int> ops, pars;
    for (int j = 0; j < v.num_legs(); ++j)
        if (is_op(v.legs[j])) ops.push_back(j);
    for (int j = 0; j < w.num_legs(); ++j)
        if (w.legs[j] == LegKind::b) pars.push_back(j);
    if (sigma.size() != ops.size()) throw StructuralError("grid_term: sigma has the wrong size");
    Gluing g;
    for (std::size_t r = 0; r < ops.size(); ++r) {
        g.pairs.emplace_back(ops[r], pars.at(sigma[r]));
        g.grade += 1;
    }
    coeff *= gluing_sign(v, w, g);
    return GridTerm{coeff, gluing_diagram(v, w, g)};
}

namespace {

bool grid_connected(int n_ops, const std::vector<int>& owner, const std::vector<int>& sigma, int n_top) {
    UnionFind uf(n_ops + n_top);
    for (std::size_t r = 0; r < sigma.size(); ++r) uf.unite(static_cast<int>(r) / 2, n_ops + owner[sigma[r]]);
    return uf.count() == 1;
}

// Words over {Y, Z} with #Y + 2 #Z = 2n and #Y in {0, 2}.
std::vector<std::string> grid_words(int n, bool with_y) {
    std::vector<std::string> r;
    if (!with_y) {
        r.push_back(std::string(n, 'Z'));
        return r;
    }
    int len = n + 1;
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
            std::string w(len, 'Z');
            w[i] = w[j] = 'Y';
            r.push_back(w);
        }
    return r;
}

std::vector<int> owners(const std::string& w) {
    std::vector<int> o;
    for (std::size_t t = 0; t < w.size(); ++t)
        for (int k = 0; k < (w[t] == 'Z' ? 2 : 1); ++k) o.push_back(static_cast<int>(t));
    return o;
}

}  // namespace

mpz_class count_connected_grids(Family f, int n) {
    if (f != Family::PhiArrow && f != Family::ThetaArrow) throw std::invalid_argument("grid family expected");
    mpz_class c = 0;
    for (auto& w : grid_words(n, f == Family::ThetaArrow)) {
        std::vector<int> o = owners(w);
        std::vector<int> sigma(2 * n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do
            if (grid_connected(n, o, sigma, static_cast<int>(w.size()))) ++c;
        while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return c;
}

GridResult grid_contributions(int max_a, const ExactSeries& Y, const ExactSeries& Z) {
    if (!Y.even()) throw std::invalid_argument("Y must contain only even powers");
    if (!Z.odd()) throw std::invalid_argument("Z must contain only odd powers");
    const Space S = Space::WhatWedge_ab;
    GridResult r;
    r.C0_brute = r.C2_brute = LinComb(S);
    for (int n = 1; n <= max_a; ++n)
        for (bool with_y : {false, true})
            for (auto& w : grid_words(n, with_y)) {
                std::vector<int> o = owners(w);
                // spoke counts per top factor
                std::vector<int> m(w.size(), 0);
                std::function<void(std::size_t, int)> rec = [&](std::size_t t, int used) {
                    if (t == w.size()) {
                        std::vector<Diagram> top;
                        Q c = Q(1) / Q(fact(n)) / Q(fact(static_cast<int>(w.size())));
                        for (std::size_t q = 0; q < w.size(); ++q) {
                            if (w[q] == 'Y') {
                                top.push_back(chain(S, LegKind::p1, LegKind::b, m[q]));
                                c *= Y[m[q]];
                            } else {
                                top.push_back(chain(S, LegKind::b, LegKind::b, m[q]));
                                c *= Q(1, 2) * Z[m[q]];
                            }
                        }
                        if (c == 0) return;
                        std::vector<int> sigma(2 * n);
                        std::iota(sigma.begin(), sigma.end(), 0);
                        LinComb& dst = with_y ? r.C2_brute : r.C0_brute;
                        do {
                            if (!grid_connected(n, o, sigma, static_cast<int>(w.size()))) continue;
                            GridTerm g = grid_term(n, top, sigma);
                            dst.add(g.d, c * g.coeff);
                        } while (std::next_permutation(sigma.begin(), sigma.end()));
                        return;
                    }
                    int start = w[t] == 'Y' ? 0 : 1;
                    for (int k = start; used + k <= max_a; k += 2) {
                        m[t] = k;
                        rec(t + 1, used + k);
                    }
                };
                rec(0, n);
            }
    r.C0_closed = grid_C0_closed(Z, max_a);
    r.C2_closed = grid_C2_closed(Y, Z, max_a);
    r.match = (r.C0_brute == r.C0_closed || equal_mod(r.C0_brute, r.C0_closed)) &&
              (r.C2_brute == r.C2_closed || equal_mod(r.C2_brute, r.C2_closed));
    return r;
}

LinComb grid_C0_closed(const ExactSeries& Z, int max_a) {
    ExactSeries aZ = truncate(shift_up(Z, 1), max_a);
    ExactSeries sum(max_a), p = ExactSeries::constant(max_a, 1);
    for (int n = 1; n <= max_a; ++n) {
        p = p * aZ;
        sum = sum + Q(1, n) * p;
    }
    return Q(-1, 2) * loop_series(Space::WhatWedge_ab, sum);
}

LinComb grid_C2_closed(const ExactSeries& Y, const ExactSeries& Z, int max_a) {
    ExactSeries aZ = truncate(shift_up(Z, 1), max_a);
    ExactSeries aY = truncate(shift_up(Y, 1), max_a);
    ExactSeries Yt = truncate(Y, max_a);
    ExactSeries sum(max_a), p = ExactSeries::constant(max_a, 1);
    for (int n = 0; n <= max_a; ++n) {
        sum = sum + Yt * p * aY;
        p = p * aZ;
    }
    return Q(-1, 2) * strut_series(Space::WhatWedge_ab, LegKind::p1, LegKind::p1, sum);
}

SeriesIdentityReport series_identity_checks(int order, const ExactSeries* z_override) {
    SeriesIdentityReport rep;
    const int N = order;
    ExactSeries Y = series_Y(N + 2), Z = z_override ? truncate(*z_override, N + 2) : series_Z(N + 2);
    // sum 1/n (aZ)^n = -ln(tanh(a/2)/(a/2))
    ExactSeries aZ = truncate(shift_up(Z, 1), N);
    ExactSeries lhs(N), p = ExactSeries::constant(N, 1);
    for (int n = 1; n <= N; ++n) {
        p = p * aZ;
        lhs = lhs + Q(1, n) * p;
    }
    ExactSeries tx = rescale(shift_down(series_tanh(N + 1), 1), Q(1, 2));
    rep.log_identity = lhs == -log(tx);
    // 1/2 sum Y (aZ)^n a Y = tanh(a/2)
    ExactSeries aY = truncate(shift_up(Y, 1), N), Yt = truncate(Y, N);
    ExactSeries s(N);
    p = ExactSeries::constant(N, 1);
    for (int n = 0; n <= N; ++n) {
        s = s + Yt * p * aY;
        p = p * aZ;
    }
    rep.tanh_identity = Q(1, 2) * s == rescale(series_tanh(N), Q(1, 2));
    return rep;
}

}  // namespace wc
