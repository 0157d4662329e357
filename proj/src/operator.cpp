#include "wheelcalc/operator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "wheelcalc/conventions.hpp"
#include "wheelcalc/maps.hpp"

namespace wc {

namespace {

bool acts_on(LegKind op, LegKind par) {
    return (op == LegKind::da && par == LegKind::a) || (op == LegKind::db && par == LegKind::b);
}

void require_ab(Space s, const char* what) {
    if (base_space(s) == s) throw StructuralError(std::string(what) + ": operator calculus needs an *_ab space");
}

std::vector<int> op_legs(const Diagram& d) {
    std::vector<int> r;
    bool seen = false;
    for (int j = 0; j < d.num_legs(); ++j) {
        if (is_op(d.legs[j])) {
            seen = true;
            r.push_back(j);
        } else if (seen) {
            throw StructuralError("operator legs must form a suffix");
        }
    }
    return r;
}

std::vector<int> nonop_legs(const Diagram& d) {
    std::vector<int> r;
    for (int j = 0; j < d.num_legs(); ++j)
        if (!is_op(d.legs[j])) r.push_back(j);
    return r;
}

// Glue the listed pairs of the juxtaposition J and reorder the surviving
// legs to follow seq (indices into J's legs).
Diagram glue_and_order(const Diagram& J, const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& seq) {
    Diagram g = glue_legs(J, pairs);
    std::vector<char> gone(J.num_legs(), 0);
    for (auto [x, y] : pairs) gone[x] = gone[y] = 1;
    std::vector<int> newpos(J.num_legs(), -1);
    int c = 0;
    for (int j = 0; j < J.num_legs(); ++j)
        if (!gone[j]) newpos[j] = c++;
    std::vector<int> order;
    order.reserve(seq.size());
    for (int j : seq) order.push_back(newpos[j]);
    return permute_legs(g, order);
}

}  // namespace

std::vector<Gluing> gluings(const Diagram& v, const Diagram& w, int grade_filter) {
    std::vector<int> ops = op_legs(v);
    std::vector<int> pars;
    for (int j = 0; j < w.num_legs(); ++j)
        if (is_param(w.legs[j])) pars.push_back(j);
    std::vector<Gluing> out;
    std::vector<char> used(pars.size(), 0);
    Gluing cur;
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (grade_filter >= 0 && cur.grade > grade_filter) return;
        if (r == ops.size()) {
            if (grade_filter < 0 || cur.grade == grade_filter) out.push_back(cur);
            return;
        }
        rec(r + 1);
        for (std::size_t q = 0; q < pars.size(); ++q) {
            if (used[q] || !acts_on(v.legs[ops[r]], w.legs[pars[q]])) continue;
            used[q] = 1;
            cur.pairs.emplace_back(ops[r], pars[q]);
            cur.grade += grade(v.legs[ops[r]]);
            rec(r + 1);
            cur.grade -= grade(v.legs[ops[r]]);
            cur.pairs.pop_back();
            used[q] = 0;
        }
    };
    rec(0);
    return out;
}

int gluing_sign(const Diagram& v, const Diagram& w, const Gluing& s) {
    // Rows: v's operators, the first at the bottom.  Columns: w's non-operator
    // legs.  A grade-1 operator crosses every grade-1 column left of its
    // target whose vertical line reaches below its row.
    std::vector<int> ops = op_legs(v);
    std::vector<int> cols = nonop_legs(w);
    const int m = static_cast<int>(cols.size());
    std::vector<int> col_of_leg(w.num_legs(), -1);
    for (int c = 0; c < m; ++c) col_of_leg[cols[c]] = c;
    std::vector<int> target(ops.size(), m);
    std::vector<int> row_of_col(m, -1);
    for (auto [x, y] : s.pairs) {
        int r = static_cast<int>(std::find(ops.begin(), ops.end(), x) - ops.begin());
        target[r] = col_of_leg[y];
        row_of_col[col_of_leg[y]] = r;
    }
    int x = 0;
    for (std::size_t r = 0; r < ops.size(); ++r) {
        if (sign_grade(v.space, v.legs[ops[r]]) == 0) continue;
        for (int c = 0; c < target[r]; ++c) {
            if (sign_grade(w.space, w.legs[cols[c]]) == 0) continue;
            if (row_of_col[c] < 0 || row_of_col[c] < static_cast<int>(r)) ++x;
        }
    }
    return x % 2 ? -1 : 1;
}

Diagram gluing_diagram(const Diagram& v, const Diagram& w, const Gluing& s) {
    Diagram J = juxtapose(v, w);
    const int Lv = v.num_legs();
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> glued(J.num_legs(), 0);
    for (auto [x, y] : s.pairs) {
        pairs.emplace_back(x, Lv + y);
        glued[x] = glued[Lv + y] = 1;
    }
    std::vector<int> seq;
    for (int j : nonop_legs(v)) seq.push_back(j);
    for (int j : nonop_legs(w))
        if (!glued[Lv + j]) seq.push_back(Lv + j);
    for (int j : op_legs(v))
        if (!glued[j]) seq.push_back(j);
    for (int j : op_legs(w)) seq.push_back(Lv + j);
    return glue_and_order(J, pairs, seq);
}

LinComb vdash(const LinComb& v, const LinComb& w, int grade_filter) {
    if (v.space != w.space) throw StructuralError("vdash: space mismatch");
    require_ab(v.space, "vdash");
    LinComb r(v.space);
    for (auto& [a, x] : v.terms)
        for (auto& [b, y] : w.terms)
            for (auto& s : gluings(a, b, grade_filter))
                r.add(gluing_diagram(a, b, s), x * y * gluing_sign(a, b, s));
    return r;
}

LinComb vdash_rewrite(const LinComb& v, const LinComb& w) {
    if (v.space != w.space) throw StructuralError("vdash: space mismatch");
    require_ab(v.space, "vdash");
    LinComb r(v.space);
    for (auto& [a, x] : v.terms)
        for (auto& [b, y] : w.terms) {
            Diagram J = juxtapose(a, b);
            const int Lv = a.num_legs();
            struct State {
                std::vector<int> seq;
                std::vector<std::pair<int, int>> pairs;
                int sign = 1;
            };
            State init;
            init.seq.resize(J.num_legs());
            std::iota(init.seq.begin(), init.seq.end(), 0);
            std::vector<State> stack{init};
            while (!stack.empty()) {
                State st = std::move(stack.back());
                stack.pop_back();
                int p = -1;
                for (int q = static_cast<int>(st.seq.size()) - 2; q >= 0; --q)
                    if (st.seq[q] < Lv && is_op(J.legs[st.seq[q]]) && st.seq[q + 1] >= Lv &&
                        !is_op(J.legs[st.seq[q + 1]])) {
                        p = q;
                        break;
                    }
                if (p < 0) {
                    r.add(glue_and_order(J, st.pairs, st.seq), x * y * st.sign);
                    continue;
                }
                int o = st.seq[p], t = st.seq[p + 1];
                if (acts_on(J.legs[o], J.legs[t])) {
                    State g = st;
                    g.pairs.emplace_back(o, t);
                    g.seq.erase(g.seq.begin() + p, g.seq.begin() + p + 2);
                    stack.push_back(std::move(g));
                }
                std::swap(st.seq[p], st.seq[p + 1]);
                if (sign_grade(J.space, J.legs[o]) && sign_grade(J.space, J.legs[t])) st.sign = -st.sign;
                stack.push_back(std::move(st));
            }
        }
    return r;
}

LinComb sharp(const LinComb& v, const LinComb& w) {
    if (v.space != w.space) throw StructuralError("sharp: space mismatch");
    LinComb r(v.space);
    for (auto& [a, x] : v.terms)
        for (auto& [b, y] : w.terms) {
            Gluing none;
            r.add(gluing_diagram(a, b, none), x * y * gluing_sign(a, b, none));
        }
    return r;
}

// ---------------------------------------------------------------------------

struct OpSeries::Impl {
    Space space;
    int max_nv;
    CompFn comp;
    BoundFn op_bound, param_bound;
    std::string desc;
    std::map<std::pair<int, int>, LinComb> memo;
    std::map<int, int> ob_memo, pb_memo;
};

OpSeries::OpSeries(Space s, int max_nv, CompFn comp, BoundFn ob, BoundFn pb, std::string desc)
    : p_(std::make_shared<Impl>()) {
    p_->space = s;
    p_->max_nv = max_nv;
    p_->comp = std::move(comp);
    p_->op_bound = std::move(ob);
    p_->param_bound = std::move(pb);
    p_->desc = std::move(desc);
}

Space OpSeries::space() const { return p_->space; }
int OpSeries::max_nv() const { return p_->max_nv; }
const std::string& OpSeries::description() const { return p_->desc; }

const LinComb& OpSeries::comp(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = p_->memo.find(key);
    if (it != p_->memo.end()) return it->second;
    LinComb raw = (i < 0 || j < 0) ? LinComb(p_->space) : p_->comp(i, j);
    LinComb c(p_->space);
    for (auto& [d, x] : raw.terms) {
        if (d.nv > p_->max_nv) continue;
        Grading g = grading(d);
        if (g.type_i != i || g.type_j != j) throw StructuralError("series part of the wrong type");
        c.add_canonical(d, x);
    }
    return p_->memo.emplace(key, std::move(c)).first->second;
}

int OpSeries::op_bound(int k) const {
    auto it = p_->ob_memo.find(k);
    if (it != p_->ob_memo.end()) return it->second;
    return p_->ob_memo[k] = p_->op_bound(k);
}

int OpSeries::param_bound(int n) const {
    auto it = p_->pb_memo.find(n);
    if (it != p_->pb_memo.end()) return it->second;
    return p_->pb_memo[n] = p_->param_bound(n);
}

LinComb OpSeries::window(int t1) const {
    LinComb r(space());
    for (int i = 0; i <= t1; ++i)
        for (int j = 0; i + j <= t1; ++j) r += comp(i, j);
    return r;
}

namespace {

struct TypeInfo {
    int i, j, nv;
};

std::map<std::pair<int, int>, LinComb> split_by_type(const LinComb& x, int max_nv) {
    std::map<std::pair<int, int>, LinComb> r;
    for (auto& [d, c] : x.terms) {
        if (d.nv > max_nv) continue;
        Grading g = grading(d);
        auto [it, _] = r.try_emplace({g.type_i, g.type_j}, LinComb(x.space));
        it->second.add_canonical(d, c);
    }
    return r;
}

std::vector<TypeInfo> type_infos(const LinComb& x, int max_nv) {
    std::map<std::pair<int, int>, int> nvmin;
    for (auto& [d, c] : x.terms) {
        if (d.nv > max_nv) continue;
        Grading g = grading(d);
        auto key = std::make_pair(g.type_i, g.type_j);
        auto it = nvmin.find(key);
        if (it == nvmin.end() || d.nv < it->second) nvmin[key] = d.nv;
    }
    std::vector<TypeInfo> r;
    for (auto& [k, n] : nvmin) r.push_back({k.first, k.second, n});
    return r;
}

// Largest total of `gain` over multisets of items with total `cost` <= cap
// and total vertices <= vcap.
int knapsack(const std::vector<TypeInfo>& items, bool ops, int cap, int vcap) {
    for (auto& t : items) {
        int cost = ops ? t.i : t.j, gain = ops ? t.j : t.i;
        if (cost == 0 && t.nv == 0 && gain > 0) return kUnbounded;
    }
    std::vector<std::vector<int>> best(cap + 1, std::vector<int>(vcap + 1, 0));
    for (int c = 0; c <= cap; ++c)
        for (int vv = 0; vv <= vcap; ++vv)
            for (auto& t : items) {
                int cost = ops ? t.i : t.j, gain = ops ? t.j : t.i;
                if (cost > c || t.nv > vv || (cost == 0 && t.nv == 0)) continue;
                best[c][vv] = std::max(best[c][vv], best[c - cost][vv - t.nv] + gain);
            }
    return best[cap][vcap];
}

int add_bounds(int x, int y) {
    if (x < 0 || y < 0) return -1;
    if (x >= kUnbounded || y >= kUnbounded) return kUnbounded;
    return x + y;
}

void check_exponent(const LinComb& x) {
    for (auto& [d, c] : x.terms) {
        Grading g = grading(d);
        if (g.type_i == 0 && g.type_j == 0) throw StructuralError("exp: exponent has a part of type (0,0)");
    }
}

OpSeries exp_series(const LinComb& x, int max_nv, const std::string& name) {
    check_exponent(x);
    auto parts = std::make_shared<std::map<std::pair<int, int>, LinComb>>(split_by_type(x, max_nv));
    auto infos = type_infos(x, max_nv);
    Space s = x.space;
    // powers[(n, i, j)] = part of x^n of type (i, j)
    auto powers = std::make_shared<std::map<std::tuple<int, int, int>, LinComb>>();
    using PowerFn = std::function<LinComb(int, int, int)>;
    auto holder = std::make_shared<PowerFn>();
    std::weak_ptr<PowerFn> self = holder;
    *holder = [parts, powers, s, max_nv, self](int n, int i, int j) -> LinComb {
        if (n == 0) {
            LinComb one(s);
            if (i == 0 && j == 0) one.add(Diagram{s, 0, {}, {}, 0}, 1);
            return one;
        }
        auto key = std::make_tuple(n, i, j);
        auto it = powers->find(key);
        if (it != powers->end()) return it->second;
        auto rec = self.lock();
        LinComb r(s);
        for (auto& [t, xt] : *parts) {
            if (t.first > i || t.second > j) continue;
            LinComb rest = (*rec)(n - 1, i - t.first, j - t.second);
            if (rest.is_zero()) continue;
            for (auto& [d, c] : sharp(xt, rest).terms)
                if (d.nv <= max_nv) r.add_canonical(d, c);
        }
        return powers->emplace(key, r).first->second;
    };
    auto comp = [holder, s](int i, int j) {
        LinComb r(s);
        mpz_class fact = 1;
        for (int n = 0; n <= i + j; ++n) {
            if (n > 0) fact *= n;
            r.add((*holder)(n, i, j), Q(1) / Q(fact));
        }
        return r;
    };
    return OpSeries(
        s, max_nv, comp, [infos, max_nv](int k) { return knapsack(infos, true, k, max_nv); },
        [infos, max_nv](int n) { return knapsack(infos, false, n, max_nv); }, name);
}

}  // namespace

OpSeries polynomial(const LinComb& x, int max_nv) {
    auto parts = std::make_shared<std::map<std::pair<int, int>, LinComb>>(split_by_type(x, max_nv));
    auto infos = type_infos(x, max_nv);
    Space s = x.space;
    auto comp = [parts, s](int i, int j) {
        auto it = parts->find({i, j});
        return it == parts->end() ? LinComb(s) : it->second;
    };
    auto ob = [infos](int k) {
        int b = -1;
        for (auto& t : infos)
            if (t.i <= k) b = std::max(b, t.j);
        return b;
    };
    auto pb = [infos](int n) {
        int b = -1;
        for (auto& t : infos)
            if (t.j <= n) b = std::max(b, t.i);
        return b;
    };
    return OpSeries(s, max_nv, comp, ob, pb, "poly");
}

OpSeries exp_sharp(const LinComb& x, int max_nv) { return exp_series(x, max_nv, "exp#"); }

OpSeries exp_vdash(const LinComb& x, int max_nv) {
    bool has[kNumKinds] = {};
    for (auto& [d, c] : x.terms)
        for (auto k : d.legs) has[static_cast<int>(k)] = true;
    auto h = [&](LegKind k) { return has[static_cast<int>(k)]; };
    if ((h(LegKind::da) && h(LegKind::a)) || (h(LegKind::db) && h(LegKind::b)))
        throw StructuralError("exp_vdash: exponent acts on its own parameters");
    // Without self-gluing the |- powers are the # powers.
    return exp_series(x, max_nv, "exp|-");
}

OpSeries vdash(const OpSeries& v, const OpSeries& w) {
    if (v.space() != w.space()) throw StructuralError("vdash: space mismatch");
    Space s = v.space();
    int nv = std::min(v.max_nv(), w.max_nv());
    auto comp = [v, w, s](int i, int j) {
        int Lb = v.op_bound(i), Mb = w.param_bound(j);
        LinComb r(s);
        if (Lb < 0 || Mb < 0) return r;
        if (Lb >= kUnbounded && Mb >= kUnbounded)
            throw ConvergenceError(i, j,
                                   "left factor (" + v.description() + ") has unbounded operator grade and right factor (" +
                                       w.description() + ") has unbounded parameter grade");
        int G = std::min(Lb, Mb);
        for (int k = 0; k <= i; ++k)
            for (int n = 0; n <= j; ++n)
                for (int g = 0; g <= G; ++g) {
                    int m = i + g - k, l = j + g - n;
                    if (l > Lb || m > Mb) continue;
                    const LinComb& a = v.comp(k, l);
                    if (a.is_zero()) continue;
                    const LinComb& b = w.comp(m, n);
                    if (b.is_zero()) continue;
                    r += vdash(a, b, g);
                }
        return r;
    };
    auto ob = [v, w](int K) {
        int Lv = v.op_bound(K);
        if (Lv < 0) return -1;
        if (Lv >= kUnbounded) return kUnbounded;
        return add_bounds(Lv, w.op_bound(K + Lv));
    };
    auto pb = [v, w](int N) {
        int Mw = w.param_bound(N);
        if (Mw < 0) return -1;
        if (Mw >= kUnbounded) return kUnbounded;
        return add_bounds(v.param_bound(N + Mw), Mw);
    };
    return OpSeries(s, nv, comp, ob, pb, "(" + v.description() + " |- " + w.description() + ")");
}

OpSeries sharp(const OpSeries& v, const OpSeries& w) {
    if (v.space() != w.space()) throw StructuralError("sharp: space mismatch");
    Space s = v.space();
    int nv = std::min(v.max_nv(), w.max_nv());
    auto comp = [v, w, s](int i, int j) {
        LinComb r(s);
        for (int k = 0; k <= i; ++k)
            for (int l = 0; l <= j; ++l) {
                const LinComb& a = v.comp(k, l);
                if (a.is_zero()) continue;
                const LinComb& b = w.comp(i - k, j - l);
                if (b.is_zero()) continue;
                r += sharp(a, b);
            }
        return r;
    };
    auto ob = [v, w](int K) { return add_bounds(v.op_bound(K), w.op_bound(K)); };
    auto pb = [v, w](int N) { return add_bounds(v.param_bound(N), w.param_bound(N)); };
    return OpSeries(s, nv, comp, ob, pb, "(" + v.description() + " # " + w.description() + ")");
}

OpSeries operator+(const OpSeries& x, const OpSeries& y) {
    if (x.space() != y.space()) throw StructuralError("series sum: space mismatch");
    Space s = x.space();
    auto comp = [x, y](int i, int j) { return x.comp(i, j) + y.comp(i, j); };
    auto ob = [x, y](int K) { return std::max(x.op_bound(K), y.op_bound(K)); };
    auto pb = [x, y](int N) { return std::max(x.param_bound(N), y.param_bound(N)); };
    return OpSeries(s, std::min(x.max_nv(), y.max_nv()), comp, ob, pb,
                    "(" + x.description() + " + " + y.description() + ")");
}

OpSeries scaled(const Q& c, const OpSeries& x) {
    auto comp = [x, c](int i, int j) { return c * x.comp(i, j); };
    auto ob = [x](int K) { return x.op_bound(K); };
    auto pb = [x](int N) { return x.param_bound(N); };
    return OpSeries(x.space(), x.max_nv(), comp, ob, pb, c.get_str() + "*" + x.description());
}

OpSeries lambda_op(const OpSeries& x) {
    if (x.space() != Space::WhatF_ab) throw StructuralError("lambda_op: series must lie in WhatF_ab");
    auto comp = [x](int i, int j) { return lambda_map(x.comp(i, j)); };
    auto ob = [x](int K) { return x.op_bound(K); };
    auto pb = [x](int N) { return x.param_bound(N); };
    return OpSeries(Space::WhatWedge_ab, x.max_nv(), comp, ob, pb, "lambda(" + x.description() + ")");
}

LinComb set_b_zero(const LinComb& x) {
    LinComb r(x.space);
    for (auto& [d, c] : x.terms) {
        bool keep = true;
        for (auto k : d.legs)
            if (k == LegKind::b || k == LegKind::db) keep = false;
        if (keep) r.add_canonical(d, c);
    }
    return r;
}

OpSeries set_b_zero(const OpSeries& x) {
    auto comp = [x](int i, int j) { return set_b_zero(x.comp(i, j)); };
    auto ob = [x](int K) { return x.op_bound(K); };
    auto pb = [x](int N) { return x.param_bound(N); };
    return OpSeries(x.space(), x.max_nv(), comp, ob, pb, "[" + x.description() + "]_{b=0}");
}

LinComb project_00(const OpSeries& x) { return x.comp(0, 0); }

bool converges(const OpSeries& v, const OpSeries& w, int t1, std::string* why) {
    for (int i = 0; i <= t1; ++i)
        for (int j = 0; i + j <= t1; ++j)
            if (v.op_bound(i) >= kUnbounded && w.param_bound(j) >= kUnbounded) {
                if (why)
                    *why = "type (" + std::to_string(i) + "," + std::to_string(j) + "): " + v.description() +
                           " |- " + w.description();
                return false;
            }
    return true;
}

bool check_condition_S(const OpSeries& u, const OpSeries& v, const OpSeries& w, int t1, std::string* why) {
    if (!converges(u, v, t1, why) || !converges(v, w, t1, why)) return false;
    OpSeries uv = vdash(u, v);
    return converges(uv, w, t1, why);
}

LinComb intoop(const LinComb& v, Space target) {
    if (base_space(v.space) != Space::W && base_space(v.space) != Space::What)
        throw StructuralError("intoop: source must be W or What");
    return v.map(target, [&](const Diagram& d) {
        std::vector<LegKind> k = d.legs;
        for (auto& x : k) x = x == LegKind::f2 ? LegKind::da : LegKind::db;
        return LinComb::of(with_kinds(d, k, target));
    });
}

LinComb legs_to_partial_a(const LinComb& v, Space target) {
    if (v.space != Space::B) throw StructuralError("legs_to_partial_a: source must be B");
    return v.map(target, [&](const Diagram& d) {
        std::vector<LegKind> k(d.legs.size(), LegKind::da);
        return LinComb::of(with_kinds(d, k, target));
    });
}

Diagram raw_k(Space s) {
    return fork_leg(strut(s, LegKind::F, LegKind::a), 0, LegKind::p1, conventions().fork_reversed);
}
Diagram raw_l(Space s) { return strut(s, LegKind::b, LegKind::p1); }
Diagram raw_Z(Space s) {
    return fork_leg(strut(s, LegKind::a, LegKind::da), 1, LegKind::db, conventions().fork_reversed);
}

LinComb obj_param_a() { return LinComb::of(strut(Space::What_ab, LegKind::f2, LegKind::a)); }
LinComb obj_param_b() { return LinComb::of(raw_l(Space::What_ab)); }
LinComb obj_j() { return LinComb::of(strut(Space::WhatF_ab, LegKind::F, LegKind::a)); }
LinComb obj_k() { return LinComb::of(raw_k(Space::WhatF_ab)); }
LinComb obj_l() { return LinComb::of(raw_l(Space::WhatF_ab)); }
LinComb obj_Z(Space s) { return LinComb::of(raw_Z(s)); }

}  // namespace wc
