#pragma once

#include <climits>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wheelcalc/lincomb.hpp"

namespace wc {

// Operator diagrams live in the *_ab spaces; their operator legs (da, db)
// form a suffix of the leg list and act on the parameter legs (a, b) of the
// right factor.

// (leg of v, leg of w) pairs; grade is the total grade of the glued operators.
struct Gluing {
    std::vector<std::pair<int, int>> pairs;
    int grade = 0;
};

// Every gluing of operator legs of v to parameter legs of w; grade < 0 for all.
std::vector<Gluing> gluings(const Diagram& v, const Diagram& w, int grade = -1);
// Sign of the term of a gluing counted on the crossing grid.
int gluing_sign(const Diagram& v, const Diagram& w, const Gluing& s);
// The glued juxtaposition with non-operator legs first (v's, then w's),
// then v's remaining operators, then w's operators; not canonicalised.
Diagram gluing_diagram(const Diagram& v, const Diagram& w, const Gluing& s);

// v |- w as a sum over gluings.
LinComb vdash(const LinComb& v, const LinComb& w, int grade = -1);
// v |- w by literally pushing operators to the right with the commutation rules.
LinComb vdash_rewrite(const LinComb& v, const LinComb& w);
// The gluing-free term: juxtaposition with operators moved to the far right.
LinComb sharp(const LinComb& v, const LinComb& w);

struct ConvergenceError : std::runtime_error {
    int i, j;
    std::string witness;
    ConvergenceError(int i_, int j_, std::string w)
        : std::runtime_error("divergent composition at type (" + std::to_string(i_) + "," + std::to_string(j_) +
                             "): " + w),
          i(i_), j(j_), witness(std::move(w)) {}
};

inline constexpr int kUnbounded = INT_MAX / 4;

struct Truncation {
    int t1 = 8;  // i + j <= t1
    int t2 = 4;  // internal vertices <= t2
};

// Lazily evaluated operator power series.  comp(i, j) is the part of type
// (i, j) (parameter grade i, operator grade j) with at most max_nv vertices.
// op_bound(k) is the largest operator grade among parts of parameter grade
// at most k (-1 if none, kUnbounded if unbounded); param_bound(n) likewise.
class OpSeries {
public:
    using CompFn = std::function<LinComb(int, int)>;
    using BoundFn = std::function<int(int)>;

    OpSeries(Space s, int max_nv, CompFn comp, BoundFn op_bound, BoundFn param_bound, std::string desc);

    Space space() const;
    int max_nv() const;
    const LinComb& comp(int i, int j) const;
    int op_bound(int k) const;
    int param_bound(int n) const;
    const std::string& description() const;
    // All parts with i + j <= t1.
    LinComb window(int t1) const;

private:
    struct Impl;
    std::shared_ptr<Impl> p_;
};

OpSeries polynomial(const LinComb& x, int max_nv);
OpSeries exp_sharp(const LinComb& x, int max_nv);
// Requires that the operators of x cannot glue to the parameters of x.
OpSeries exp_vdash(const LinComb& x, int max_nv);
OpSeries vdash(const OpSeries& v, const OpSeries& w);
OpSeries sharp(const OpSeries& v, const OpSeries& w);
OpSeries operator+(const OpSeries& x, const OpSeries& y);
OpSeries scaled(const Q& c, const OpSeries& x);
OpSeries lambda_op(const OpSeries& x);
OpSeries set_b_zero(const OpSeries& x);
LinComb set_b_zero(const LinComb& x);
LinComb project_00(const OpSeries& x);

// v |- w is well defined at every type in the window.
bool converges(const OpSeries& v, const OpSeries& w, int t1, std::string* why = nullptr);
// u |- v, v |- w and (u |- v) |- w are all well defined in the window.
bool check_condition_S(const OpSeries& u, const OpSeries& v, const OpSeries& w, int t1,
                       std::string* why = nullptr);

// Operator form of an element of W: legs f2 -> da, p1 -> db, same order.
LinComb intoop(const LinComb& v, Space target = Space::What_ab);
// Every leg of an element of B becomes da.
LinComb legs_to_partial_a(const LinComb& v, Space target);

// Standard parameter and operator diagrams.  The raw forms fix leg order.
Diagram raw_k(Space s);                                 // legs p1, p1, a
Diagram raw_l(Space s);                                 // legs b, p1
Diagram raw_Z(Space s);                                 // legs a, db, db
LinComb obj_param_a();                                  // strut f2 - a in What_ab
LinComb obj_param_b();                                  // strut b - p1 in What_ab
LinComb obj_j();                                        // strut F - a in WhatF_ab
LinComb obj_k();                                        // fork: stem a, two p1 legs
LinComb obj_l();                                        // strut b - p1 in WhatF_ab
LinComb obj_Z(Space s = Space::WhatF_ab);               // fork: stem a, two db legs

}  // namespace wc
