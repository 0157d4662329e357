#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wheelcalc/diagram.hpp"

namespace wc {

using Q = mpq_class;

struct CanonResult {
    Diagram d;
    int sign = 0;
};

// Leg classes of a space: legs are sorted by class, stream legs keep their
// relative order, free legs are permuted at will (with Koszul signs).
struct LegClass {
    int cls = 0;
    bool stream = false;
};
LegClass leg_class(Space s, LegKind k);

// Canonical representative modulo vertex relabelling, AS and the free leg
// moves of d.space.  sign is 0 when d equals minus itself.
CanonResult canonical_form(const Diagram& d);

// Parity of inversions among odd items; order[k] is the original index of
// the item placed at position k.
int koszul_sign(const std::vector<int>& order, const std::vector<int>& odd);

class LinComb {
public:
    Space space = Space::B;
    std::map<Diagram, Q> terms;

    LinComb() = default;
    explicit LinComb(Space s) : space(s) {}
    static LinComb of(const Diagram& d, const Q& c = 1);

    void add(const Diagram& d, const Q& c);
    void add_canonical(const Diagram& d, const Q& c);
    void add(const LinComb& o, const Q& c = 1);

    LinComb& operator+=(const LinComb& o);
    LinComb& operator-=(const LinComb& o);
    LinComb& operator*=(const Q& c);

    bool is_zero() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    Q coeff(const Diagram& canonical) const;
    bool operator==(const LinComb& o) const { return space == o.space && terms == o.terms; }

    // Apply a linear map given on single diagrams.
    LinComb map(Space target, const std::function<LinComb(const Diagram&)>& f) const;
    LinComb retagged(Space s) const;
};

LinComb operator+(LinComb x, const LinComb& y);
LinComb operator-(LinComb x, const LinComb& y);
LinComb operator*(const Q& c, LinComb x);

// Juxtaposition product, bilinear.
LinComb juxtapose(const LinComb& u, const LinComb& v);
// Disjoint union in B.
LinComb disjoint_union(const LinComb& u, const LinComb& v);

std::string to_text(const LinComb& x);
LinComb lincomb_from_text(const std::string& text, Space s);
std::string to_json_text(const LinComb& x);
LinComb lincomb_from_json_text(const std::string& text);
std::string diagram_json_text(const Diagram& d);
Diagram diagram_from_json_text(const std::string& text, Space s);

}  // namespace wc
