#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wheelcalc/lincomb.hpp"

namespace wc {

using Pairing = std::vector<std::pair<int, int>>;

// Every partial matching of the given positions, the empty one first.
void for_each_pairing(const std::vector<int>& positions, const std::function<void(const Pairing&)>& f);
// (-1)^x with x = crossing arcs + (arc, enclosed unpaired grade-1 leg) pairs.
int pairing_sign(const std::vector<LegKind>& kinds, const Pairing& p);

LinComb chi_B(const LinComb& v);
// d_x(y): all legs of x glued to some legs of y.
LinComb glue_partial(const LinComb& x, const LinComb& y);
// Terms of Omega with at most leg_budget legs.
LinComb omega(int leg_budget);
LinComb d_omega(const LinComb& v);
LinComb upsilon(const LinComb& v);
LinComb chi_W(const LinComb& v);
LinComb pi_hat(const LinComb& v);
// What -> WhatF, What_ab -> WhatF_ab.
LinComb fat_to_F(const LinComb& v);
LinComb phi_A(const LinComb& v);
// WhatF -> WhatWedge, WhatF_ab -> WhatWedge_ab.
LinComb lambda_map(const LinComb& w);
// WhatWedge -> WhatF: graded average of the grade-1 legs.
LinComb chi_wedge(const LinComb& v);

LinComb main_lhs(const LinComb& v);
LinComb main_rhs(const LinComb& v);

// Term of lambda before canonicalisation, used for figure reproduction.
struct LambdaTerm {
    Pairing pairing;
    Q coeff;
    Diagram glued;
};
std::vector<LambdaTerm> lambda_terms(const Diagram& w);

// Apply a named map; names: chiB, domega, upsilon, chiW, pi, fatF, phiA,
// lambda, chiwedge, mainL, mainR.
LinComb apply_map(const std::string& name, const LinComb& v);
Space map_source(const std::string& name);

}  // namespace wc
