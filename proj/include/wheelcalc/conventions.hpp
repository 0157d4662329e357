#pragma once

#include <string>
#include <vector>

#include "wheelcalc/lincomb.hpp"

namespace wc {

// Drawing conventions that the algebra leaves to pictures.  They are set
// once at startup (from a config file or the defaults) and read everywhere.
struct Conventions {
    // Fork vertex used by upsilon and fat_to_F: (stem, right, left) unless reversed.
    bool fork_reversed = false;
    // Contraction vertex of STU-type relations: (left, right, new) unless reversed.
    bool stu_reversed = false;
    // Coefficient of the contraction term in the Clifford-type relation.
    Q clifford_coeff = 1;
    // Omega = exp(sum_n omega[n-1] * wheel_{2n}).
    std::vector<Q> omega = {Q(1, 48), Q(-1, 5760), Q(1, 362880)};
    // Extra grade-1 legs allowed when closing What/WhatF relations directly.
    int clifford_slack = 2;
    // Largest relation component explored before giving up.
    std::size_t budget = 400000;
};

Conventions& conventions();
// Apply one key=value setting; false if the key is not a convention.
bool set_convention(Conventions& c, const std::string& key, const std::string& value);
std::string describe(const Conventions& c);

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wc
