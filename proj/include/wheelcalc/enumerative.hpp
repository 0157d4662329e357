#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wheelcalc/lincomb.hpp"
#include "wheelcalc/maps.hpp"
#include "wheelcalc/series.hpp"

namespace wc {

using Word = std::vector<int>;

int descent(const Word& w);
std::vector<Word> permutation_words(int n);
// Sigma_n: every word; Gamma_n: last symbol greater than the first.
std::vector<Word> sigma_words(int n);
std::vector<Word> gamma_words(int n);

mpz_class phi_number(int n);
mpz_class psi_number(int n);
// phi(n)/n! from the recursion with phi(1) = 1, phi(2) = 0.
mpq_class phi_recursive(int n);

enum class Family { GammaArrow, XiArrow, OmegaArrow, DeltaArrow, PhiArrow, ThetaArrow };
const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

// Decorations: +1 right (or up), -1 left (or down), 0 undecorated.
struct ArrowWord {
    Word w1;
    std::vector<int> d1;
    Word w2;
    std::vector<int> d2;
    auto operator<=>(const ArrowWord&) const = default;
};
std::string to_string(const ArrowWord& a);

// Single-word families, or one factor of a pair family (part 1 or 2).
void for_each_arrow_word(Family f, int n, int part, const std::function<void(const ArrowWord&)>& cb);
std::vector<ArrowWord> enumerate_family(Family f, int n);
// Size by enumeration; pair families are enumerated factor by factor.
mpz_class family_count(Family f, int n);
mpz_class family_size_formula(Family f, int n);

// A pairing type (w, p): w over {A, B}, pairs of 1-based bottom-leg indices.
struct PairingType {
    std::string word;
    Pairing pairs;
    auto operator<=>(const PairingType&) const = default;
};
std::string to_string(const PairingType& t);
void validate(const PairingType& t);
int num_bottom_legs(const std::string& word);

// The coefficient-one blocks of the words: A is the fork k, B the strut l.
Diagram block_A();
Diagram block_B();
// T_(w,p) in WhatWedge_ab, including (1/2)^{#A} from the A-block weight.
LinComb term_of_pairing(const PairingType& t);
struct RawTerm {
    int sign;
    Q coeff;
    Diagram glued;
};
RawTerm raw_term_of_pairing(const PairingType& t);

using Content = std::map<PairingType, int>;
// Connected components of T_tau, each as its own pairing type.
std::vector<PairingType> components_of(const PairingType& t);
Content content_of(const PairingType& t);
mpz_class count_with_content(const Content& c);
bool is_connected_type(const PairingType& t);

void for_each_pairing_type(int blocks, const std::function<void(const PairingType&)>& cb);

// Labelled edges: sum_m f_m times the loop or chain with m a-spokes.
LinComb loop_series(Space s, const ExactSeries& f);
LinComb strut_series(Space s, LegKind end0, LegKind end1, const ExactSeries& f);

struct Contribution {
    std::string name;
    LinComb brute;
    LinComb closed;
    bool match = false;
};
// C_||, C_o, C_bb, C_|b from pairings with at most max_blocks blocks.
std::vector<Contribution> connected_contributions(int max_blocks);
// Traversal word of a connected pairing type (Gamma, Xi, Omega or Delta class).
std::optional<std::pair<Family, ArrowWord>> traversal_word(const PairingType& t);

// Grid products.  Operators -1/2 Zop; parameters YTERM(Y) + ZTERM(Z)
// with YTERM = strut(bottom, b)[Y] and ZTERM = 1/2 strut(b, b)[Z].
LinComb yterm(const ExactSeries& Y);
LinComb zterm(const ExactSeries& Z);
struct GridResult {
    LinComb C0_brute, C0_closed, C2_brute, C2_closed;
    bool match = false;
};
// Connected-term sums with at most max_a a-legs; Y even, Z odd.
GridResult grid_contributions(int max_a, const ExactSeries& Y, const ExactSeries& Z);
// Closed forms: -1/2 sum 1/n loop[(aZ)^n] and -1/2 sum strut[Y (aZ)^n a Y].
LinComb grid_C0_closed(const ExactSeries& Z, int max_a);
LinComb grid_C2_closed(const ExactSeries& Y, const ExactSeries& Z, int max_a);

// A grid term: n operators (-1/2 Zop each, rows bottom to top), top factors
// given as raw diagrams with coefficients, sigma mapping operator legs to
// parameter legs (both numbered in order).
struct GridTerm {
    Q coeff;
    Diagram d;
};
GridTerm grid_term(int n_ops, const std::vector<Diagram>& top, const std::vector<int>& sigma);
// Number of connected full gluings of n operators against the words of the
// C_0 class (Phi) or of the C_2 class (Theta).
mpz_class count_connected_grids(Family f, int n);

struct SeriesIdentityReport {
    bool log_identity = false;
    bool tanh_identity = false;
};
SeriesIdentityReport series_identity_checks(int order, const ExactSeries* z_override = nullptr);

}  // namespace wc
