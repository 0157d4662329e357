#pragma once

#include <vector>

#include "wheelcalc/conventions.hpp"
#include "wheelcalc/lincomb.hpp"

namespace wc {

struct Slice {
    Space space = Space::B;
    int nv = 0;
    std::vector<LegKind> legs;  // multiset; every ordering is enumerated in ordered spaces
};

// All canonical nonzero diagrams of the slice, sorted, duplicate-free.
std::vector<Diagram> enumerate_slice(const Slice& s, std::size_t budget = 0);

enum class RuleType { none, stu, clifford };
struct LegRule {
    RuleType type = RuleType::none;
    LegKind target = LegKind::p1;
};
// Relation attached to an adjacent stream pair (x, y) of a space.
LegRule leg_rule(Space s, LegKind x, LegKind y);
bool has_clifford(Space s);

// Relation instances at every site of d, and every instance in which d
// occurs as a contraction term.  p1cap bounds grade-1 legs plus twice the
// circles of preimages under Clifford contraction.
std::vector<LinComb> relations_at(const Diagram& d, int p1cap = -1);
// Relation vectors touching the slice.
std::vector<LinComb> relation_vectors(const Slice& s);

// Normal form modulo all relations of x.space.  For spaces with a Clifford
// relation the closure is bounded by p1cap (default: the largest such weight
// in x plus the configured slack).
LinComb reduce(const LinComb& x, int p1cap = -1);
// Exact equality test.  What and WhatF (and their *_ab variants) are decided
// by transport to the wedge space via lambda and fat_to_F.
bool equal_mod(const LinComb& x, const LinComb& y);
bool equal_mod_direct(const LinComb& x, const LinComb& y, int p1cap = -1);
// Dimension of the span of the slice in the quotient.
int dim(const Slice& s);
// Rank of a family of vectors.
int rank_of(const std::vector<LinComb>& v);

void clear_quotient_caches();

struct QuotientStats {
    std::size_t diagrams = 0;
    std::size_t relations = 0;
    std::size_t components = 0;
};
QuotientStats quotient_stats(Space s, int p1cap = -1);

}  // namespace wc
