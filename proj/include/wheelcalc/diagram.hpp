#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wc {

enum class LegKind : std::uint8_t { p1, f2, F, a, b, da, db };
inline constexpr int kNumKinds = 7;

enum class Space : std::uint8_t {
    B,
    A,
    W,
    Wtilde,
    What,
    WhatF,
    WhatWedge,
    WhatF_ab,
    WhatWedge_ab,
    What_ab
};

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

int grade(LegKind k);
bool is_param(LegKind k);
bool is_op(LegKind k);
const char* kind_name(LegKind k);
std::optional<LegKind> kind_from_name(std::string_view s);

const char* space_name(Space s);
std::optional<Space> space_from_name(std::string_view s);
bool is_ordered(Space s);
bool allows(Space s, LegKind k);
// Grade used for Koszul signs; legs of B and A are ungraded.
int sign_grade(Space s, LegKind k);
// The unparametrised space underlying an *_ab space (identity otherwise).
Space base_space(Space s);
Space ab_space(Space s);

// Vertex i owns half-edges 3i, 3i+1, 3i+2 in cyclic order; leg j owns
// half-edge 3*nv + j.  mate is the edge involution.  loops counts
// vertex-free closed circles.
struct Diagram {
    Space space = Space::B;
    int nv = 0;
    std::vector<LegKind> legs;
    std::vector<int> mate;
    int loops = 0;

    int num_legs() const { return static_cast<int>(legs.size()); }
    int num_half() const { return 3 * nv + num_legs(); }
    int leg_half(int j) const { return 3 * nv + j; }
    bool is_leg_half(int h) const { return h >= 3 * nv; }
    int leg_of(int h) const { return h - 3 * nv; }

    auto operator<=>(const Diagram&) const = default;
    bool operator==(const Diagram&) const = default;
};

// Free-form construction with arbitrary half-edge ids.
struct Builder {
    Space space;
    int next = 0;
    std::vector<std::array<int, 3>> verts;
    std::vector<std::pair<LegKind, int>> legs;
    std::vector<std::pair<int, int>> edges;
    int loops = 0;

    explicit Builder(Space s) : space(s) {}
    std::array<int, 3> vertex();
    std::array<int, 3> vertex(int h0, int h1, int h2);
    int leg(LegKind k);
    int half() { return next++; }
    void join(int x, int y) { edges.emplace_back(x, y); }
    Diagram build() const;
};

// Import a diagram into a builder, keeping half-edge ids.
Builder to_builder(const Diagram& d);

struct Grading {
    int n_internal = 0;
    std::array<int, kNumKinds> legs_by_kind{};
    int leg_grade = 0;
    int type_i = 0;
    int type_j = 0;
};

Grading grading(const Diagram& d);
// Number of internal vertices plus number of grade-2 base legs.
int degree(const Diagram& d);

std::string serialize(const Diagram& d);
Diagram parse(std::string_view text, Space space = Space::B);

bool is_connected(const Diagram& d);
// Component id for every half-edge; returns number of components.
int components(const Diagram& d, std::vector<int>& comp_of_half);

void validate(const Diagram& d);

Diagram retag(const Diagram& d, Space s);
Diagram with_kinds(const Diagram& d, const std::vector<LegKind>& kinds, Space s);
// new_order[k] = old index of the leg placed at position k.
Diagram permute_legs(const Diagram& d, const std::vector<int>& new_order);
// Legs of u followed by legs of v.
Diagram juxtapose(const Diagram& u, const Diagram& v);
// Remove the listed leg pairs and join their attachment points.
Diagram glue_legs(const Diagram& d, const std::vector<std::pair<int, int>>& pairs);
// Replace leg j by a new trivalent vertex carrying two legs of kind k at
// positions j, j+1.  The stem joins the old attachment point.  With
// reversed=false the cyclic order is (stem, right, left).
Diagram fork_leg(const Diagram& d, int j, LegKind k, bool reversed = false);

// Common shapes.
Diagram strut(Space s, LegKind x, LegKind y);
// One vertex; cyclic order (stem, right, left).  Legs: stem, left, right.
Diagram fork_tripod(Space s, LegKind stem, LegKind left, LegKind right);
// Wheel with n spokes of kind k; vertex i has cyclic order (in, out, spoke).
Diagram wheel(Space s, int n, LegKind k = LegKind::p1);
// Path end0 - v1 - ... - vn - end1 with one spoke of kind k at every vertex;
// vertex cyclic order (prev, spoke, next).  Legs: end0, end1, spokes.
Diagram chain(Space s, LegKind end0, LegKind end1, int n, LegKind spoke = LegKind::a);

}  // namespace wc
