#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wheelcalc/maps.hpp"
#include "wheelcalc/operator.hpp"

namespace wc {

struct CheckConfig {
    Truncation trunc;
    std::uint64_t seed = 1;
    int word_n = 9;        // words of Sigma_n for psi, phi
    int card_n = 6;        // family cardinalities
    int max_internal = 2;  // generator budgets for map-level checks
    int max_legs = 4;
    int max_blocks = 6;    // pairing enumerations
    int random_pairs = 200;
};

enum class Status { pass, fail, skipped };
const char* status_name(Status s);

struct CheckResult {
    std::string id;
    int criterion = 0;
    Status status = Status::pass;
    long instances = 0;
    std::string counterexample;
    std::string detail;
    std::vector<std::string> tested;
    double seconds = 0;
};

struct CheckInfo {
    std::string id;
    int criterion;
    std::string title;
};

const std::vector<CheckInfo>& check_catalog();
bool is_check_id(const std::string& id);
// Unknown ids throw std::invalid_argument.
CheckResult run_check(const std::string& id, const CheckConfig& cfg);
std::vector<CheckResult> run_checks(const std::vector<std::string>& ids, const CheckConfig& cfg);

// Crossings of full lines in the grid drawing of a gluing, counted on the
// drawn segments.
int grid_crossings(const Diagram& v, const Diagram& w, const Gluing& s);
// Crossings of full lines in the two-line drawing of a pairing.
int pairing_crossings(const std::vector<LegKind>& kinds, Space s, const Pairing& p);

// Operator generators: every canonical diagram of s with at most the given
// vertex and leg counts.
std::vector<Diagram> operator_generators(Space s, int max_nv, int max_legs);

std::string to_json(const std::vector<CheckResult>& r, const CheckConfig& cfg);
std::string to_text(const std::vector<CheckResult>& r);

}  // namespace wc
