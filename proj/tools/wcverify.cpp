// Command-line front end: acceptance checks, maps, normal forms, operator
// products, enumerations and series.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wheelcalc/checks.hpp"
#include "wheelcalc/enumerative.hpp"
#include "wheelcalc/quotient.hpp"

namespace {

using namespace wc;
using nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& path, const std::string& s) {
    if (path.empty() || path == "-") {
        std::cout << s;
        if (!s.empty() && s.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << s;
    if (!s.empty() && s.back() != '\n') out << "\n";
}

Space space_arg(const std::string& s) {
    auto sp = space_from_name(s);
    if (!sp) throw UsageError("unknown space '" + s + "'");
    return *sp;
}

// Text files may carry their own "space" line; JSON files always do.
LinComb load_lincomb(const std::string& path, Space fallback) {
    auto text = read_file(path);
    auto b = text.find_first_not_of(" \t\r\n");
    if (b != std::string::npos && text[b] == '{') return lincomb_from_json_text(text);
    return lincomb_from_text(text, fallback);
}

std::string show(const LinComb& x, bool json) {
    if (!json) return x.is_zero() ? std::string("space ") + space_name(x.space) + "\n0\n" : to_text(x);
    return to_json_text(x);
}

// key=value lines; '#' starts a comment.
void apply_setting(CheckConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&] {
        try {
            std::size_t used = 0;
            long v = std::stol(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            throw UsageError("bad value for " + key + ": '" + value + "'");
        }
    };
    if (key == "t1") cfg.trunc.t1 = static_cast<int>(num());
    else if (key == "t2") cfg.trunc.t2 = static_cast<int>(num());
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num());
    else if (key == "word_n" || key == "order") cfg.word_n = static_cast<int>(num());
    else if (key == "card_n") cfg.card_n = static_cast<int>(num());
    else if (key == "max_internal") cfg.max_internal = static_cast<int>(num());
    else if (key == "max_legs") cfg.max_legs = static_cast<int>(num());
    else if (key == "max_blocks") cfg.max_blocks = static_cast<int>(num());
    else if (key == "random_pairs") cfg.random_pairs = static_cast<int>(num());
    else if (!set_convention(conventions(), key, value)) throw UsageError("unknown config key '" + key + "'");
}

void load_config(CheckConfig& cfg, const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

// "NV:kind,kind,..." e.g. "2:p1,p1" or "0:".
Slice slice_arg(Space s, const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("slice must look like NV:kind,kind,...");
    Slice sl{s, 0, {}};
    try {
        sl.nv = std::stoi(spec.substr(0, colon));
    } catch (const std::exception&) {
        throw UsageError("bad vertex count in slice '" + spec + "'");
    }
    std::stringstream ks(spec.substr(colon + 1));
    std::string k;
    while (std::getline(ks, k, ',')) {
        if (k.empty()) continue;
        auto kind = kind_from_name(k);
        if (!kind) throw UsageError("unknown leg kind '" + k + "'");
        sl.legs.push_back(*kind);
    }
    return sl;
}

// Text lines "coeff D[...]" as written, without canonicalisation.
std::vector<std::pair<Diagram, Q>> raw_terms(const std::string& text, Space s) {
    std::vector<std::pair<Diagram, Q>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        if (line.compare(b, 6, "space ") == 0) {
            s = space_arg(line.substr(b + 6, line.find_last_not_of(" \t\r") - b - 5));
            continue;
        }
        auto dpos = line.find("D[");
        if (dpos == std::string::npos) throw UsageError("expected a diagram: '" + line + "'");
        std::string head = line.substr(b, dpos - b);
        while (!head.empty() && head.back() == ' ') head.pop_back();
        Q c = 1;
        if (!head.empty() && c.set_str(head, 10) != 0) throw UsageError("bad coefficient '" + head + "'");
        c.canonicalize();
        out.emplace_back(parse(line.substr(dpos), s), c);
    }
    return out;
}

ExactSeries named_series(const std::string& name, int order) {
    if (name == "tanh") return series_tanh(order);
    if (name == "logcosh") return series_logcosh(order);
    if (name == "sinhx") return series_sinh_over_x(order);
    if (name == "psi") return series_psi(order);
    if (name == "Y") return series_Y(order);
    if (name == "Z") return series_Z(order);
    if (name == "wheels") return series_wheels(order);
    throw UsageError("unknown series '" + name + "'");
}

ordered_json series_json(const OpSeries& s, int t1) {
    ordered_json j = ordered_json::object();
    for (int i = 0; i <= t1; ++i)
        for (int k = 0; i + k <= t1; ++k) {
            auto& c = s.comp(i, k);
            if (!c.is_zero()) j[std::to_string(i) + "," + std::to_string(k)] = ordered_json::parse(to_json_text(c));
        }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wheelcalc verification and calculation tool"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", config_path, out_path;
    bool strict = false;
    CheckConfig cfg;
    std::vector<std::string> settings;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--strict", strict, "Exit 3 when a check exceeds its budget");
    app.add_option("--config", config_path, "key=value file of budgets and conventions");
    app.add_option("--set", settings, "Extra key=value settings, applied after --config");
    app.add_option("-o,--output", out_path, "Output file (default stdout)");
    auto* seed = app.add_option("--seed", cfg.seed, "Seed of the random-sample checks");
    auto* t1 = app.add_option("--t1", cfg.trunc.t1, "Truncation: i + j <= t1");
    auto* t2 = app.add_option("--t2", cfg.trunc.t2, "Truncation: internal vertices <= t2");

    auto* verify = app.add_subcommand("verify", "Run acceptance checks (ids or 'all')");
    std::vector<std::string> ids;
    int order = -1, max_internal = -1, max_legs = -1;
    bool list = false;
    verify->add_option("ids", ids, "Check ids");
    verify->add_option("--order", order, "Word length for the series checks");
    verify->add_option("--max-internal", max_internal, "Internal vertices of generators");
    verify->add_option("--max-legs", max_legs, "Legs of generators");
    verify->add_flag("--list", list, "List the check ids");

    auto* map = app.add_subcommand("map", "Apply a named map to a file");
    std::string map_name, in_path = "-";
    map->add_option("--name", map_name, "chiB, domega, upsilon, chiW, pi, fatF, phiA, lambda, chiwedge, mainL, mainR")
        ->required();
    map->add_option("--in", in_path, "Input file (default stdin)");
    bool raw = false;
    map->add_flag("--raw", raw, "lambda only: list the terms of each pairing before canonicalisation");

    auto* red = app.add_subcommand("reduce", "Normal form in the quotient space");
    std::string red_space;
    red->add_option("--in", in_path, "Input file (default stdin)");
    red->add_option("--space", red_space, "Space of a text file without a space line");

    auto* prod = app.add_subcommand("op-product", "v |- w on truncated series");
    std::string lhs, rhs, prod_space = "WhatF_ab";
    bool lhs_exp = false, rhs_exp = false;
    prod->add_option("--lhs", lhs, "Left factor")->required();
    prod->add_option("--rhs", rhs, "Right factor")->required();
    prod->add_flag("--lhs-exp", lhs_exp, "Use exp# of the left file");
    prod->add_flag("--rhs-exp", rhs_exp, "Use exp# of the right file");
    prod->add_option("--space", prod_space, "Space of text files without a space line");

    auto* en = app.add_subcommand("enum", "Enumerate an arrow-word family");
    std::string family;
    int fam_n = 3;
    bool count_only = false;
    en->add_option("--family", family, "gammaArrow, xiArrow, omegaArrow, deltaArrow, phiArrow, thetaArrow")
        ->required();
    en->add_option("--n", fam_n, "Word length")->check(CLI::Range(1, 12));
    en->add_flag("--count", count_only, "Print the counts only");

    auto* ser = app.add_subcommand("series", "Coefficients of a named series");
    std::string ser_name;
    int ser_order = 8;
    ser->add_option("--name", ser_name, "tanh, logcosh, sinhx, psi, Y, Z, wheels")->required();
    ser->add_option("--order", ser_order, "Truncation order")->check(CLI::Range(0, 60));

    auto* con = app.add_subcommand("contrib", "Brute-force contributions against closed forms");
    std::string which = "connected";
    int max_n = 4;
    con->add_option("--which", which, "connected or grid")->check(CLI::IsMember({"connected", "grid"}));
    con->add_option("--max-n", max_n, "Blocks (connected) or a-legs (grid)")->check(CLI::Range(1, 10));

    auto* dump = app.add_subcommand("dump-basis", "Diagrams, relations and dimension of a slice");
    std::string dump_space, slice_spec;
    dump->add_option("--space", dump_space, "Space")->required();
    dump->add_option("--slice", slice_spec, "NV:kind,kind,...")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }
    const bool json = format == "json";

    try {
        // Command-line values win over the config file.
        CheckConfig given = cfg;
        if (!config_path.empty()) load_config(cfg, config_path);
        for (auto& s : settings) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw UsageError("--set expects key=value");
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        if (*seed) cfg.seed = given.seed;
        if (*t1) cfg.trunc.t1 = given.trunc.t1;
        if (*t2) cfg.trunc.t2 = given.trunc.t2;

        if (*verify) {
            if (list) {
                std::string s;
                for (auto& c : check_catalog())
                    s += c.id + "\t" + std::to_string(c.criterion) + "\t" + c.title + "\n";
                write_out(out_path, s);
                return 0;
            }
            if (order >= 0) cfg.word_n = order;
            if (max_internal >= 0) cfg.max_internal = max_internal;
            if (max_legs >= 0) cfg.max_legs = max_legs;
            if (ids.empty()) throw UsageError("verify needs check ids or 'all'");
            std::vector<std::string> run;
            for (auto& id : ids) {
                if (id == "all") {
                    for (auto& c : check_catalog()) run.push_back(c.id);
                } else if (!is_check_id(id)) {
                    throw UsageError("unknown check id '" + id + "'");
                } else {
                    run.push_back(id);
                }
            }
            auto rs = run_checks(run, cfg);
            write_out(out_path, json ? to_json(rs, cfg) : to_text(rs));
            bool failed = false, skipped = false;
            for (auto& r : rs) {
                failed = failed || r.status == Status::fail;
                skipped = skipped || r.status == Status::skipped;
            }
            if (failed) return kExitFail;
            return skipped && strict ? kExitBudget : 0;
        }
        if (*map) {
            Space src = map_source(map_name);
            if (raw) {
                if (map_name != "lambda") throw UsageError("--raw applies to lambda only");
                ordered_json j = ordered_json::array();
                std::string s;
                for (auto& [d, c] : raw_terms(read_file(in_path), src))
                    for (auto& t : lambda_terms(d)) {
                        std::string ps = "{";
                        for (auto [x, y] : t.pairing)
                            ps += (ps.size() > 1 ? "," : "") + std::to_string(x + 1) + std::to_string(y + 1);
                        ps += "}";
                        Q q = c * t.coeff;
                        j.push_back({{"pairing", ps}, {"coeff", q.get_str()}, {"diagram", serialize(t.glued)}});
                        s += ps + " " + q.get_str() + " " + serialize(t.glued) + "\n";
                    }
                write_out(out_path, json ? j.dump(2) : s);
                return 0;
            }
            auto v = load_lincomb(in_path, src);
            write_out(out_path, show(apply_map(map_name, v.retagged(src)), json));
            return 0;
        }
        if (*red) {
            auto v = load_lincomb(in_path, red_space.empty() ? Space::B : space_arg(red_space));
            write_out(out_path, show(reduce(v), json));
            return 0;
        }
        if (*prod) {
            Space s = space_arg(prod_space);
            auto as_series = [&](const std::string& path, bool e) {
                auto x = load_lincomb(path, s);
                return e ? exp_sharp(x, cfg.trunc.t2) : polynomial(x, cfg.trunc.t2);
            };
            auto v = as_series(lhs, lhs_exp), w = as_series(rhs, rhs_exp);
            std::string why;
            if (!converges(v, w, cfg.trunc.t1, &why)) {
                std::cerr << "divergent product: " << why << "\n";
                return kExitFail;
            }
            auto r = vdash(v, w);
            if (json) {
                write_out(out_path, series_json(r, cfg.trunc.t1).dump(2));
            } else {
                std::string s2;
                for (int i = 0; i <= cfg.trunc.t1; ++i)
                    for (int k = 0; i + k <= cfg.trunc.t1; ++k)
                        if (auto& c = r.comp(i, k); !c.is_zero())
                            s2 += "# type " + std::to_string(i) + "," + std::to_string(k) + "\n" + to_text(c);
                write_out(out_path, s2.empty() ? "0\n" : s2);
            }
            return 0;
        }
        if (*en) {
            auto f = family_from_name(family);
            if (!f) throw UsageError("unknown family '" + family + "'");
            auto n = family_count(*f, fam_n), formula = family_size_formula(*f, fam_n);
            if (json) {
                ordered_json j = {{"family", family_name(*f)},
                                  {"n", fam_n},
                                  {"count", n.get_str()},
                                  {"formula", formula.get_str()}};
                if (!count_only) {
                    j["words"] = ordered_json::array();
                    for (auto& a : enumerate_family(*f, fam_n)) j["words"].push_back(to_string(a));
                }
                write_out(out_path, j.dump(2));
            } else {
                std::string s;
                if (!count_only)
                    for (auto& a : enumerate_family(*f, fam_n)) s += to_string(a) + "\n";
                s += "count " + n.get_str() + " formula " + formula.get_str() + "\n";
                write_out(out_path, s);
            }
            return n == formula ? 0 : kExitFail;
        }
        if (*ser) {
            auto x = named_series(ser_name, ser_order);
            if (json) {
                ordered_json c = ordered_json::array();
                for (auto& q : x.c) c.push_back(q.get_str());
                write_out(out_path, ordered_json{{"name", ser_name}, {"order", ser_order}, {"coeffs", c}}.dump(2));
            } else {
                write_out(out_path, to_string(x));
            }
            return 0;
        }
        if (*con) {
            bool ok = true;
            ordered_json j = ordered_json::array();
            std::string s;
            auto emit = [&](const std::string& name, const LinComb& brute, const LinComb& closed, bool match) {
                ok = ok && match;
                j.push_back({{"name", name},
                             {"match", match},
                             {"brute", ordered_json::parse(to_json_text(brute))},
                             {"closed", ordered_json::parse(to_json_text(closed))}});
                s += name + (match ? " match" : " MISMATCH") + " (" + std::to_string(brute.size()) + " terms)\n";
            };
            if (which == "connected") {
                for (auto& c : connected_contributions(max_n)) emit(c.name, c.brute, c.closed, c.match);
            } else {
                auto g = grid_contributions(max_n, series_Y(max_n), series_Z(max_n));
                emit("C0", g.C0_brute, g.C0_closed, g.C0_brute == g.C0_closed);
                emit("C2", g.C2_brute, g.C2_closed, g.C2_brute == g.C2_closed);
                ok = ok && g.match;
            }
            write_out(out_path, json ? j.dump(2) : s);
            return ok ? 0 : kExitFail;
        }
        if (*dump) {
            auto sl = slice_arg(space_arg(dump_space), slice_spec);
            auto ds = enumerate_slice(sl, conventions().budget);
            auto rel = relation_vectors(sl);
            int d = dim(sl);
            if (json) {
                ordered_json j = {{"space", space_name(sl.space)}, {"nv", sl.nv}};
                j["diagrams"] = ordered_json::array();
                for (auto& x : ds) j["diagrams"].push_back(serialize(x));
                j["relations"] = rel.size();
                j["dimension"] = d;
                write_out(out_path, j.dump(2));
            } else {
                std::string s;
                for (auto& x : ds) s += serialize(x) + "\n";
                s += "diagrams " + std::to_string(ds.size()) + " relations " + std::to_string(rel.size()) +
                     " dimension " + std::to_string(d) + "\n";
                write_out(out_path, s);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return strict ? kExitBudget : kExitFail;
    } catch (const ConvergenceError& e) {
        std::cerr << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return 0;
}
