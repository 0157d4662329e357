#include "wheelcalc/conventions.hpp"

#include <sstream>

namespace wc {

Conventions& conventions() {
    static Conventions c;
    return c;
}

namespace {

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected boolean, got '" + v + "'");
}

Q parse_q(const std::string& v) {
    Q q;
    if (q.set_str(v, 10) != 0) throw std::invalid_argument("expected rational, got '" + v + "'");
    q.canonicalize();
    return q;
}

}  // namespace

bool set_convention(Conventions& c, const std::string& key, const std::string& value) {
    if (key == "fork_reversed") c.fork_reversed = parse_bool(value);
    else if (key == "stu_reversed") c.stu_reversed = parse_bool(value);
    else if (key == "clifford_coeff") c.clifford_coeff = parse_q(value);
    else if (key == "clifford_slack") c.clifford_slack = std::stoi(value);
    else if (key == "budget") c.budget = std::stoul(value);
    else if (key == "omega") {
        c.omega.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
            if (b != std::string::npos) c.omega.push_back(parse_q(item.substr(b, e - b + 1)));
        }
    } else
        return false;
    return true;
}

std::string describe(const Conventions& c) {
    std::string s = "fork_reversed=" + std::string(c.fork_reversed ? "true" : "false");
    s += " stu_reversed=" + std::string(c.stu_reversed ? "true" : "false");
    s += " clifford_coeff=" + c.clifford_coeff.get_str();
    s += " omega=";
    for (std::size_t i = 0; i < c.omega.size(); ++i) s += (i ? "," : "") + c.omega[i].get_str();
    return s;
}

}  // namespace wc
