#include "wheelcalc/lincomb.hpp"

#include <sstream>

#include "json.hpp"

namespace wc {

using nlohmann::json;

LinComb LinComb::of(const Diagram& d, const Q& c) {
    LinComb r(d.space);
    r.add(d, c);
    return r;
}

void LinComb::add(const Diagram& d, const Q& c) {
    if (c == 0) return;
    auto cf = canonical_form(d);
    if (cf.sign == 0) return;
    add_canonical(cf.d, cf.sign > 0 ? Q(c) : Q(-c));
}

void LinComb::add_canonical(const Diagram& d, const Q& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(d, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

void LinComb::add(const LinComb& o, const Q& c) {
    if (c == 0) return;
    for (auto& [d, x] : o.terms) add_canonical(d, x * c);
}

LinComb& LinComb::operator+=(const LinComb& o) {
    add(o, 1);
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
    add(o, -1);
    return *this;
}

LinComb& LinComb::operator*=(const Q& c) {
    if (c == 0) terms.clear();
    else
        for (auto& [d, x] : terms) x *= c;
    return *this;
}

Q LinComb::coeff(const Diagram& canonical) const {
    auto it = terms.find(canonical);
    return it == terms.end() ? Q(0) : it->second;
}

LinComb LinComb::map(Space target, const std::function<LinComb(const Diagram&)>& f) const {
    LinComb r(target);
    for (auto& [d, x] : terms) r.add(f(d), x);
    return r;
}

LinComb LinComb::retagged(Space s) const {
    LinComb r(s);
    for (auto& [d, x] : terms) r.add(retag(d, s), x);
    return r;
}

LinComb operator+(LinComb x, const LinComb& y) { return x += y; }
LinComb operator-(LinComb x, const LinComb& y) { return x -= y; }
LinComb operator*(const Q& c, LinComb x) { return x *= c; }

LinComb juxtapose(const LinComb& u, const LinComb& v) {
    if (u.space != v.space) throw StructuralError("juxtapose: space mismatch");
    for (auto& [d, x] : u.terms)
        for (auto k : d.legs)
            if (is_op(k)) throw StructuralError("juxtapose: operator legs in left factor");
    LinComb r(u.space);
    for (auto& [a, x] : u.terms)
        for (auto& [b, y] : v.terms) r.add(juxtapose(a, b), x * y);
    return r;
}

LinComb disjoint_union(const LinComb& u, const LinComb& v) {
    if (u.space != Space::B || v.space != Space::B)
        throw StructuralError("disjoint_union: both factors must lie in B");
    return juxtapose(u, v);
}

std::string to_text(const LinComb& x) {
    std::string s = std::string("space ") + space_name(x.space) + "\n";
    for (auto& [d, c] : x.terms) s += c.get_str() + " " + serialize(d) + "\n";
    return s;
}

namespace {

Q parse_rational(const std::string& t) {
    Q q;
    if (t.empty() || q.set_str(t, 10) != 0) throw ParseError("bad coefficient '" + t + "'", 0);
    q.canonicalize();
    if (q.get_den() == 0) throw ParseError("zero denominator", 0);
    return q;
}

}  // namespace

LinComb lincomb_from_text(const std::string& text, Space s) {
    std::istringstream in(text);
    std::string line;
    LinComb r(s);
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t here = offset;
        offset += line.size() + 1;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        line = line.substr(b);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.rfind("space ", 0) == 0) {
            auto sp = space_from_name(line.substr(6));
            if (!sp) throw ParseError("unknown space '" + line.substr(6) + "'", here);
            r.space = *sp;
            continue;
        }
        if (line == "0") continue;
        Q c = 1;
        auto dpos = line.find("D[");
        if (dpos == std::string::npos) throw ParseError("expected diagram", here);
        std::string head = line.substr(0, dpos);
        while (!head.empty() && head.back() == ' ') head.pop_back();
        if (!head.empty()) {
            if (head.back() == '*') head.pop_back();
            while (!head.empty() && head.back() == ' ') head.pop_back();
            c = parse_rational(head);
        }
        Diagram d;
        try {
            d = parse(line.substr(dpos), r.space);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), here + b + dpos + e.pos);
        }
        validate(d);
        r.add(d, c);
    }
    return r;
}

namespace {

json diagram_to_json(const Diagram& d) {
    json v = json::array(), e = json::array(), l = json::array();
    for (int i = 0; i < d.nv; ++i) v.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    for (int h = 0; h < d.num_half(); ++h)
        if (h < d.mate[h]) e.push_back({h, d.mate[h]});
    for (int j = 0; j < d.num_legs(); ++j) l.push_back({kind_name(d.legs[j]), d.leg_half(j)});
    json r = {{"v", v}, {"e", e}, {"l", l}};
    if (d.loops) r["o"] = d.loops;
    return r;
}

Diagram diagram_from_json(const json& j, Space s) {
    Builder b(s);
    for (auto& t : j.at("v")) b.vertex(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>());
    for (auto& t : j.at("e")) b.join(t.at(0).get<int>(), t.at(1).get<int>());
    for (auto& t : j.at("l")) {
        auto k = kind_from_name(t.at(0).get<std::string>());
        if (!k) throw ParseError("unknown leg kind '" + t.at(0).get<std::string>() + "'", 0);
        b.legs.emplace_back(*k, t.at(1).get<int>());
    }
    if (j.contains("o")) b.loops = j.at("o").get<int>();
    Diagram d = b.build();
    validate(d);
    return d;
}

}  // namespace

std::string to_json_text(const LinComb& x) {
    json terms = json::array();
    for (auto& [d, c] : x.terms) terms.push_back({{"coeff", c.get_str()}, {"diagram", diagram_to_json(d)}});
    return json{{"space", space_name(x.space)}, {"terms", terms}}.dump();
}

LinComb lincomb_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    try {
        auto sp = space_from_name(j.at("space").get<std::string>());
        if (!sp) throw ParseError("unknown space", 0);
        LinComb r(*sp);
        for (auto& t : j.at("terms"))
            r.add(diagram_from_json(t.at("diagram"), *sp), parse_rational(t.at("coeff").get<std::string>()));
        return r;
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

std::string diagram_json_text(const Diagram& d) { return diagram_to_json(d).dump(); }

Diagram diagram_from_json_text(const std::string& text, Space s) {
    try {
        return diagram_from_json(json::parse(text), s);
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

}  // namespace wc
