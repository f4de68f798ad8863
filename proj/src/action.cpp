#include "locdet/action.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace locdet {

// ---------------------------------------------------------------- actions

ActionPtr Action::make_v(int n) {
    if (n < 2) throw std::invalid_argument("V(n) needs n >= 2");
    auto a = std::make_shared<Action>();
    a->family = Family::V;
    a->n = n;
    a->name = "V" + std::to_string(n);
    a->cup = true;
    return a;
}

ActionPtr Action::make_treebar(int n) {
    if (n < 1) throw std::invalid_argument("TreeBar(n) needs n >= 1");
    auto a = std::make_shared<Action>();
    a->family = Family::TreeBar;
    a->n = n;
    a->name = (n == 2) ? "QV" : "Qbar" + std::to_string(n);
    a->cup = true;
    return a;
}

ActionPtr Action::make_houghton(int n) {
    if (n < 1) throw std::invalid_argument("Houghton(n) needs n >= 1");
    auto a = std::make_shared<Action>();
    a->family = Family::Houghton;
    a->n = n;
    a->name = "H" + std::to_string(n);
    a->cup = true;
    return a;
}

ActionPtr Action::make_rover() {
    auto a = std::make_shared<Action>();
    a->family = Family::Rover;
    a->n = 2;
    a->name = "ROVER";
    a->cup = true;
    return a;
}

ActionPtr Action::make_product(std::vector<ActionPtr> comps) {
    if (comps.size() < 2) throw std::invalid_argument("product action needs >= 2 components");
    for (const auto& c : comps) {
        if (c->is_product()) throw std::invalid_argument("nested product actions not supported");
        if (c->family == Family::Rover)
            throw std::invalid_argument("Rover components are not supported in products");
    }
    auto a = std::make_shared<Action>();
    a->family = Family::Product;
    a->comps = std::move(comps);
    std::string nm = "prod(";
    for (size_t i = 0; i < a->comps.size(); ++i) {
        if (i) nm += ",";
        nm += a->comps[i]->name;
    }
    nm += ")";
    a->name = nm;
    a->cup = false;
    return a;
}

ActionPtr Action::parse(const std::string& spec) {
    if (spec == "ROVER") return make_rover();
    if (spec == "QV") return make_treebar(2);
    if (spec.rfind("Qbar", 0) == 0) return make_treebar(std::stoi(spec.substr(4)));
    if (spec.size() >= 2 && spec[0] == 'V') return make_v(std::stoi(spec.substr(1)));
    if (spec.size() >= 2 && spec[0] == 'H') return make_houghton(std::stoi(spec.substr(1)));
    if (spec.rfind("prod(", 0) == 0 && spec.back() == ')') {
        std::string inner = spec.substr(5, spec.size() - 6);
        std::vector<ActionPtr> comps;
        size_t start = 0;
        for (size_t i = 0; i <= inner.size(); ++i) {
            if (i == inner.size() || inner[i] == ',') {
                comps.push_back(parse(inner.substr(start, i - start)));
                start = i + 1;
            }
        }
        return make_product(std::move(comps));
    }
    throw std::invalid_argument("unknown action spec: " + spec);
}

// ---------------------------------------------------------------- domains

Domain Domain::product(const ActionPtr& a, std::vector<Domain> comps) {
    if (comps.size() != a->comps.size()) throw std::invalid_argument("product arity mismatch");
    for (const auto& c : comps)
        if (c.empty()) return make_empty(a);
    Domain d;
    d.action = a;
    d.kind = DomainKind::Product;
    d.comps = std::move(comps);
    return d;
}

std::string Domain::text() const {
    switch (kind) {
        case DomainKind::Empty: return "EMPTY";
        case DomainKind::Cone: return "B:" + w.text();
        case DomainKind::TreeSubtree: return "T:" + w.text();
        case DomainKind::TreePoint: return "Pt:" + w.text();
        case DomainKind::Ray: return "R:" + std::to_string(tray) + "," + std::to_string(k);
        case DomainKind::RayPoint: return "P:" + std::to_string(tray) + "," + std::to_string(k);
        case DomainKind::Product: {
            std::string s = "(";
            for (size_t i = 0; i < comps.size(); ++i) {
                if (i) s += "x";
                s += comps[i].text();
            }
            return s + ")";
        }
    }
    return "?";
}

Domain Domain::parse(const ActionPtr& a, const std::string& text) {
    if (text == "EMPTY") return make_empty(a);
    if (!text.empty() && text.front() == '(') {
        if (!a->is_product() || text.back() != ')') throw std::invalid_argument("bad product domain: " + text);
        std::string inner = text.substr(1, text.size() - 2);
        std::vector<Domain> comps;
        size_t start = 0, idx = 0;
        for (size_t i = 0; i <= inner.size(); ++i) {
            if (i == inner.size() || inner[i] == 'x') {
                if (idx >= a->comps.size()) throw std::invalid_argument("too many components: " + text);
                comps.push_back(parse(a->comps[idx], inner.substr(start, i - start)));
                ++idx;
                start = i + 1;
            }
        }
        return product(a, std::move(comps));
    }
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad domain: " + text);
    std::string tag = text.substr(0, colon), rest = text.substr(colon + 1);
    if (tag == "B") return cone(a, Word::parse(a->n, rest));
    if (tag == "T") return subtree(a, Word::parse(a->n, rest));
    if (tag == "Pt") return tree_point(a, Word::parse(a->n, rest));
    if (tag == "R" || tag == "P") {
        auto comma = rest.find(',');
        int j = std::stoi(rest.substr(0, comma));
        long k = std::stol(rest.substr(comma + 1));
        if (j < 1 || j > a->n || k < 1) throw std::invalid_argument("bad ray domain: " + text);
        return tag == "R" ? ray(a, j, k) : ray_point(a, j, k);
    }
    throw std::invalid_argument("bad domain: " + text);
}

namespace {

void check_shape(const Domain& d) {
    switch (d.action->family) {
        case Family::V:
        case Family::Rover:
            if (d.kind != DomainKind::Cone && d.kind != DomainKind::Empty)
                throw std::invalid_argument("illegal shape for " + d.action->name + ": " + d.text());
            break;
        case Family::TreeBar:
            if (d.kind != DomainKind::TreeSubtree && d.kind != DomainKind::TreePoint && d.kind != DomainKind::Empty)
                throw std::invalid_argument("illegal shape for " + d.action->name + ": " + d.text());
            break;
        case Family::Houghton:
            if (d.kind != DomainKind::Ray && d.kind != DomainKind::RayPoint && d.kind != DomainKind::Empty)
                throw std::invalid_argument("illegal shape for " + d.action->name + ": " + d.text());
            break;
        case Family::Product:
            if (d.kind != DomainKind::Product && d.kind != DomainKind::Empty)
                throw std::invalid_argument("illegal shape for product: " + d.text());
            break;
    }
}

}  // namespace

Domain intersect_domains(const Domain& d1, const Domain& d2) {
    require_same_action(d1.action, d2.action);
    check_shape(d1);
    check_shape(d2);
    const ActionPtr& a = d1.action;
    if (d1.empty() || d2.empty()) return Domain::make_empty(a);
    switch (d1.kind) {
        case DomainKind::Cone:
        case DomainKind::TreeSubtree: {
            if (d2.kind == d1.kind) {
                if (d1.w.is_prefix_of(d2.w)) return d2;
                if (d2.w.is_prefix_of(d1.w)) return d1;
                return Domain::make_empty(a);
            }
            if (d2.kind == DomainKind::TreePoint)
                return d1.w.is_prefix_of(d2.w) ? d2 : Domain::make_empty(a);
            return Domain::make_empty(a);
        }
        case DomainKind::TreePoint: {
            if (d2.kind == DomainKind::TreePoint)
                return d1.w == d2.w ? d1 : Domain::make_empty(a);
            return intersect_domains(d2, d1);
        }
        case DomainKind::Ray: {
            if (d2.kind == DomainKind::Ray) {
                if (d1.tray != d2.tray) return Domain::make_empty(a);
                return Domain::ray(a, d1.tray, std::max(d1.k, d2.k));
            }
            if (d2.kind == DomainKind::RayPoint)
                return (d1.tray == d2.tray && d2.k >= d1.k) ? d2 : Domain::make_empty(a);
            return Domain::make_empty(a);
        }
        case DomainKind::RayPoint: {
            if (d2.kind == DomainKind::RayPoint)
                return (d1.tray == d2.tray && d1.k == d2.k) ? d1 : Domain::make_empty(a);
            return intersect_domains(d2, d1);
        }
        case DomainKind::Product: {
            std::vector<Domain> comps;
            comps.reserve(d1.comps.size());
            for (size_t i = 0; i < d1.comps.size(); ++i)
                comps.push_back(intersect_domains(d1.comps[i], d2.comps[i]));
            return Domain::product(a, std::move(comps));
        }
        default: return Domain::make_empty(a);
    }
}

bool is_subdomain(const Domain& d1, const Domain& d2) {
    if (d1.empty()) return true;
    if (d2.empty()) return false;
    return intersect_domains(d1, d2) == d1;
}

// ---------------------------------------------------------------- maps

PartialMap PartialMap::tuple(const ActionPtr& a, std::vector<PartialMap> comps) {
    if (comps.size() != a->comps.size()) throw std::invalid_argument("tuple arity mismatch");
    for (const auto& c : comps)
        if (c.zero()) return make_zero(a);
    PartialMap m;
    m.action = a;
    m.rule = MapRule::Tuple;
    m.comps = std::move(comps);
    return m;
}

std::string PartialMap::text() const {
    switch (rule) {
        case MapRule::Zero: return "ZERO";
        case MapRule::Sigma: return "sig " + w1.text() + "->" + w2.text();
        case MapRule::Tau:
            if (action->family == Family::Houghton)
                return "tau " + std::to_string(tray1) + "," + std::to_string(k1) + "->" +
                       std::to_string(tray2) + "," + std::to_string(k2);
            return "tau " + w1.text() + "->" + w2.text();
        case MapRule::Shift:
            return "shift " + std::to_string(tray1) + ":" + std::to_string(k1) + "->" + std::to_string(k2);
        case MapRule::Grig: return "rov[" + g.text() + "] " + w1.text() + "->" + w2.text();
        case MapRule::Tuple: {
            std::string s = "tup(";
            for (size_t i = 0; i < comps.size(); ++i) {
                if (i) s += "|";
                s += comps[i].text();
            }
            return s + ")";
        }
    }
    return "?";
}

PartialMap PartialMap::parse(const ActionPtr& a, const std::string& raw) {
    auto strip = [](const std::string& s) {
        size_t b = s.find_first_not_of(' ');
        size_t e = s.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string text = strip(raw);
    if (text == "ZERO") return make_zero(a);
    if (text.rfind("tup(", 0) == 0 && text.back() == ')') {
        std::string inner = text.substr(4, text.size() - 5);
        std::vector<PartialMap> comps;
        size_t start = 0, idx = 0;
        for (size_t i = 0; i <= inner.size(); ++i) {
            if (i == inner.size() || inner[i] == '|') {
                if (idx >= a->comps.size()) throw std::invalid_argument("too many tuple components");
                comps.push_back(parse(a->comps[idx], inner.substr(start, i - start)));
                ++idx;
                start = i + 1;
            }
        }
        return tuple(a, std::move(comps));
    }
    auto arrow = text.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("bad map: " + text);
    if (text.rfind("sig ", 0) == 0) {
        std::string lhs = strip(text.substr(4, arrow - 4)), rhs = strip(text.substr(arrow + 2));
        if (a->family == Family::Rover) return grig(a, GrigWord(), Word::parse(2, lhs), Word::parse(2, rhs));
        return sigma(a, Word::parse(a->n, lhs), Word::parse(a->n, rhs));
    }
    if (text.rfind("tau ", 0) == 0) {
        std::string lhs = strip(text.substr(4, arrow - 4)), rhs = strip(text.substr(arrow + 2));
        if (a->family == Family::Houghton) {
            auto c1 = lhs.find(','), c2 = rhs.find(',');
            return tau_point(a, std::stoi(lhs.substr(0, c1)), std::stol(lhs.substr(c1 + 1)),
                             std::stoi(rhs.substr(0, c2)), std::stol(rhs.substr(c2 + 1)));
        }
        return tau(a, Word::parse(a->n, lhs), Word::parse(a->n, rhs));
    }
    if (text.rfind("shift ", 0) == 0) {
        std::string body = text.substr(6);
        auto colon = body.find(':');
        auto arr = body.find("->");
        int j = std::stoi(body.substr(0, colon));
        long from = std::stol(body.substr(colon + 1, arr - colon - 1));
        long to = std::stol(body.substr(arr + 2));
        return shift(a, j, from, to);
    }
    if (text.rfind("rov[", 0) == 0) {
        auto close = text.find(']');
        GrigWord gw = GrigWord::parse(text.substr(4, close - 4));
        std::string body = strip(text.substr(close + 1));
        auto arr = body.find("->");
        return grig(a, gw, Word::parse(2, strip(body.substr(0, arr))), Word::parse(2, strip(body.substr(arr + 2))));
    }
    throw std::invalid_argument("bad map: " + text);
}

Domain source_of(const PartialMap& m) {
    const ActionPtr& a = m.action;
    switch (m.rule) {
        case MapRule::Zero: return Domain::make_empty(a);
        case MapRule::Sigma:
            return a->family == Family::TreeBar ? Domain::subtree(a, m.w1) : Domain::cone(a, m.w1);
        case MapRule::Tau:
            return a->family == Family::Houghton ? Domain::ray_point(a, m.tray1, m.k1)
                                                 : Domain::tree_point(a, m.w1);
        case MapRule::Shift: return Domain::ray(a, m.tray1, m.k1);
        case MapRule::Grig: return Domain::cone(a, m.w1);
        case MapRule::Tuple: {
            std::vector<Domain> comps;
            for (const auto& c : m.comps) comps.push_back(source_of(c));
            return Domain::product(a, std::move(comps));
        }
    }
    return Domain::make_empty(a);
}

Domain target_of(const PartialMap& m) {
    const ActionPtr& a = m.action;
    switch (m.rule) {
        case MapRule::Zero: return Domain::make_empty(a);
        case MapRule::Sigma:
            return a->family == Family::TreeBar ? Domain::subtree(a, m.w2) : Domain::cone(a, m.w2);
        case MapRule::Tau:
            return a->family == Family::Houghton ? Domain::ray_point(a, m.tray2, m.k2)
                                                 : Domain::tree_point(a, m.w2);
        case MapRule::Shift: return Domain::ray(a, m.tray1, m.k2);
        case MapRule::Grig: return Domain::cone(a, m.w2);
        case MapRule::Tuple: {
            std::vector<Domain> comps;
            for (const auto& c : m.comps) comps.push_back(target_of(c));
            return Domain::product(a, std::move(comps));
        }
    }
    return Domain::make_empty(a);
}

PartialMap identity_on(const Domain& d) {
    const ActionPtr& a = d.action;
    switch (d.kind) {
        case DomainKind::Empty: return PartialMap::make_zero(a);
        case DomainKind::Cone:
            return a->family == Family::Rover ? PartialMap::grig(a, GrigWord(), d.w, d.w)
                                              : PartialMap::sigma(a, d.w, d.w);
        case DomainKind::TreeSubtree: return PartialMap::sigma(a, d.w, d.w);
        case DomainKind::TreePoint: return PartialMap::tau(a, d.w, d.w);
        case DomainKind::Ray: return PartialMap::shift(a, d.tray, d.k, d.k);
        case DomainKind::RayPoint: return PartialMap::tau_point(a, d.tray, d.k, d.tray, d.k);
        case DomainKind::Product: {
            std::vector<PartialMap> comps;
            for (const auto& c : d.comps) comps.push_back(identity_on(c));
            return PartialMap::tuple(a, std::move(comps));
        }
    }
    return PartialMap::make_zero(a);
}

bool is_identity_map(const PartialMap& m) {
    if (m.zero()) return false;
    return m.text() == identity_on(source_of(m)).text();
}

PartialMap invert(const PartialMap& m) {
    const ActionPtr& a = m.action;
    switch (m.rule) {
        case MapRule::Zero: return m;
        case MapRule::Sigma: return PartialMap::sigma(a, m.w2, m.w1);
        case MapRule::Tau:
            return a->family == Family::Houghton
                       ? PartialMap::tau_point(a, m.tray2, m.k2, m.tray1, m.k1)
                       : PartialMap::tau(a, m.w2, m.w1);
        case MapRule::Shift: return PartialMap::shift(a, m.tray1, m.k2, m.k1);
        case MapRule::Grig: return PartialMap::grig(a, grig_inverse(m.g), m.w2, m.w1);
        case MapRule::Tuple: {
            std::vector<PartialMap> comps;
            for (const auto& c : m.comps) comps.push_back(invert(c));
            return PartialMap::tuple(a, std::move(comps));
        }
    }
    return m;
}

PartialMap restrict_map(const PartialMap& m, const Domain& d) {
    const ActionPtr& a = m.action;
    if (d.empty()) return PartialMap::make_zero(a);
    if (m.zero()) throw std::invalid_argument("cannot restrict the zero map to a non-empty domain");
    Domain src = source_of(m);
    if (!is_subdomain(d, src))
        throw std::invalid_argument("restrict: " + d.text() + " is not a subdomain of " + src.text());
    switch (m.rule) {
        case MapRule::Sigma: {
            Word u = d.w.suffix_after(m.w1);
            Word img = m.w2.concat(u);
            if (d.kind == DomainKind::TreePoint) return PartialMap::tau(a, d.w, img);
            return PartialMap::sigma(a, d.w, img);
        }
        case MapRule::Tau: return m;
        case MapRule::Shift: {
            long ell = m.k2 - m.k1;
            if (d.kind == DomainKind::RayPoint)
                return PartialMap::tau_point(a, d.tray, d.k, d.tray, d.k + ell);
            return PartialMap::shift(a, d.tray, d.k, d.k + ell);
        }
        case MapRule::Grig: {
            Word u = d.w.suffix_after(m.w1);
            return PartialMap::grig(a, grig_section_at(m.g, u), d.w, m.w2.concat(grig_apply(m.g, u)));
        }
        case MapRule::Tuple: {
            std::vector<PartialMap> comps;
            for (size_t i = 0; i < m.comps.size(); ++i)
                comps.push_back(restrict_map(m.comps[i], d.comps[i]));
            return PartialMap::tuple(a, std::move(comps));
        }
        default: return PartialMap::make_zero(a);
    }
}

Domain translate(const PartialMap& m, const Domain& d) {
    if (d.empty()) return d;
    return target_of(restrict_map(m, d));
}

namespace {

// Combine two atomic maps with target(t) == source(s) exactly.
PartialMap combine(const PartialMap& s, const PartialMap& t) {
    const ActionPtr& a = s.action;
    if (s.rule == MapRule::Sigma && t.rule == MapRule::Sigma) {
        assert(s.w1 == t.w2);
        return PartialMap::sigma(a, t.w1, s.w2);
    }
    if (s.rule == MapRule::Tau && t.rule == MapRule::Tau) {
        if (a->family == Family::Houghton) {
            assert(s.tray1 == t.tray2 && s.k1 == t.k2);
            return PartialMap::tau_point(a, t.tray1, t.k1, s.tray2, s.k2);
        }
        assert(s.w1 == t.w2);
        return PartialMap::tau(a, t.w1, s.w2);
    }
    if (s.rule == MapRule::Shift && t.rule == MapRule::Shift) {
        assert(s.tray1 == t.tray1 && s.k1 == t.k2);
        return PartialMap::shift(a, t.tray1, t.k1, t.k2 + (s.k2 - s.k1));
    }
    if (s.rule == MapRule::Grig && t.rule == MapRule::Grig) {
        assert(s.w1 == t.w2);
        return PartialMap::grig(a, grig_multiply(s.g, t.g), t.w1, s.w2);
    }
    if (s.rule == MapRule::Tuple && t.rule == MapRule::Tuple) {
        std::vector<PartialMap> comps;
        for (size_t i = 0; i < s.comps.size(); ++i) comps.push_back(combine(s.comps[i], t.comps[i]));
        return PartialMap::tuple(a, std::move(comps));
    }
    throw std::logic_error("combine: incompatible rules " + s.text() + " / " + t.text());
}

}  // namespace

PartialMap compose(const PartialMap& s, const PartialMap& t) {
    require_same_action(s.action, t.action);
    const ActionPtr& a = s.action;
    if (s.zero() || t.zero()) return PartialMap::make_zero(a);
    Domain mid = intersect_domains(target_of(t), source_of(s));
    if (mid.empty()) return PartialMap::make_zero(a);
    PartialMap t2 = restrict_map(t, translate(invert(t), mid));
    PartialMap s2 = restrict_map(s, mid);
    return combine(s2, t2);
}

// ---------------------------------------------------------------- partitions of domains

bool has_proper_subdomain(const Domain& d) {
    switch (d.kind) {
        case DomainKind::Cone:
        case DomainKind::TreeSubtree:
        case DomainKind::Ray: return true;
        case DomainKind::TreePoint:
        case DomainKind::RayPoint: return false;
        case DomainKind::Product:
            for (const auto& c : d.comps)
                if (has_proper_subdomain(c)) return true;
            return false;
        default: return false;
    }
}

std::vector<Domain> maximal_partition(const Domain& d) {
    const ActionPtr& a = d.action;
    if (d.empty()) throw std::invalid_argument("maximal_partition of EMPTY");
    std::vector<Domain> out;
    switch (d.kind) {
        case DomainKind::Cone:
            for (int i = 0; i < (a->family == Family::Rover ? 2 : a->n); ++i)
                out.push_back(Domain::cone(a, d.w.child(uint8_t(i))));
            break;
        case DomainKind::TreeSubtree:
            for (int i = 0; i < a->n; ++i) out.push_back(Domain::subtree(a, d.w.child(uint8_t(i))));
            out.push_back(Domain::tree_point(a, d.w));
            break;
        case DomainKind::TreePoint:
        case DomainKind::RayPoint: out.push_back(d); break;
        case DomainKind::Ray:
            out.push_back(Domain::ray_point(a, d.tray, d.k));
            out.push_back(Domain::ray(a, d.tray, d.k + 1));
            break;
        case DomainKind::Product:
            throw std::invalid_argument("maximal_partition called on a non-CUP composite domain");
        default: break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Domain> coordinate_split(const Domain& d, size_t j) {
    if (d.kind != DomainKind::Product) throw std::invalid_argument("coordinate_split needs a product brick");
    if (!has_proper_subdomain(d.comps[j])) return {d};
    std::vector<Domain> out;
    for (const auto& piece : maximal_partition(d.comps[j])) {
        auto comps = d.comps;
        comps[j] = piece;
        out.push_back(Domain::product(d.action, std::move(comps)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Domain> canonical_children(const Domain& d) {
    if (d.kind == DomainKind::Product) {
        std::vector<std::vector<Domain>> per_comp;
        bool splittable = false;
        for (const auto& c : d.comps) {
            if (has_proper_subdomain(c)) {
                per_comp.push_back(maximal_partition(c));
                splittable = true;
            } else {
                per_comp.push_back({c});
            }
        }
        if (!splittable) return {};
        std::vector<Domain> out;
        std::vector<size_t> idx(per_comp.size(), 0);
        while (true) {
            std::vector<Domain> comps;
            for (size_t i = 0; i < per_comp.size(); ++i) comps.push_back(per_comp[i][idx[i]]);
            out.push_back(Domain::product(d.action, std::move(comps)));
            size_t i = 0;
            for (; i < idx.size(); ++i) {
                if (++idx[i] < per_comp[i].size()) break;
                idx[i] = 0;
            }
            if (i == idx.size()) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    if (!has_proper_subdomain(d)) return {};
    return maximal_partition(d);
}

std::vector<Domain> partition_difference(const Domain& e, const Domain& d) {
    if (!is_subdomain(d, e)) throw std::invalid_argument("partition_difference: not nested");
    std::vector<Domain> out;
    Domain cur = e;
    while (!(cur == d)) {
        auto mp = maximal_partition(cur);
        if (mp.size() == 1 && mp[0] == cur) throw std::logic_error("partition_difference: stuck");
        bool found = false;
        for (const auto& piece : mp) {
            if (is_subdomain(d, piece)) {
                cur = piece;
                found = true;
            } else {
                out.push_back(piece);
            }
        }
        if (!found) throw std::logic_error("partition_difference: no piece contains target");
    }
    std::sort(out.begin(), out.end());
    return out;
}

int depth_of(const Domain& d, const Domain& e) {
    if (!is_subdomain(d, e)) throw std::invalid_argument("depth_of: not nested");
    int depth = 1;
    Domain cur = e;
    while (!(cur == d)) {
        auto mp = maximal_partition(cur);
        if (mp.size() == 1 && mp[0] == cur) throw std::logic_error("depth_of: stuck");
        for (const auto& piece : mp)
            if (is_subdomain(d, piece)) {
                cur = piece;
                break;
            }
        ++depth;
    }
    return depth;
}

std::vector<Domain> root_partition(const ActionPtr& a) {
    switch (a->family) {
        case Family::V:
        case Family::Rover: return {Domain::cone(a, Word(a->family == Family::Rover ? 2 : a->n, {}))};
        case Family::TreeBar: return {Domain::subtree(a, Word(a->n, {}))};
        case Family::Houghton: {
            std::vector<Domain> out;
            for (int j = 1; j <= a->n; ++j) out.push_back(Domain::ray(a, j, 1));
            return out;
        }
        case Family::Product: {
            std::vector<std::vector<Domain>> per_comp;
            for (const auto& c : a->comps) per_comp.push_back(root_partition(c));
            std::vector<Domain> out;
            std::vector<size_t> idx(per_comp.size(), 0);
            while (true) {
                std::vector<Domain> comps;
                for (size_t i = 0; i < per_comp.size(); ++i) comps.push_back(per_comp[i][idx[i]]);
                out.push_back(Domain::product(a, std::move(comps)));
                size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < per_comp[i].size()) break;
                    idx[i] = 0;
                }
                if (i == idx.size()) break;
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return {};
}

int domain_type_count(const ActionPtr& a) {
    switch (a->family) {
        case Family::V:
        case Family::Rover: return 1;
        case Family::TreeBar: return 2;
        case Family::Houghton: return a->n + 1;
        case Family::Product: {
            int t = 1;
            for (const auto& c : a->comps) t *= domain_type_count(c);
            return t;
        }
    }
    return 1;
}

int domain_type_of(const Domain& d) {
    if (d.empty()) throw std::invalid_argument("domain_type_of(EMPTY)");
    switch (d.kind) {
        case DomainKind::Cone: return 0;
        case DomainKind::TreePoint: return 0;
        case DomainKind::TreeSubtree: return 1;
        case DomainKind::RayPoint: return 0;
        case DomainKind::Ray: return d.tray;
        case DomainKind::Product: {
            int id = 0;
            for (size_t i = 0; i < d.comps.size(); ++i)
                id = id * domain_type_count(d.action->comps[i]) + domain_type_of(d.comps[i]);
            return id;
        }
        default: return 0;
    }
}

Domain type_transversal(const ActionPtr& a, int type_id) {
    switch (a->family) {
        case Family::V:
        case Family::Rover: return Domain::cone(a, Word(a->family == Family::Rover ? 2 : a->n, {}));
        case Family::TreeBar:
            return type_id == 0 ? Domain::tree_point(a, Word(a->n, {}))
                                : Domain::subtree(a, Word(a->n, {}));
        case Family::Houghton:
            return type_id == 0 ? Domain::ray_point(a, 1, 1) : Domain::ray(a, type_id, 1);
        case Family::Product: {
            std::vector<Domain> comps(a->comps.size(), Domain());
            int id = type_id;
            for (size_t i = a->comps.size(); i-- > 0;) {
                int t = domain_type_count(a->comps[i]);
                comps[i] = type_transversal(a->comps[i], id % t);
                id /= t;
            }
            return Domain::product(a, std::move(comps));
        }
    }
    throw std::invalid_argument("bad type id");
}

PartialMap prefix_map_between(const Domain& d, const Domain& e) {
    require_same_action(d.action, e.action);
    if (domain_type_of(d) != domain_type_of(e))
        throw std::invalid_argument("prefix_map_between: type mismatch " + d.text() + " vs " + e.text());
    const ActionPtr& a = d.action;
    switch (d.kind) {
        case DomainKind::Cone:
            return a->family == Family::Rover ? PartialMap::grig(a, GrigWord(), d.w, e.w)
                                              : PartialMap::sigma(a, d.w, e.w);
        case DomainKind::TreeSubtree: return PartialMap::sigma(a, d.w, e.w);
        case DomainKind::TreePoint: return PartialMap::tau(a, d.w, e.w);
        case DomainKind::Ray: return PartialMap::shift(a, d.tray, d.k, e.k);
        case DomainKind::RayPoint: return PartialMap::tau_point(a, d.tray, d.k, e.tray, e.k);
        case DomainKind::Product: {
            std::vector<PartialMap> comps;
            for (size_t i = 0; i < d.comps.size(); ++i)
                comps.push_back(prefix_map_between(d.comps[i], e.comps[i]));
            return PartialMap::tuple(a, std::move(comps));
        }
        default: throw std::invalid_argument("prefix_map_between: empty domain");
    }
}

std::vector<Domain> enumerate_domains(const ActionPtr& a, int depth) {
    std::vector<Domain> out;
    switch (a->family) {
        case Family::V:
        case Family::Rover: {
            int n = a->family == Family::Rover ? 2 : a->n;
            std::vector<Word> words{Word(n, {})};
            for (size_t i = 0; i < words.size(); ++i) {
                out.push_back(Domain::cone(a, words[i]));
                if ((int)words[i].size() < depth)
                    for (int b = 0; b < n; ++b) words.push_back(words[i].child(uint8_t(b)));
            }
            break;
        }
        case Family::TreeBar: {
            std::vector<Word> words{Word(a->n, {})};
            for (size_t i = 0; i < words.size(); ++i) {
                out.push_back(Domain::subtree(a, words[i]));
                out.push_back(Domain::tree_point(a, words[i]));
                if ((int)words[i].size() < depth)
                    for (int b = 0; b < a->n; ++b) words.push_back(words[i].child(uint8_t(b)));
            }
            break;
        }
        case Family::Houghton: {
            for (int j = 1; j <= a->n; ++j)
                for (long k = 1; k <= depth; ++k) {
                    out.push_back(Domain::ray(a, j, k));
                    out.push_back(Domain::ray_point(a, j, k));
                }
            break;
        }
        case Family::Product: {
            std::vector<std::vector<Domain>> per_comp;
            for (const auto& c : a->comps) per_comp.push_back(enumerate_domains(c, depth));
            std::vector<size_t> idx(per_comp.size(), 0);
            while (true) {
                std::vector<Domain> comps;
                for (size_t i = 0; i < per_comp.size(); ++i) comps.push_back(per_comp[i][idx[i]]);
                out.push_back(Domain::product(a, std::move(comps)));
                size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < per_comp[i].size()) break;
                    idx[i] = 0;
                }
                if (i == idx.size()) break;
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Complement of d inside the root brick/domain r, as disjoint domains.
std::vector<Domain> complement_in(const Domain& r, const Domain& d) {
    if (r.kind != DomainKind::Product) return partition_difference(r, d);
    std::vector<Domain> out;
    Domain cur = r;
    for (size_t j = 0; j < r.comps.size(); ++j) {
        for (const auto& piece : partition_difference(cur.comps[j], d.comps[j])) {
            auto comps = cur.comps;
            comps[j] = piece;
            out.push_back(Domain::product(r.action, std::move(comps)));
        }
        cur.comps[j] = d.comps[j];
    }
    return out;
}

}  // namespace

CupReport verify_cup(const ActionPtr& a, int depth_bound) {
    CupReport rep;
    auto domains = enumerate_domains(a, depth_bound);
    // (1) nested domains
    for (size_t i = 0; i < domains.size() && rep.pass; ++i) {
        for (size_t j = i + 1; j < domains.size(); ++j) {
            const Domain &d1 = domains[i], &d2 = domains[j];
            Domain inter = intersect_domains(d1, d2);
            if (!inter.empty() && !(inter == d1) && !(inter == d2)) {
                rep.pass = false;
                rep.witness = d1.text() + " vs " + d2.text();
                rep.detail = "nested-domains fails: overlap " + inter.text() + " is proper in both";
                break;
            }
        }
    }
    // (2) finite complementation: constructive for every registered family
    if (rep.pass) {
        auto roots = root_partition(a);
        for (const auto& d : domains) {
            std::vector<Domain> comp;
            bool placed = false;
            for (const auto& r : roots) {
                if (is_subdomain(d, r)) {
                    auto inside = complement_in(r, d);
                    comp.insert(comp.end(), inside.begin(), inside.end());
                    placed = true;
                } else {
                    comp.push_back(r);
                }
            }
            if (!placed) {
                rep.pass = false;
                rep.witness = d.text();
                rep.detail = "domain not contained in any root";
                break;
            }
            if (!pieces_pairwise_disjoint(comp)) {
                rep.pass = false;
                rep.witness = d.text();
                rep.detail = "complement pieces overlap";
                break;
            }
            for (const auto& p : comp) {
                if (!intersect_domains(p, d).empty()) {
                    rep.pass = false;
                    rep.witness = d.text() + " vs " + p.text();
                    rep.detail = "complement piece meets the domain";
                    break;
                }
            }
            if (!rep.pass) break;
        }
    }
    if (rep.pass) rep.detail = "both conditions verified to depth " + std::to_string(depth_bound);
    return rep;
}

// ---------------------------------------------------------------- partition type

bool pieces_pairwise_disjoint(const std::vector<Domain>& pieces) {
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j)
            if (!intersect_domains(pieces[i], pieces[j]).empty()) return false;
    return true;
}

namespace {

bool cover_rec(const Domain& base, std::vector<Domain> pieces, int guard) {
    if (guard < 0) throw std::logic_error("cover_rec: depth guard exhausted");
    if (pieces.empty()) return false;
    if (pieces.size() == 1 && pieces[0] == base) return true;
    auto children = canonical_children(base);
    if (children.empty()) return false;
    for (const auto& child : children) {
        std::vector<Domain> sub;
        for (const auto& p : pieces) {
            Domain inter = intersect_domains(p, child);
            if (!inter.empty()) sub.push_back(inter);
        }
        if (!cover_rec(child, std::move(sub), guard - 1)) return false;
    }
    return true;
}

int domain_depth(const Domain& d) {
    switch (d.kind) {
        case DomainKind::Cone:
        case DomainKind::TreeSubtree:
        case DomainKind::TreePoint: return (int)d.w.size();
        case DomainKind::Ray:
        case DomainKind::RayPoint: return (int)d.k;
        case DomainKind::Product: {
            int m = 0;
            for (const auto& c : d.comps) m = std::max(m, domain_depth(c));
            return m;
        }
        default: return 0;
    }
}

}  // namespace

bool pieces_cover(const Domain& base, const std::vector<Domain>& pieces) {
    int guard = domain_depth(base) + 4;
    for (const auto& p : pieces) guard = std::max(guard, domain_depth(p) + 4);
    std::vector<Domain> inside;
    for (const auto& p : pieces) {
        if (!is_subdomain(p, base)) return false;
        inside.push_back(p);
    }
    return cover_rec(base, std::move(inside), guard + 4);
}

bool is_valid_partition(const Partition& p) {
    if (p.base.empty() || p.pieces.empty()) return false;
    for (const auto& piece : p.pieces)
        if (piece.empty()) return false;
    return pieces_pairwise_disjoint(p.pieces) && pieces_cover(p.base, p.pieces);
}

Partition trivial_partition(const Domain& d) { return Partition{d, {d}}; }

Partition meet(const Partition& p1, const Partition& p2) {
    if (!(p1.base == p2.base)) throw std::invalid_argument("meet: base mismatch");
    Partition out;
    out.base = p1.base;
    for (const auto& x : p1.pieces)
        for (const auto& y : p2.pieces) {
            Domain inter = intersect_domains(x, y);
            if (!inter.empty()) out.pieces.push_back(inter);
        }
    std::sort(out.pieces.begin(), out.pieces.end());
    return out;
}

Partition restrict_partition(const Partition& p, const Domain& y) {
    if (!is_subdomain(y, p.base)) throw std::invalid_argument("restrict_partition: not a subdomain");
    Partition out;
    out.base = y;
    for (const auto& x : p.pieces) {
        Domain inter = intersect_domains(x, y);
        if (!inter.empty()) out.pieces.push_back(inter);
    }
    std::sort(out.pieces.begin(), out.pieces.end());
    return out;
}

// ---------------------------------------------------------------- regions

bool region_contains(const Region& region, const Domain& d) {
    if (d.empty()) return true;
    for (const auto& r : region)
        if (is_subdomain(d, r)) return true;
    bool touches = false;
    std::vector<Domain> cut;
    for (const auto& r : region) {
        Domain inter = intersect_domains(r, d);
        if (!inter.empty()) {
            touches = true;
            cut.push_back(inter);
        }
    }
    if (!touches) return false;
    return pieces_cover(d, cut);
}

namespace {

// Parent domain whose maximal partition could contain d, when one exists.
std::optional<Domain> merge_parent(const Domain& d) {
    const ActionPtr& a = d.action;
    switch (d.kind) {
        case DomainKind::Cone:
            if (d.w.empty()) return std::nullopt;
            return Domain::cone(a, d.w.drop_suffix(Word(d.w.alphabet, {d.w.letters.back()})));
        case DomainKind::TreeSubtree:
            if (d.w.empty()) return std::nullopt;
            return Domain::subtree(a, d.w.drop_suffix(Word(d.w.alphabet, {d.w.letters.back()})));
        case DomainKind::TreePoint: return Domain::subtree(a, d.w);
        case DomainKind::Ray:
            if (d.k <= 1) return std::nullopt;
            return Domain::ray(a, d.tray, d.k - 1);
        case DomainKind::RayPoint: return Domain::ray(a, d.tray, d.k);
        default: return std::nullopt;
    }
}

// Deterministic coordinate-priority merging of disjoint product cells:
// whenever a full sibling family sits in one coordinate with all other
// coordinates equal, replace it by the parent brick. Input cells are a
// canonical set, so the result is presentation-independent.
void merge_region_cells(const ActionPtr& a, std::vector<Domain>& cells) {
    if (!a->is_product()) return;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t j = 0; j < a->comps.size() && !changed; ++j) {
            std::map<std::string, std::vector<size_t>> groups;
            for (size_t i = 0; i < cells.size(); ++i) {
                std::string key;
                for (size_t c = 0; c < cells[i].comps.size(); ++c)
                    if (c != j) key += cells[i].comps[c].text() + "|";
                groups[key].push_back(i);
            }
            for (auto& [key, idxs] : groups) {
                if (idxs.size() < 2) continue;
                std::set<std::string> have;
                for (size_t i : idxs) have.insert(cells[i].comps[j].text());
                for (size_t i : idxs) {
                    auto parent = merge_parent(cells[i].comps[j]);
                    if (!parent) continue;
                    auto family = maximal_partition(*parent);
                    bool full = family.size() > 1;
                    for (const auto& member : family) full = full && have.count(member.text());
                    if (!full) continue;
                    std::set<std::string> family_texts;
                    for (const auto& member : family) family_texts.insert(member.text());
                    std::vector<Domain> next;
                    for (size_t c = 0; c < cells.size(); ++c) {
                        bool in_family = false;
                        for (size_t x : idxs)
                            if (x == c && family_texts.count(cells[c].comps[j].text())) in_family = true;
                        if (!in_family) next.push_back(cells[c]);
                    }
                    auto comps = cells[i].comps;
                    comps[j] = *parent;
                    next.push_back(Domain::product(a, std::move(comps)));
                    cells = std::move(next);
                    changed = true;
                    break;
                }
                if (changed) break;
            }
        }
    }
    std::sort(cells.begin(), cells.end());
}

void region_descend(const ActionPtr& a, const std::vector<Domain>& parts, const Domain& cell,
                    std::vector<Domain>& out, int guard) {
    if (guard < 0) throw std::logic_error("region_descend: depth guard exhausted");
    bool touches = false;
    for (const auto& p : parts)
        if (!intersect_domains(p, cell).empty()) {
            touches = true;
            break;
        }
    if (!touches) return;
    if (region_contains(parts, cell)) {
        out.push_back(cell);
        return;
    }
    auto children = canonical_children(cell);
    if (children.empty()) return;  // singleton partially covered cannot happen
    for (const auto& child : children) region_descend(a, parts, child, out, guard - 1);
}

}  // namespace

Region canonical_region(const ActionPtr& a, const std::vector<Domain>& parts) {
    std::vector<Domain> nonempty;
    for (const auto& p : parts)
        if (!p.empty()) nonempty.push_back(p);
    int guard = 8;
    for (const auto& p : nonempty) guard = std::max(guard, domain_depth(p) + 8);
    Region out;
    for (const auto& r : root_partition(a)) region_descend(a, nonempty, r, out, guard);
    std::sort(out.begin(), out.end());
    return out;
}

bool region_subset(const Region& r1, const Region& r2) {
    for (const auto& d : r1)
        if (!region_contains(r2, d)) return false;
    return true;
}

bool regions_equal(const Region& r1, const Region& r2) {
    return region_subset(r1, r2) && region_subset(r2, r1);
}

std::string region_text(const Region& r) {
    std::string s = "[";
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) s += " ";
        s += r[i].text();
    }
    return s + "]";
}

}  // namespace locdet
