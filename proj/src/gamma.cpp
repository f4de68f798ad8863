#include "locdet/gamma.hpp"

#include <algorithm>
#include <map>

namespace locdet {

namespace {

int map_depth(const PartialMap& m) {
    switch (m.rule) {
        case MapRule::Sigma:
        case MapRule::Grig:
        case MapRule::Tau: {
            int d = (int)std::max(m.w1.size(), m.w2.size());
            if (m.rule == MapRule::Grig) d += (int)m.g.letters.size() + 2;
            return std::max<long>(d, std::max(m.k1, m.k2));
        }
        case MapRule::Shift: return (int)std::max(m.k1, m.k2);
        case MapRule::Tuple: {
            int d = 0;
            for (const auto& c : m.comps) d = std::max(d, map_depth(c));
            return d;
        }
        default: return 0;
    }
}

// Reconstructs the single S-element on cell from the pieces restricted into
// cell (which tile cell), or nullopt when the function is not one S-element
// there. `rp` entries are exactly the restrictions of the function.
std::optional<PartialMap> reconstruct(const Domain& cell, const std::vector<PartialMap>& rp);

// Extends an atomic component map from its source to the enclosing component
// domain, when an extension inside S exists.
std::optional<PartialMap> extend_component(const PartialMap& m, const Domain& cell) {
    Domain src = source_of(m);
    if (src == cell) return m;
    switch (m.rule) {
        case MapRule::Sigma:
        case MapRule::Tau: {
            if (m.action->family == Family::Houghton) return std::nullopt;  // point into ray: no S extension
            if (cell.kind == DomainKind::TreePoint) return std::nullopt;
            Word s = m.w1.suffix_after(cell.w);
            if (!s.is_suffix_of(m.w2)) return std::nullopt;
            return PartialMap::sigma(m.action, cell.w, m.w2.drop_suffix(s));
        }
        case MapRule::Shift: {
            long ell = m.k2 - m.k1;
            if (cell.kind != DomainKind::Ray || cell.tray != m.tray1) return std::nullopt;
            if (cell.k + ell < 1) return std::nullopt;
            return PartialMap::shift(m.action, cell.tray, cell.k, cell.k + ell);
        }
        default: return std::nullopt;
    }
}

std::optional<PartialMap> reconstruct_cone_like(const Domain& cell, const std::vector<PartialMap>& rp) {
    // V cones and TreeBar subtrees: all restricted pieces must be suffix-aligned
    // prefix maps onto a common target word.
    std::optional<Word> v;
    for (const auto& p : rp) {
        if (p.rule != MapRule::Sigma && p.rule != MapRule::Tau) return std::nullopt;
        Word s = p.w1.suffix_after(cell.w);
        if (!s.is_suffix_of(p.w2)) return std::nullopt;
        Word cand = p.w2.drop_suffix(s);
        if (v && !(*v == cand)) return std::nullopt;
        v = cand;
    }
    if (!v) return std::nullopt;
    return PartialMap::sigma(cell.action, cell.w, *v);
}

std::optional<PartialMap> reconstruct_ray(const Domain& cell, const std::vector<PartialMap>& rp) {
    std::optional<long> ell;
    for (const auto& p : rp) {
        long cand;
        if (p.rule == MapRule::Shift) {
            if (p.tray1 != cell.tray) return std::nullopt;
            cand = p.k2 - p.k1;
        } else if (p.rule == MapRule::Tau) {
            if (p.tray1 != cell.tray || p.tray2 != cell.tray) return std::nullopt;
            cand = p.k2 - p.k1;
        } else {
            return std::nullopt;
        }
        if (ell && *ell != cand) return std::nullopt;
        ell = cand;
    }
    if (!ell || cell.k + *ell < 1) return std::nullopt;
    return PartialMap::shift(cell.action, cell.tray, cell.k, cell.k + *ell);
}

const std::vector<GrigWord>& nucleus() {
    static const std::vector<GrigWord> nuc = {GrigWord(), GrigWord("a"), GrigWord("b"), GrigWord("c"),
                                              GrigWord("d")};
    return nuc;
}

std::optional<PartialMap> reconstruct_rover(const Domain& cell, const std::vector<PartialMap>& rp) {
    for (const auto& n : nucleus()) {
        std::optional<Word> v;
        bool ok = true;
        for (const auto& p : rp) {
            if (p.rule != MapRule::Grig) return std::nullopt;
            Word s = p.w1.suffix_after(cell.w);
            Word ns = grig_apply(n, s);
            if (!ns.is_suffix_of(p.w2)) {
                ok = false;
                break;
            }
            Word cand = p.w2.drop_suffix(ns);
            if (v && !(*v == cand)) {
                ok = false;
                break;
            }
            v = cand;
            if (!grig_equal(p.g, grig_section_at(n, s))) {
                ok = false;
                break;
            }
        }
        if (ok && v) return PartialMap::grig(cell.action, n, cell.w, *v);
    }
    return std::nullopt;
}

std::optional<PartialMap> reconstruct_product(const Domain& cell, const std::vector<PartialMap>& rp) {
    std::vector<PartialMap> comps;
    for (size_t j = 0; j < cell.comps.size(); ++j) {
        auto ext = extend_component(rp.front().comps[j], cell.comps[j]);
        if (!ext) return std::nullopt;
        comps.push_back(*ext);
    }
    PartialMap cand = PartialMap::tuple(cell.action, std::move(comps));
    for (const auto& p : rp)
        if (!(restrict_map(cand, source_of(p)) == p)) return std::nullopt;
    return cand;
}

std::optional<PartialMap> reconstruct(const Domain& cell, const std::vector<PartialMap>& rp) {
    if (rp.empty()) return std::nullopt;
    switch (cell.kind) {
        case DomainKind::TreePoint:
        case DomainKind::RayPoint: return rp.size() == 1 ? std::optional<PartialMap>(rp.front()) : std::nullopt;
        case DomainKind::Cone:
            return cell.action->family == Family::Rover ? reconstruct_rover(cell, rp)
                                                        : reconstruct_cone_like(cell, rp);
        case DomainKind::TreeSubtree: return reconstruct_cone_like(cell, rp);
        case DomainKind::Ray: return reconstruct_ray(cell, rp);
        case DomainKind::Product: return reconstruct_product(cell, rp);
        default: return std::nullopt;
    }
}

struct Canonicalizer {
    const ActionPtr& action;
    const std::vector<PartialMap>& pieces;
    std::vector<Domain> sources;
    std::vector<PartialMap> out;
    int guard;

    Canonicalizer(const ActionPtr& a, const std::vector<PartialMap>& ps) : action(a), pieces(ps) {
        int g = 8;
        for (const auto& p : ps) {
            sources.push_back(source_of(p));
            g = std::max(g, 2 * map_depth(p) + 16);
        }
        guard = g;
    }

    void descend(const Domain& cell, int depth) {
        if (depth > guard) throw std::logic_error("gamma canonicalization: depth guard exhausted");
        std::vector<PartialMap> rp;
        bool touches = false;
        for (size_t i = 0; i < pieces.size(); ++i) {
            Domain inter = intersect_domains(sources[i], cell);
            if (!inter.empty()) {
                touches = true;
                rp.push_back(restrict_map(pieces[i], inter));
            }
        }
        if (!touches) return;
        if (region_contains(sources, cell)) {
            if (auto single = reconstruct(cell, rp)) {
                out.push_back(*single);
                return;
            }
        }
        auto children = canonical_children(cell);
        if (children.empty())
            throw std::logic_error("gamma canonicalization: partial coverage of an atomic cell");
        for (const auto& child : children) descend(child, depth + 1);
    }

    std::vector<PartialMap> run() {
        for (const auto& r : root_partition(action)) descend(r, 0);
        std::sort(out.begin(), out.end());
        return out;
    }
};

}  // namespace

GammaElement make_gamma(const ActionPtr& a, std::vector<PartialMap> raw) {
    std::vector<PartialMap> pieces;
    for (auto& p : raw) {
        if (p.zero()) continue;
        require_same_action(a, p.action);
        pieces.push_back(std::move(p));
    }
    std::vector<Domain> srcs, tgts;
    for (const auto& p : pieces) {
        srcs.push_back(source_of(p));
        tgts.push_back(target_of(p));
    }
    if (!pieces_pairwise_disjoint(srcs)) throw std::invalid_argument("gamma pieces: sources overlap");
    if (!pieces_pairwise_disjoint(tgts)) throw std::invalid_argument("gamma pieces: targets overlap");
    GammaElement g;
    g.action = a;
    g.pieces = Canonicalizer(a, pieces).run();
    return g;
}

GammaElement gamma_identity_on(const ActionPtr& a, const Region& region) {
    std::vector<PartialMap> pieces;
    for (const auto& d : region) pieces.push_back(identity_on(d));
    return make_gamma(a, std::move(pieces));
}

std::string GammaElement::text() const {
    std::string s = "{ ";
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (i) s += " ; ";
        s += pieces[i].text();
    }
    return s + " }";
}

GammaElement GammaElement::parse(const ActionPtr& a, const std::string& text) {
    std::string body = text;
    auto lb = body.find('{');
    auto rb = body.rfind('}');
    if (lb != std::string::npos && rb != std::string::npos) body = body.substr(lb + 1, rb - lb - 1);
    std::vector<PartialMap> pieces;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && (body[i] == '(' || body[i] == '[')) ++depth;
        if (i < body.size() && (body[i] == ')' || body[i] == ']')) --depth;
        if (i == body.size() || (body[i] == ';' && depth == 0)) {
            std::string part = body.substr(start, i - start);
            size_t b = part.find_first_not_of(' ');
            if (b != std::string::npos) pieces.push_back(PartialMap::parse(a, part));
            start = i + 1;
        }
    }
    return make_gamma(a, std::move(pieces));
}

Region GammaElement::dom_region() const {
    std::vector<Domain> srcs;
    for (const auto& p : pieces) srcs.push_back(source_of(p));
    return canonical_region(action, srcs);
}

Region GammaElement::im_region() const {
    std::vector<Domain> tgts;
    for (const auto& p : pieces) tgts.push_back(target_of(p));
    return canonical_region(action, tgts);
}

GammaElement gamma_compose(const GammaElement& g, const GammaElement& h) {
    require_same_action(g.action, h.action);
    std::vector<PartialMap> pieces;
    for (const auto& gi : g.pieces)
        for (const auto& hj : h.pieces) {
            PartialMap c = compose(gi, hj);
            if (!c.zero()) pieces.push_back(std::move(c));
        }
    return make_gamma(g.action, std::move(pieces));
}

GammaElement gamma_invert(const GammaElement& g) {
    std::vector<PartialMap> pieces;
    for (const auto& p : g.pieces) pieces.push_back(invert(p));
    return make_gamma(g.action, std::move(pieces));
}

GammaElement gamma_restrict(const GammaElement& g, const Domain& d) {
    std::vector<PartialMap> pieces;
    for (const auto& p : g.pieces) {
        Domain inter = intersect_domains(source_of(p), d);
        if (!inter.empty()) pieces.push_back(restrict_map(p, inter));
    }
    return make_gamma(g.action, std::move(pieces));
}

GammaElement gamma_restrict_region(const GammaElement& g, const Region& r) {
    std::vector<PartialMap> pieces;
    for (const auto& p : g.pieces)
        for (const auto& d : r) {
            Domain inter = intersect_domains(source_of(p), d);
            if (!inter.empty()) pieces.push_back(restrict_map(p, inter));
        }
    return make_gamma(g.action, std::move(pieces));
}

bool gamma_equal(const GammaElement& g, const GammaElement& h) {
    return g.action->name == h.action->name && g.text() == h.text();
}

bool gamma_equal_by_refinement(const GammaElement& g, const GammaElement& h) {
    if (g.action->name != h.action->name) return false;
    if (!regions_equal(g.dom_region(), h.dom_region())) return false;
    for (const auto& pg : g.pieces) {
        Domain s = source_of(pg);
        for (const auto& ph : h.pieces) {
            Domain inter = intersect_domains(s, source_of(ph));
            if (inter.empty()) continue;
            PartialMap a = restrict_map(pg, inter), b = restrict_map(ph, inter);
            if (a.rule == MapRule::Grig && b.rule == MapRule::Grig) {
                if (!(a.w1 == b.w1) || !(a.w2 == b.w2) || !grig_equal(a.g, b.g)) return false;
            } else if (!(a == b)) {
                return false;
            }
        }
    }
    return true;
}

Region gamma_image_of(const GammaElement& g, const Domain& d) {
    std::vector<Domain> parts;
    for (const auto& p : g.pieces) {
        Domain inter = intersect_domains(source_of(p), d);
        if (!inter.empty()) parts.push_back(translate(p, inter));
    }
    return canonical_region(g.action, parts);
}

bool gamma_defined_on(const GammaElement& g, const Region& r) {
    return region_subset(r, g.dom_region());
}

bool gamma_is_full(const GammaElement& g) {
    Region x = canonical_region(g.action, root_partition(g.action));
    return regions_equal(g.dom_region(), x) && regions_equal(g.im_region(), x);
}

std::optional<PartialMap> gamma_single_map_on(const GammaElement& g, const Domain& cell) {
    std::vector<PartialMap> rp;
    std::vector<Domain> srcs;
    for (const auto& p : g.pieces) {
        Domain s = source_of(p);
        srcs.push_back(s);
        Domain inter = intersect_domains(s, cell);
        if (!inter.empty()) rp.push_back(restrict_map(p, inter));
    }
    if (!region_contains(srcs, cell)) return std::nullopt;
    return reconstruct(cell, rp);
}

}  // namespace locdet
