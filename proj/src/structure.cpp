#include "locdet/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace locdet {

SStructure SStructure::make(const ActionPtr& a, StructureKind kind) {
    switch (kind) {
        case StructureKind::Maximal:
            if (a->family == Family::Rover)
                throw std::invalid_argument("the maximal structure on ROVER has infinite structure sets; use rover");
            if (a->is_product())
                throw std::invalid_argument("product actions use the brin structure");
            break;
        case StructureKind::Rover:
            if (a->family != Family::Rover) throw std::invalid_argument("rover structure needs the ROVER action");
            break;
        case StructureKind::ProductBrin:
            if (!a->is_product()) throw std::invalid_argument("brin structure needs a product action");
            break;
    }
    SStructure ss;
    ss.action = a;
    ss.kind = kind;
    ss.type_count = domain_type_count(a);
    for (int t = 0; t < ss.type_count; ++t) ss.transversal.push_back(type_transversal(a, t));
    return ss;
}

SStructure SStructure::parse(const ActionPtr& a, const std::string& kind_name) {
    if (kind_name == "maximal") return make(a, StructureKind::Maximal);
    if (kind_name == "rover") return make(a, StructureKind::Rover);
    if (kind_name == "brin") return make(a, StructureKind::ProductBrin);
    throw std::invalid_argument("unknown structure kind: " + kind_name);
}

std::string SStructure::kind_name() const {
    switch (kind) {
        case StructureKind::Maximal: return "maximal";
        case StructureKind::Rover: return "rover";
        case StructureKind::ProductBrin: return "brin";
    }
    return "?";
}

std::vector<PartialMap> SStructure::structure_set(const Domain& d1, const Domain& d2) const {
    if (d1.empty() || d2.empty()) throw std::invalid_argument("structure_set on EMPTY");
    if (type_of(d1) != type_of(d2)) return {};
    switch (kind) {
        case StructureKind::Maximal: return {prefix_map_between(d1, d2)};
        case StructureKind::Rover: {
            std::vector<PartialMap> out;
            for (const char* t : {"1", "b", "c", "d"})
                out.push_back(PartialMap::grig(action, GrigWord::parse(t), d1.w, d2.w));
            return out;
        }
        case StructureKind::ProductBrin: {
            // componentwise maximal: singleton per component, one tuple in all
            std::vector<PartialMap> comps;
            for (size_t i = 0; i < d1.comps.size(); ++i)
                comps.push_back(prefix_map_between(d1.comps[i], d2.comps[i]));
            return {PartialMap::tuple(action, std::move(comps))};
        }
    }
    return {};
}

std::vector<PartialMap> SStructure::structure_group(const Domain& d) const {
    return structure_set(d, d);
}

bool SStructure::in_structure_set(const PartialMap& m) const {
    if (m.zero()) return false;
    switch (kind) {
        case StructureKind::Maximal:
        case StructureKind::ProductBrin: return true;  // maximal: every S-element with the right shape
        case StructureKind::Rover: return !grig_equal(m.g, GrigWord("a"));
    }
    return false;
}

bool SStructure::gamma_piece_in_structure(const GammaElement& g, const Domain& cell) const {
    auto single = gamma_single_map_on(g, cell);
    return single && in_structure_set(*single);
}

namespace {

bool brin_rec(const Domain& d, const std::vector<Domain>& pieces) {
    if (pieces.size() == 1) return pieces[0] == d;
    for (size_t j = 0; j < d.comps.size(); ++j) {
        if (!has_proper_subdomain(d.comps[j])) continue;
        bool all_proper = true;
        for (const auto& p : pieces)
            if (p.comps[j] == d.comps[j]) {
                all_proper = false;
                break;
            }
        if (!all_proper) continue;
        auto parts = maximal_partition(d.comps[j]);
        bool ok = true;
        for (const auto& part : parts) {
            std::vector<Domain> group;
            for (const auto& p : pieces)
                if (is_subdomain(p.comps[j], part)) group.push_back(p);
            if (group.empty()) {
                ok = false;
                break;
            }
            auto comps = d.comps;
            comps[j] = part;
            if (!brin_rec(Domain::product(d.action, std::move(comps)), group)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool SStructure::is_pattern(const Partition& p) const {
    if (kind != StructureKind::ProductBrin) return true;
    return brin_rec(p.base, p.pieces);
}

Partition SStructure::refine_to_pattern(const Partition& p) const {
    if (kind != StructureKind::ProductBrin) return p;
    const Domain& d = p.base;
    std::vector<std::vector<Domain>> grids;
    for (size_t j = 0; j < d.comps.size(); ++j) {
        std::vector<Domain> grid{d.comps[j]};
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<Domain> next;
            for (const auto& cell : grid) {
                bool split = false;
                for (const auto& piece : p.pieces) {
                    const Domain& cut = piece.comps[j];
                    if (is_subdomain(cut, cell) && !(cut == cell)) {
                        split = true;
                        break;
                    }
                }
                if (split) {
                    auto mp = maximal_partition(cell);
                    next.insert(next.end(), mp.begin(), mp.end());
                    changed = true;
                } else {
                    next.push_back(cell);
                }
            }
            grid = std::move(next);
        }
        grids.push_back(std::move(grid));
    }
    Partition out;
    out.base = d;
    std::vector<size_t> idx(grids.size(), 0);
    while (true) {
        std::vector<Domain> comps;
        for (size_t i = 0; i < grids.size(); ++i) comps.push_back(grids[i][idx[i]]);
        out.pieces.push_back(Domain::product(d.action, std::move(comps)));
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < grids[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    std::sort(out.pieces.begin(), out.pieces.end());
    return out;
}

Partition SStructure::generation_witness(const GammaElement& f) const {
    Region dom = f.dom_region();
    if (dom.size() != 1) throw std::invalid_argument("generation_witness: domain is not a single domain");
    Partition out;
    out.base = dom[0];
    for (const auto& piece : f.pieces) {
        Domain src = source_of(piece);
        if (in_structure_set(piece)) {
            out.pieces.push_back(src);
        } else {
            // Rover 'a' twists: one more level turns the sections trivial
            for (const auto& child : maximal_partition(src)) out.pieces.push_back(child);
        }
    }
    std::sort(out.pieces.begin(), out.pieces.end());
    return out;
}

Partition SStructure::random_pattern(const Domain& d, Rng& rng, int steps) const {
    Partition p;
    p.base = d;
    p.pieces = random_split_partition(action, d, rng, steps);
    return p;
}

// ---------------------------------------------------------------- verifier

namespace {

// A locally determined embedding with a single-domain source, with twists
// where the family admits them.
GammaElement random_local_embedding(const ActionPtr& a, Rng& rng, int max_depth) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Domain d = random_domain(a, rng, max_depth);
        auto parts = random_split_partition(a, d, rng, (int)rng.pick(0, 3));
        std::vector<PartialMap> pieces;
        std::vector<Domain> tgts;
        bool ok = true;
        for (const auto& s : parts) {
            bool found = false;
            for (int tries = 0; tries < 48 && !found; ++tries) {
                Domain e = random_domain(a, rng, max_depth + 1);
                if (e.empty() || domain_type_of(e) != domain_type_of(s)) continue;
                bool disjoint = true;
                for (const auto& t : tgts)
                    if (!intersect_domains(t, e).empty()) disjoint = false;
                if (!disjoint) continue;
                PartialMap base = prefix_map_between(s, e);
                if (a->family == Family::Rover && rng.coin(0.8))
                    base = PartialMap::grig(a, grig_multiply(random_grig(rng, 4), base.g), base.w1, base.w2);
                pieces.push_back(base);
                tgts.push_back(e);
                found = true;
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) return make_gamma(a, std::move(pieces));
    }
    throw std::logic_error("random_local_embedding failed");
}

Domain random_subdomain(const ActionPtr& a, const Domain& d, Rng& rng, int steps) {
    Domain cur = d;
    for (int i = 0; i < steps; ++i) {
        auto children = canonical_children(cur);
        if (children.empty()) break;
        cur = rng.choose(children);
    }
    return cur;
}

// Random partition of d into domains that need not be a pattern: a pattern
// with random brick merges applied (products can leave the pattern family).
std::vector<Domain> random_brick_partition(const SStructure& ss, const Domain& d, Rng& rng, int steps) {
    auto pieces = random_split_partition(ss.action, d, rng, steps);
    if (!ss.action->is_product()) return pieces;
    for (int round = 0; round < 8; ++round) {
        bool merged = false;
        for (size_t i = 0; i < pieces.size() && !merged; ++i)
            for (size_t j = i + 1; j < pieces.size() && !merged; ++j) {
                // mergeable iff equal in all coordinates but one, where the
                // words are the full sibling family of a parent
                size_t diff = SIZE_MAX;
                bool cand = true;
                for (size_t c = 0; c < pieces[i].comps.size() && cand; ++c) {
                    if (pieces[i].comps[c] == pieces[j].comps[c]) continue;
                    if (diff != SIZE_MAX) cand = false;
                    diff = c;
                }
                if (!cand || diff == SIZE_MAX) continue;
                const Domain &x = pieces[i].comps[diff], &y = pieces[j].comps[diff];
                if (x.kind != DomainKind::Cone || y.kind != DomainKind::Cone) continue;
                if (x.w.size() != y.w.size() || x.w.size() == 0) continue;
                Word parent = x.w.drop_suffix(Word(x.w.alphabet, {x.w.letters.back()}));
                if (!(y.w.drop_suffix(Word(y.w.alphabet, {y.w.letters.back()})) == parent)) continue;
                if (x.w.alphabet != 2) continue;
                auto comps = pieces[i].comps;
                comps[diff] = Domain::cone(x.action, parent);
                Domain m = Domain::product(d.action, std::move(comps));
                pieces.erase(pieces.begin() + (long)j);
                pieces.erase(pieces.begin() + (long)i);
                pieces.push_back(m);
                merged = true;
            }
        if (!merged) break;
    }
    std::sort(pieces.begin(), pieces.end());
    return pieces;
}

bool refines(const std::vector<Domain>& fine, const std::vector<Domain>& coarse) {
    for (const auto& f : fine) {
        bool inside = false;
        for (const auto& c : coarse)
            if (is_subdomain(f, c)) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

struct Checker {
    const SStructure& ss;
    const VerifyOptions& opt;
    std::vector<AxiomResult> results;

    void record(const std::string& axiom, bool pass, const std::string& witness) {
        for (auto& r : results)
            if (r.axiom == axiom) {
                if (r.pass && !pass) {
                    r.pass = false;
                    r.witness = witness;
                }
                return;
            }
        results.push_back({axiom, pass, pass ? "" : witness});
    }

    std::vector<PartialMap> sset(const Domain& d1, const Domain& d2) const {
        auto out = ss.structure_set(d1, d2);
        if (opt.corrupt_drop_identity && d1 == d2) {
            std::erase_if(out, [](const PartialMap& m) { return is_identity_map(m); });
        }
        return out;
    }

    bool member(const std::vector<PartialMap>& set, const PartialMap& m) const {
        for (const auto& s : set) {
            if (s == m) return true;
            if (s.rule == MapRule::Grig && m.rule == MapRule::Grig && s.w1 == m.w1 && s.w2 == m.w2 &&
                grig_equal(s.g, m.g))
                return true;
        }
        return false;
    }

    Partition refined(const Partition& p) const {
        if (opt.corrupt_shrink_patterns) return trivial_partition(p.base);
        return ss.refine_to_pattern(p);
    }
};

}  // namespace

std::vector<AxiomResult> verify_sstructure_axioms(const SStructure& ss, const VerifyOptions& opt) {
    Checker ck{ss, opt, {}};
    Rng rng(opt.seed);
    const ActionPtr& a = ss.action;
    const int N = opt.samples;

    for (const char* ax : {"P1", "P2", "P3", "P4", "P5", "S1", "S2", "S3", "S4", "S5", "S6"})
        ck.record(ax, true, "");

    for (int i = 0; i < N; ++i) {
        Domain d = random_domain(a, rng, opt.max_depth);

        // P1: trivial partition is a pattern
        ck.record("P1", ss.is_pattern(trivial_partition(d)), d.text());

        // P2: sampled patterns are finite partitions into domains
        Partition p = ss.random_pattern(d, rng, (int)rng.pick(0, 4));
        ck.record("P2", is_valid_partition(p), d.text());

        // P3: restriction of a pattern is a pattern
        Domain e = random_subdomain(a, d, rng, (int)rng.pick(0, 2));
        Partition pe = restrict_partition(p, e);
        ck.record("P3", ss.is_pattern(pe), d.text() + " restricted to " + e.text());

        // P4: patchwork
        Partition patched;
        patched.base = d;
        for (const auto& piece : p.pieces) {
            Partition sub = ss.random_pattern(piece, rng, (int)rng.pick(0, 2));
            patched.pieces.insert(patched.pieces.end(), sub.pieces.begin(), sub.pieces.end());
        }
        std::sort(patched.pieces.begin(), patched.pieces.end());
        ck.record("P4", ss.is_pattern(patched), d.text());

        // P5: cofinality over arbitrary partitions into domains
        Partition arbitrary;
        arbitrary.base = d;
        arbitrary.pieces = random_brick_partition(ss, d, rng, (int)rng.pick(0, 4));
        Partition ref = ck.refined(arbitrary);
        bool p5 = ss.is_pattern(ref) && refines(ref.pieces, arbitrary.pieces) && is_valid_partition(ref);
        ck.record("P5", p5, d.text() + " vs partition of size " + std::to_string(arbitrary.pieces.size()));

        // S1/S2/S3/S4
        Domain d2 = Domain::make_empty(a);
        for (int tries = 0; tries < 64; ++tries) {
            d2 = random_domain(a, rng, opt.max_depth);
            if (!d2.empty() && domain_type_of(d2) == domain_type_of(d)) break;
        }
        if (domain_type_of(d2) == domain_type_of(d)) {
            auto set12 = ck.sset(d, d2);
            for (const auto& s : set12) {
                ck.record("S1", source_of(s) == d && target_of(s) == d2, s.text());
                ck.record("S3", ck.member(ck.sset(d2, d), invert(s)), s.text());
            }
            Domain d3 = Domain::make_empty(a);
            for (int tries = 0; tries < 64; ++tries) {
                d3 = random_domain(a, rng, opt.max_depth);
                if (!d3.empty() && domain_type_of(d3) == domain_type_of(d)) break;
            }
            if (domain_type_of(d3) == domain_type_of(d) && !set12.empty()) {
                auto set23 = ck.sset(d2, d3);
                auto set13 = ck.sset(d, d3);
                for (const auto& s1 : set12)
                    for (const auto& s2 : set23)
                        ck.record("S4", ck.member(set13, compose(s2, s1)),
                                  s2.text() + " after " + s1.text());
            }
        }
        ck.record("S2", ck.member(ck.sset(d, d), identity_on(d)), d.text());

        // S6: structure maps carry patterns to patterns
        if (domain_type_of(d2) == domain_type_of(d)) {
            for (const auto& s : ck.sset(d, d2)) {
                Partition image;
                image.base = d2;
                for (const auto& piece : p.pieces) image.pieces.push_back(translate(s, piece));
                std::sort(image.pieces.begin(), image.pieces.end());
                ck.record("S6", ss.is_pattern(image) && is_valid_partition(image),
                          s.text() + " applied to pattern of " + d.text());
            }
        }

        // S5: generation (heavier: run on a quarter of the samples)
        if (i % 4 == 0) {
            GammaElement f = random_local_embedding(a, rng, opt.max_depth);
            Partition w = ss.generation_witness(f);
            bool ok = ss.is_pattern(w) && is_valid_partition(w);
            if (ok)
                for (const auto& piece : w.pieces)
                    if (!ss.gamma_piece_in_structure(f, piece)) {
                        ok = false;
                        break;
                    }
            ck.record("S5", ok, f.text());
        }
    }

    std::sort(ck.results.begin(), ck.results.end(),
              [](const AxiomResult& x, const AxiomResult& y) { return x.axiom < y.axiom; });
    return ck.results;
}

bool all_pass(const std::vector<AxiomResult>& rep) {
    for (const auto& r : rep)
        if (!r.pass) return false;
    return true;
}

}  // namespace locdet
