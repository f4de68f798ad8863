#include "locdet/sampling.hpp"

#include <algorithm>
#include <map>

namespace locdet {

Word random_word(Rng& rng, int alphabet, int max_len) {
    int len = (int)rng.pick(0, max_len);
    std::vector<uint8_t> letters;
    for (int i = 0; i < len; ++i) letters.push_back((uint8_t)rng.pick(0, alphabet - 1));
    return Word(alphabet, std::move(letters));
}

GrigWord random_grig(Rng& rng, int max_len) {
    static const char* gens = "abcd";
    int len = (int)rng.pick(0, max_len);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(gens[rng.pick(0, 3)]);
    return GrigWord(s);
}

Domain random_domain(const ActionPtr& a, Rng& rng, int max_depth) {
    switch (a->family) {
        case Family::V: return Domain::cone(a, random_word(rng, a->n, max_depth));
        case Family::Rover: return Domain::cone(a, random_word(rng, 2, max_depth));
        case Family::TreeBar: {
            Word w = random_word(rng, a->n, max_depth);
            return rng.coin() ? Domain::subtree(a, w) : Domain::tree_point(a, w);
        }
        case Family::Houghton: {
            int j = (int)rng.pick(1, a->n);
            long k = rng.pick(1, std::max(1, max_depth));
            return rng.coin() ? Domain::ray(a, j, k) : Domain::ray_point(a, j, k);
        }
        case Family::Product: {
            std::vector<Domain> comps;
            for (const auto& c : a->comps) comps.push_back(random_domain(c, rng, max_depth));
            return Domain::product(a, std::move(comps));
        }
    }
    throw std::logic_error("random_domain");
}

PartialMap random_map(const ActionPtr& a, Rng& rng, int max_depth) {
    switch (a->family) {
        case Family::V:
            return PartialMap::sigma(a, random_word(rng, a->n, max_depth), random_word(rng, a->n, max_depth));
        case Family::Rover:
            return PartialMap::grig(a, random_grig(rng, 6), random_word(rng, 2, max_depth),
                                    random_word(rng, 2, max_depth));
        case Family::TreeBar: {
            Word w1 = random_word(rng, a->n, max_depth), w2 = random_word(rng, a->n, max_depth);
            return rng.coin() ? PartialMap::sigma(a, w1, w2) : PartialMap::tau(a, w1, w2);
        }
        case Family::Houghton: {
            if (rng.coin()) {
                int j = (int)rng.pick(1, a->n);
                return PartialMap::shift(a, j, rng.pick(1, max_depth), rng.pick(1, max_depth));
            }
            return PartialMap::tau_point(a, (int)rng.pick(1, a->n), rng.pick(1, max_depth),
                                         (int)rng.pick(1, a->n), rng.pick(1, max_depth));
        }
        case Family::Product: {
            std::vector<PartialMap> comps;
            for (const auto& c : a->comps) comps.push_back(random_map(c, rng, max_depth));
            return PartialMap::tuple(a, std::move(comps));
        }
    }
    throw std::logic_error("random_map");
}

std::vector<Domain> random_split_partition(const ActionPtr& a, const Domain& base, Rng& rng, int steps) {
    std::vector<Domain> pieces{base};
    for (int s = 0; s < steps; ++s) {
        std::vector<size_t> splittable;
        for (size_t i = 0; i < pieces.size(); ++i)
            if (has_proper_subdomain(pieces[i])) splittable.push_back(i);
        if (splittable.empty()) break;
        size_t at = splittable[(size_t)rng.pick(0, (long)splittable.size() - 1)];
        Domain d = pieces[at];
        std::vector<Domain> parts;
        if (d.kind == DomainKind::Product) {
            std::vector<size_t> coords;
            for (size_t j = 0; j < d.comps.size(); ++j)
                if (has_proper_subdomain(d.comps[j])) coords.push_back(j);
            parts = coordinate_split(d, coords[(size_t)rng.pick(0, (long)coords.size() - 1)]);
        } else {
            parts = maximal_partition(d);
        }
        pieces.erase(pieces.begin() + (long)at);
        pieces.insert(pieces.end(), parts.begin(), parts.end());
    }
    std::sort(pieces.begin(), pieces.end());
    return pieces;
}

namespace {

std::vector<Domain> random_partition_of_x(const ActionPtr& a, Rng& rng, int steps) {
    std::vector<Domain> pieces = root_partition(a);
    if (steps > 0) {
        // split the multi-root union by splitting pieces independently
        std::vector<Domain> out;
        int remaining = steps;
        for (size_t i = 0; i < pieces.size(); ++i) {
            int s = (i + 1 == pieces.size()) ? remaining : (int)rng.pick(0, remaining);
            remaining -= s;
            auto sub = random_split_partition(a, pieces[i], rng, s);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        pieces = std::move(out);
    }
    std::sort(pieces.begin(), pieces.end());
    return pieces;
}

std::map<int, std::vector<Domain>> by_type(const std::vector<Domain>& pieces) {
    std::map<int, std::vector<Domain>> out;
    for (const auto& d : pieces) out[domain_type_of(d)].push_back(d);
    return out;
}

PartialMap random_piece_map(const ActionPtr& a, const Domain& d, const Domain& e, Rng& rng) {
    PartialMap base = prefix_map_between(d, e);
    if (a->family == Family::Rover && rng.coin(0.7)) {
        // random twist keeps the piece inside S_R but outside the structure set
        return PartialMap::grig(a, grig_multiply(random_grig(rng, 4), base.g), base.w1, base.w2);
    }
    return base;
}

}  // namespace

GammaElement random_gamma_full(const ActionPtr& a, Rng& rng, int steps) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto p1 = random_partition_of_x(a, rng, steps);
        auto p2 = random_partition_of_x(a, rng, steps);
        auto t1 = by_type(p1), t2 = by_type(p2);
        bool match = t1.size() == t2.size();
        if (match)
            for (const auto& [ty, ds] : t1)
                if (!t2.count(ty) || t2[ty].size() != ds.size()) {
                    match = false;
                    break;
                }
        if (!match) continue;
        std::vector<PartialMap> pieces;
        for (auto& [ty, srcs] : t1) {
            auto& tgts = t2[ty];
            std::shuffle(tgts.begin(), tgts.end(), rng.eng);
            for (size_t i = 0; i < srcs.size(); ++i)
                pieces.push_back(random_piece_map(a, srcs[i], tgts[i], rng));
        }
        return make_gamma(a, std::move(pieces));
    }
    throw std::logic_error("random_gamma_full: could not match partition types");
}

GammaElement random_gamma_partial(const ActionPtr& a, Rng& rng, int steps) {
    auto p1 = random_partition_of_x(a, rng, steps);
    // random non-empty subset of the pieces
    std::vector<Domain> srcs;
    for (const auto& d : p1)
        if (rng.coin(0.6)) srcs.push_back(d);
    if (srcs.empty()) srcs.push_back(rng.choose(p1));
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<PartialMap> pieces;
        std::vector<Domain> tgts;
        bool ok = true;
        for (const auto& d : srcs) {
            Domain e;
            bool found = false;
            for (int tries = 0; tries < 32; ++tries) {
                e = random_domain(a, rng, 4);
                if (e.empty() || domain_type_of(e) != domain_type_of(d)) continue;
                bool disjoint = true;
                for (const auto& t : tgts)
                    if (!intersect_domains(t, e).empty()) disjoint = false;
                if (disjoint) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                ok = false;
                break;
            }
            tgts.push_back(e);
            pieces.push_back(random_piece_map(a, d, e, rng));
        }
        if (ok) return make_gamma(a, std::move(pieces));
    }
    throw std::logic_error("random_gamma_partial: could not build disjoint targets");
}

}  // namespace locdet
