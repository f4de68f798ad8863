#ifndef LOCDET_GAMMA_HPP
#define LOCDET_GAMMA_HPP

#include <optional>
#include <string>
#include <vector>

#include "locdet/action.hpp"

namespace locdet {

// A partial bijection locally determined by S: a finite disjoint union of
// S-elements. Pieces are kept in canonical form: the canonical cell
// decomposition of the domain region, each cell carrying the unique
// S-element the function restricts to there. Canonical form depends only
// on the function, not on the presentation it was built from, so equality
// is text equality.
struct GammaElement {
    ActionPtr action;
    std::vector<PartialMap> pieces;  // canonical, sorted by source text

    bool zero() const { return pieces.empty(); }
    std::string text() const;
    static GammaElement parse(const ActionPtr& a, const std::string& text);

    Region dom_region() const;
    Region im_region() const;
};

// Canonicalizes a presentation. Pieces must be non-zero with pairwise
// disjoint sources and pairwise disjoint targets.
GammaElement make_gamma(const ActionPtr& a, std::vector<PartialMap> pieces);
GammaElement gamma_identity_on(const ActionPtr& a, const Region& region);

GammaElement gamma_compose(const GammaElement& g, const GammaElement& h);  // g after h
GammaElement gamma_invert(const GammaElement& g);
GammaElement gamma_restrict(const GammaElement& g, const Domain& d);
GammaElement gamma_restrict_region(const GammaElement& g, const Region& r);
bool gamma_equal(const GammaElement& g, const GammaElement& h);
// Independent equality route: refine both to a common partition and compare
// pieces pairwise (used by tests to cross-check canonical-text equality).
bool gamma_equal_by_refinement(const GammaElement& g, const GammaElement& h);

Region gamma_image_of(const GammaElement& g, const Domain& d);  // d within dom region
bool gamma_defined_on(const GammaElement& g, const Region& r);
// Whether g is a bijection of the whole of X.
bool gamma_is_full(const GammaElement& g);

// The single S-element the function restricts to on cell, if any.
// cell must be inside the domain region.
std::optional<PartialMap> gamma_single_map_on(const GammaElement& g, const Domain& cell);

}  // namespace locdet

#endif
