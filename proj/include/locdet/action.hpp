#ifndef LOCDET_ACTION_HPP
#define LOCDET_ACTION_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locdet/grig.hpp"
#include "locdet/word.hpp"

namespace locdet {

struct Action;
using ActionPtr = std::shared_ptr<const Action>;

enum class Family { V, TreeBar, Houghton, Rover, Product };

// A registered inverse semigroup action. Immutable after construction.
struct Action {
    Family family;
    int n = 2;  // alphabet size (V, TreeBar) or number of trays (Houghton)
    std::vector<ActionPtr> comps;  // Product only
    std::string name;              // canonical CLI name, doubles as action_id
    bool cup = false;              // compact ultrametric property

    static ActionPtr make_v(int n);
    static ActionPtr make_treebar(int n);  // TreeBar(2) is QV
    static ActionPtr make_houghton(int n);
    static ActionPtr make_rover();
    static ActionPtr make_product(std::vector<ActionPtr> comps);
    static ActionPtr parse(const std::string& spec);  // "V2", "QV", "Qbar1", "H3", "ROVER", "prod(...)"

    bool is_product() const { return family == Family::Product; }
    size_t arity() const { return is_product() ? comps.size() : 1; }
};

inline void require_same_action(const ActionPtr& a, const ActionPtr& b) {
    if (a->name != b->name) throw std::invalid_argument("mismatched action_id: " + a->name + " vs " + b->name);
}

enum class DomainKind {
    Empty,
    Cone,         // B:w  (V, Rover) — infinite strings with prefix w
    TreeSubtree,  // T:w  (TreeBar) — finite words with prefix w
    TreePoint,    // Pt:w (TreeBar) — the single word w
    Ray,          // R:j,k (Houghton) — {j} x {k, k+1, ...}, k >= 1
    RayPoint,     // P:j,k (Houghton)
    Product,      // brick of component domains
};

struct Domain {
    ActionPtr action;
    DomainKind kind = DomainKind::Empty;
    Word w;
    int tray = 0;
    long k = 0;
    std::vector<Domain> comps;

    bool empty() const { return kind == DomainKind::Empty; }
    std::string text() const;
    static Domain parse(const ActionPtr& a, const std::string& text);

    static Domain make_empty(const ActionPtr& a) {
        Domain d;
        d.action = a;
        return d;
    }
    static Domain cone(const ActionPtr& a, Word w) {
        Domain d;
        d.action = a;
        d.kind = DomainKind::Cone;
        d.w = std::move(w);
        return d;
    }
    static Domain subtree(const ActionPtr& a, Word w) {
        Domain d;
        d.action = a;
        d.kind = DomainKind::TreeSubtree;
        d.w = std::move(w);
        return d;
    }
    static Domain tree_point(const ActionPtr& a, Word w) {
        Domain d;
        d.action = a;
        d.kind = DomainKind::TreePoint;
        d.w = std::move(w);
        return d;
    }
    static Domain ray(const ActionPtr& a, int tray, long k) {
        Domain d;
        d.action = a;
        d.kind = DomainKind::Ray;
        d.tray = tray;
        d.k = k;
        return d;
    }
    static Domain ray_point(const ActionPtr& a, int tray, long k) {
        Domain d;
        d.action = a;
        d.kind = DomainKind::RayPoint;
        d.tray = tray;
        d.k = k;
        return d;
    }
    // Normalizes: any empty component makes the whole brick empty.
    static Domain product(const ActionPtr& a, std::vector<Domain> comps);

    friend bool operator==(const Domain& x, const Domain& y) { return x.text() == y.text() && x.action->name == y.action->name; }
    friend bool operator!=(const Domain& x, const Domain& y) { return !(x == y); }
    friend bool operator<(const Domain& x, const Domain& y) { return x.text() < y.text(); }
};

enum class MapRule {
    Zero,
    Sigma,  // prefix replacement (cones for V, subtrees for TreeBar)
    Tau,    // singleton move: TreeBar (words) or Houghton (points)
    Shift,  // Houghton ray shift, tray-preserving
    Grig,   // Rover: sigma_{e,w2} g sigma_{w1,e}; g == 1 is the plain prefix map
    Tuple,
};

struct PartialMap {
    ActionPtr action;
    MapRule rule = MapRule::Zero;
    Word w1, w2;        // Sigma / Grig / Tau(TreeBar)
    GrigWord g;         // Grig
    int tray1 = 0, tray2 = 0;
    long k1 = 0, k2 = 0;  // Shift: R:tray1,k1 -> R:tray1,k2 ; Tau(Houghton): (tray1,k1)->(tray2,k2)
    std::vector<PartialMap> comps;

    bool zero() const { return rule == MapRule::Zero; }
    std::string text() const;
    static PartialMap parse(const ActionPtr& a, const std::string& text);

    static PartialMap make_zero(const ActionPtr& a) {
        PartialMap m;
        m.action = a;
        return m;
    }
    static PartialMap sigma(const ActionPtr& a, Word w1, Word w2) {
        PartialMap m;
        m.action = a;
        m.rule = MapRule::Sigma;
        m.w1 = std::move(w1);
        m.w2 = std::move(w2);
        return m;
    }
    static PartialMap tau(const ActionPtr& a, Word w1, Word w2) {
        PartialMap m;
        m.action = a;
        m.rule = MapRule::Tau;
        m.w1 = std::move(w1);
        m.w2 = std::move(w2);
        return m;
    }
    static PartialMap tau_point(const ActionPtr& a, int j1, long k1, int j2, long k2) {
        PartialMap m;
        m.action = a;
        m.rule = MapRule::Tau;
        m.tray1 = j1;
        m.k1 = k1;
        m.tray2 = j2;
        m.k2 = k2;
        return m;
    }
    static PartialMap shift(const ActionPtr& a, int j, long k1, long k2) {
        PartialMap m;
        m.action = a;
        m.rule = MapRule::Shift;
        m.tray1 = m.tray2 = j;
        m.k1 = k1;
        m.k2 = k2;
        return m;
    }
    static PartialMap grig(const ActionPtr& a, GrigWord g, Word w1, Word w2) {
        PartialMap m;
        m.action = a;
        m.rule = MapRule::Grig;
        m.g = std::move(g);
        m.w1 = std::move(w1);
        m.w2 = std::move(w2);
        return m;
    }
    // Normalizes: any zero component makes the tuple zero (Rees quotient).
    static PartialMap tuple(const ActionPtr& a, std::vector<PartialMap> comps);

    friend bool operator==(const PartialMap& x, const PartialMap& y) { return x.text() == y.text() && x.action->name == y.action->name; }
    friend bool operator!=(const PartialMap& x, const PartialMap& y) { return !(x == y); }
    friend bool operator<(const PartialMap& x, const PartialMap& y) { return x.text() < y.text(); }
};

// ---- domain calculus ----

Domain intersect_domains(const Domain& d1, const Domain& d2);
bool is_subdomain(const Domain& d1, const Domain& d2);  // d1 subset of d2 (Empty always)

Domain source_of(const PartialMap& m);
Domain target_of(const PartialMap& m);

PartialMap identity_on(const Domain& d);
bool is_identity_map(const PartialMap& m);
PartialMap invert(const PartialMap& m);
PartialMap restrict_map(const PartialMap& m, const Domain& d);  // pre: d subset of source
Domain translate(const PartialMap& m, const Domain& d);         // image m(d)
PartialMap compose(const PartialMap& s, const PartialMap& t);   // s after t

// Maximal partition P_D of a CUP domain. Products throw.
std::vector<Domain> maximal_partition(const Domain& d);
bool has_proper_subdomain(const Domain& d);
// Pieces of the one-coordinate split P_{D_{j}} of a product brick (or the
// whole-domain singleton when coordinate j has no proper subdomain).
std::vector<Domain> coordinate_split(const Domain& d, size_t j);
// Canonical one-level refinement used by canonicalization: the maximal
// partition for CUP families, the meet of all coordinate splits for bricks.
std::vector<Domain> canonical_children(const Domain& d);

// Canonical peeling partition of E - D, for nested D within E, CUP only.
std::vector<Domain> partition_difference(const Domain& e, const Domain& d);
// Length of the longest chain D = D_1 < ... < D_m = E.
int depth_of(const Domain& d, const Domain& e);

std::vector<Domain> root_partition(const ActionPtr& a);

// Domain types (shape taxonomy): V/Rover have one type; TreeBar two
// (points first); Houghton(n) has n+1 (points first, then one per tray);
// products multiply componentwise, first coordinate most significant.
int domain_type_count(const ActionPtr& a);
int domain_type_of(const Domain& d);
// Least domain of the given type: B:e, Pt:e, T:e, P:1,1, R:j,1, products thereof.
Domain type_transversal(const ActionPtr& a, int type_id);
// The canonical prefix/shift/singleton map between two same-type domains
// (the unique maximal-structure element; for Rover the untwisted one).
PartialMap prefix_map_between(const Domain& d, const Domain& e);

struct CupReport {
    bool pass = true;
    std::string witness;  // for a nested-domains failure: the two domains
    std::string detail;
};
CupReport verify_cup(const ActionPtr& a, int depth_bound);

// All non-empty domains with description depth at most `depth`
// (word length, ray index k, per-coordinate for products).
std::vector<Domain> enumerate_domains(const ActionPtr& a, int depth);

// ---- partitions ----

struct Partition {
    Domain base;
    std::vector<Domain> pieces;  // non-empty, pairwise disjoint, covering base
};

bool pieces_pairwise_disjoint(const std::vector<Domain>& pieces);
// Whether the (pairwise disjoint, non-empty) pieces cover D exactly.
bool pieces_cover(const Domain& base, const std::vector<Domain>& pieces);
bool is_valid_partition(const Partition& p);

Partition meet(const Partition& p1, const Partition& p2);
Partition restrict_partition(const Partition& p, const Domain& y);
Partition trivial_partition(const Domain& d);

// region: a finite set of pairwise disjoint domains, canonically presented
// as the maximal canonical cells inside the union.
using Region = std::vector<Domain>;

Region canonical_region(const ActionPtr& a, const std::vector<Domain>& parts);
bool region_contains(const Region& region, const Domain& d);   // d subset of the union
bool region_subset(const Region& r1, const Region& r2);
bool regions_equal(const Region& r1, const Region& r2);
std::string region_text(const Region& r);

}  // namespace locdet

#endif
