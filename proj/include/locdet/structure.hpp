#ifndef LOCDET_STRUCTURE_HPP
#define LOCDET_STRUCTURE_HPP

#include <string>
#include <vector>

#include "locdet/action.hpp"
#include "locdet/gamma.hpp"
#include "locdet/sampling.hpp"

namespace locdet {

enum class StructureKind { Maximal, Rover, ProductBrin };

// Structure function S and pattern function P for a registered action.
// Maximal is legal on the singleton-structure CUP families (V, TreeBar,
// Houghton); the Rover kind carries the four-element structure sets; product
// actions use the maximal structure componentwise with Brin patterns.
struct SStructure {
    ActionPtr action;
    StructureKind kind;
    int type_count = 1;
    std::vector<Domain> transversal;  // one per type id

    static SStructure make(const ActionPtr& a, StructureKind kind);
    static SStructure parse(const ActionPtr& a, const std::string& kind_name);  // maximal|rover|brin
    std::string kind_name() const;

    int type_of(const Domain& d) const { return domain_type_of(d); }
    const Domain& transversal_of(int type_id) const { return transversal.at((size_t)type_id); }

    std::vector<PartialMap> structure_set(const Domain& d1, const Domain& d2) const;
    // The group S(D,D), as maps.
    std::vector<PartialMap> structure_group(const Domain& d) const;
    bool in_structure_set(const PartialMap& m) const;
    // Whether the function g restricted to `cell` lies in S(cell, image).
    bool gamma_piece_in_structure(const GammaElement& g, const Domain& cell) const;

    bool is_pattern(const Partition& p) const;
    Partition refine_to_pattern(const Partition& p) const;
    // Witness for the generation axiom (S5): a pattern of dom(f) each of
    // whose pieces carries a single structure-set element of f.
    Partition generation_witness(const GammaElement& f) const;

    Partition random_pattern(const Domain& d, Rng& rng, int steps) const;
};

struct AxiomResult {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct VerifyOptions {
    int samples = 200;
    uint64_t seed = 1;
    int max_depth = 3;
    // negative controls
    bool corrupt_drop_identity = false;     // breaks (S2)
    bool corrupt_shrink_patterns = false;   // breaks (P5)/cofinality checks
};

std::vector<AxiomResult> verify_sstructure_axioms(const SStructure& ss, const VerifyOptions& opt);
bool all_pass(const std::vector<AxiomResult>& rep);

}  // namespace locdet

#endif
