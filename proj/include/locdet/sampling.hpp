#ifndef LOCDET_SAMPLING_HPP
#define LOCDET_SAMPLING_HPP

#include <random>

#include "locdet/action.hpp"
#include "locdet/gamma.hpp"

namespace locdet {

// Seeded sampling helpers. All CLI verification paths draw through this so
// fixed seeds give byte-identical runs.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    long pick(long lo, long hi) {  // inclusive
        return lo + (long)(eng() % (uint64_t)(hi - lo + 1));
    }
    bool coin(double p = 0.5) { return (eng() >> 11) * 0x1.0p-53 < p; }
    template <class T>
    const T& choose(const std::vector<T>& xs) {
        return xs[(size_t)pick(0, (long)xs.size() - 1)];
    }
};

Word random_word(Rng& rng, int alphabet, int max_len);
Domain random_domain(const ActionPtr& a, Rng& rng, int max_depth);
// Random element of S with the given source-domain type possibilities;
// for Rover the twist is a random short word.
PartialMap random_map(const ActionPtr& a, Rng& rng, int max_depth);
GrigWord random_grig(Rng& rng, int max_len);

// Random partition of `base` obtained by repeated canonical splits
// (maximal partitions; for bricks random single-coordinate splits).
std::vector<Domain> random_split_partition(const ActionPtr& a, const Domain& base, Rng& rng, int steps);

// Random element of Gamma_S (bijection of X) with about `steps` pieces.
GammaElement random_gamma_full(const ActionPtr& a, Rng& rng, int steps);
// Random partial element of S-hat defined on a random region.
GammaElement random_gamma_partial(const ActionPtr& a, Rng& rng, int steps);

}  // namespace locdet

#endif
