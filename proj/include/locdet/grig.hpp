#ifndef LOCDET_GRIG_HPP
#define LOCDET_GRIG_HPP

#include <string>
#include <utility>

#include "locdet/word.hpp"

namespace locdet {

// Words in the generators {a,b,c,d} of Grigorchuk's first group, stored
// reduced with respect to a^2 = b^2 = c^2 = d^2 = 1 and the Klein-group
// relations bc = cb = d, bd = db = c, cd = dc = b. Reduced words strictly
// alternate between 'a' and {b,c,d}-letters. Composition order: the
// rightmost letter acts first. "1" denotes the identity word.
struct GrigWord {
    std::string letters;  // reduced

    GrigWord() = default;
    explicit GrigWord(const std::string& raw) : letters(reduce(raw)) {}

    static std::string reduce(const std::string& raw);
    static GrigWord identity() { return GrigWord(); }
    static GrigWord parse(const std::string& text) {
        if (text == "1" || text.empty()) return GrigWord();
        return GrigWord(text);
    }

    bool is_empty_word() const { return letters.empty(); }
    std::string text() const { return letters.empty() ? "1" : letters; }

    friend bool operator==(const GrigWord& x, const GrigWord& y) { return x.letters == y.letters; }
    friend bool operator!=(const GrigWord& x, const GrigWord& y) { return !(x == y); }
    friend bool operator<(const GrigWord& x, const GrigWord& y) { return x.letters < y.letters; }
};

GrigWord grig_multiply(const GrigWord& g, const GrigWord& h);
GrigWord grig_inverse(const GrigWord& g);

// Whether g swaps the two level-1 subtrees (parity of 'a' letters).
bool grig_top_swap(const GrigWord& g);

// Section of g at the level-1 vertex x in {0,1}, and the top swap flag:
// g(x u) = (swap ? ~x : x) . section_x(g)(u).
std::pair<GrigWord, bool> grig_section(const GrigWord& g, int x);

// Iterated section at a finite binary word.
GrigWord grig_section_at(const GrigWord& g, const Word& path);

// Word problem via the contracting recursion: sections strictly shorten,
// so the recursion terminates.
bool grig_is_identity(const GrigWord& g);
bool grig_equal(const GrigWord& g, const GrigWord& h);

// Level-preserving action on finite binary words.
Word grig_apply(const GrigWord& g, const Word& u);

}  // namespace locdet

#endif
