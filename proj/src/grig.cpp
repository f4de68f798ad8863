#include "locdet/grig.hpp"

#include <stdexcept>

namespace locdet {

namespace {

bool is_klein(char c) { return c == 'b' || c == 'c' || c == 'd'; }

// bc = d, bd = c, cd = b (commuting involutions).
char klein_product(char x, char y) {
    if (x == y) return 0;
    char s = char('b' + 'c' + 'd' - x - y);
    return s;
}

}  // namespace

std::string GrigWord::reduce(const std::string& raw) {
    std::string stack;
    for (char c : raw) {
        if (c != 'a' && !is_klein(c)) throw std::invalid_argument("bad Grigorchuk letter");
        char cur = c;
        while (cur != 0 && !stack.empty()) {
            char top = stack.back();
            if (top == 'a' && cur == 'a') {
                stack.pop_back();
                cur = 0;
            } else if (is_klein(top) && is_klein(cur)) {
                stack.pop_back();
                cur = klein_product(top, cur);  // 0 when equal letters cancel
            } else {
                break;
            }
        }
        if (cur != 0) stack.push_back(cur);
    }
    return stack;
}

GrigWord grig_multiply(const GrigWord& g, const GrigWord& h) {
    return GrigWord(g.letters + h.letters);
}

GrigWord grig_inverse(const GrigWord& g) {
    std::string rev(g.letters.rbegin(), g.letters.rend());
    return GrigWord(rev);
}

bool grig_top_swap(const GrigWord& g) {
    int n = 0;
    for (char c : g.letters)
        if (c == 'a') ++n;
    return (n % 2) != 0;
}

namespace {

// Section of a single generator at x, plus whether it swaps level 1.
// a: swap, sections (1,1); b = (a,c); c = (a,d); d = (1,b).
std::pair<std::string, bool> gen_section(char gen, int x) {
    switch (gen) {
        case 'a': return {"", true};
        case 'b': return {x == 0 ? "a" : "c", false};
        case 'c': return {x == 0 ? "a" : "d", false};
        case 'd': return {x == 0 ? "" : "b", false};
    }
    throw std::logic_error("gen_section");
}

}  // namespace

std::pair<GrigWord, bool> grig_section(const GrigWord& g, int x) {
    // g = l_0 l_1 ... l_{m-1}, rightmost acts first.
    std::string out;
    int cur = x;
    std::string parts;  // built right-to-left, prepended
    for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
        auto [sec, sw] = gen_section(*it, cur);
        parts = sec + parts;
        if (sw) cur = 1 - cur;
    }
    return {GrigWord(parts), grig_top_swap(g)};
}

GrigWord grig_section_at(const GrigWord& g, const Word& path) {
    GrigWord cur = g;
    for (uint8_t b : path.letters) cur = grig_section(cur, b).first;
    return cur;
}

bool grig_is_identity(const GrigWord& g) {
    if (g.letters.empty()) return true;
    if (grig_top_swap(g)) return false;
    if (g.letters.size() == 1) return false;  // b, c, d act non-trivially
    return grig_is_identity(grig_section(g, 0).first) && grig_is_identity(grig_section(g, 1).first);
}

bool grig_equal(const GrigWord& g, const GrigWord& h) {
    return grig_is_identity(grig_multiply(g, grig_inverse(h)));
}

Word grig_apply(const GrigWord& g, const Word& u) {
    if (u.alphabet != 2) throw std::invalid_argument("grig_apply needs binary words");
    Word out(2, {});
    GrigWord cur = g;
    for (uint8_t b : u.letters) {
        uint8_t img = grig_top_swap(cur) ? uint8_t(1 - b) : b;
        out.letters.push_back(img);
        cur = grig_section(cur, b).first;
    }
    return out;
}

}  // namespace locdet
