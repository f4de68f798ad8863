#ifndef LOCDET_WORD_HPP
#define LOCDET_WORD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace locdet {

// Finite word over the alphabet {0, ..., alphabet-1}. The empty word is
// printed as "e" everywhere (CLI convention).
struct Word {
    int alphabet = 2;
    std::vector<uint8_t> letters;

    Word() = default;
    Word(int n, std::vector<uint8_t> ls) : alphabet(n), letters(std::move(ls)) {
        for (uint8_t b : letters)
            if (b >= alphabet) throw std::invalid_argument("word letter out of range");
    }

    static Word parse(int alphabet, const std::string& text);

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    bool is_prefix_of(const Word& other) const {
        if (letters.size() > other.letters.size()) return false;
        for (size_t i = 0; i < letters.size(); ++i)
            if (letters[i] != other.letters[i]) return false;
        return true;
    }
    bool is_suffix_of(const Word& other) const {
        if (letters.size() > other.letters.size()) return false;
        size_t off = other.letters.size() - letters.size();
        for (size_t i = 0; i < letters.size(); ++i)
            if (letters[i] != other.letters[off + i]) return false;
        return true;
    }

    // this = w concatenated with the returned suffix, when w is a prefix.
    Word suffix_after(const Word& prefix) const {
        if (!prefix.is_prefix_of(*this)) throw std::logic_error("suffix_after: not a prefix");
        return Word(alphabet, std::vector<uint8_t>(letters.begin() + prefix.size(), letters.end()));
    }
    Word drop_suffix(const Word& suffix) const {
        if (!suffix.is_suffix_of(*this)) throw std::logic_error("drop_suffix: not a suffix");
        return Word(alphabet, std::vector<uint8_t>(letters.begin(), letters.end() - suffix.size()));
    }
    Word concat(const Word& tail) const {
        Word out = *this;
        out.letters.insert(out.letters.end(), tail.letters.begin(), tail.letters.end());
        return out;
    }
    Word child(uint8_t letter) const {
        Word out = *this;
        out.letters.push_back(letter);
        return out;
    }

    std::string text() const {
        if (letters.empty()) return "e";
        std::string s;
        s.reserve(letters.size());
        for (uint8_t b : letters) s.push_back(char('0' + b));
        return s;
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.alphabet == b.alphabet && a.letters == b.letters;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) {
        return a.letters < b.letters;
    }
};

inline Word Word::parse(int alphabet, const std::string& text) {
    Word w;
    w.alphabet = alphabet;
    if (text == "e" || text.empty()) return w;
    for (char c : text) {
        if (c < '0' || c >= char('0' + alphabet))
            throw std::invalid_argument("bad word letter '" + std::string(1, c) + "'");
        w.letters.push_back(uint8_t(c - '0'));
    }
    return w;
}

}  // namespace locdet

#endif
