#pragma once

// Freely reduced words in a finitely generated free group. A word is a
// sequence of nonzero signed generator indices: the letter k stands for
// x_|k| when k > 0 and x_|k|^{-1} when k < 0. All operations are pure and
// return new values; words are safe to share across threads.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "corelink/errors.hpp"

namespace corelink {

namespace detail {

// Appends a letter to a reduced prefix, cancelling an adjacent inverse pair.
inline void push_reduced(std::vector<std::int32_t>& out, std::int32_t k) {
    if (!out.empty() && out.back() == -k) {
        out.pop_back();
    } else {
        out.push_back(k);
    }
}

} // namespace detail

class GroupWord {
public:
    GroupWord() = default;

    // Freely reduces the given letter sequence. Rejects zero letters.
    explicit GroupWord(std::vector<std::int32_t> raw) {
        letters_.reserve(raw.size());
        for (std::int32_t k : raw) {
            if (k == 0 || k == std::numeric_limits<std::int32_t>::min()) {
                throw std::invalid_argument("group word letter must be nonzero and invertible");
            }
            detail::push_reduced(letters_, k);
        }
    }

    const std::vector<std::int32_t>& letters() const noexcept { return letters_; }
    bool empty() const noexcept { return letters_.empty(); }
    std::size_t size() const noexcept { return letters_.size(); }

    // Smallest generator count containing every letter of the word.
    std::uint32_t max_index() const noexcept {
        std::uint32_t m = 0;
        for (std::int32_t k : letters_) {
            std::uint32_t a = static_cast<std::uint32_t>(k < 0 ? -static_cast<std::int64_t>(k) : k);
            if (a > m) m = a;
        }
        return m;
    }

    friend bool operator==(const GroupWord&, const GroupWord&) = default;

private:
    std::vector<std::int32_t> letters_;
};

inline GroupWord reduce(std::vector<std::int32_t> raw) { return GroupWord(std::move(raw)); }

inline GroupWord invert(const GroupWord& w) {
    std::vector<std::int32_t> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        out.push_back(-*it);
    }
    return GroupWord(std::move(out));
}

inline GroupWord concat(const GroupWord& u, const GroupWord& v) {
    std::vector<std::int32_t> out = u.letters();
    out.reserve(u.size() + v.size());
    for (std::int32_t k : v.letters()) {
        detail::push_reduced(out, k);
    }
    return GroupWord(std::move(out));
}

// w^n for n >= 0.
inline GroupWord power(const GroupWord& w, std::uint32_t n) {
    GroupWord acc;
    for (std::uint32_t i = 0; i < n; ++i) {
        acc = concat(acc, w);
    }
    return acc;
}

// Signed occurrence count of each of the first m generators (the image of w
// in Z^m under abelianization).
inline std::vector<std::int64_t> exponent_sums(const GroupWord& w, std::uint32_t m) {
    std::vector<std::int64_t> sums(m, 0);
    for (std::int32_t k : w.letters()) {
        std::uint64_t a = static_cast<std::uint64_t>(k < 0 ? -static_cast<std::int64_t>(k) : k);
        if (a > m) {
            throw std::out_of_range("word letter index " + std::to_string(a) +
                                    " exceeds generator count " + std::to_string(m));
        }
        sums[a - 1] += (k > 0) ? 1 : -1;
    }
    return sums;
}

// Grammar (whitespace-separated tokens):
//   token := "x" INT | "x" INT "^-1" | SIGNED_INT      with INT >= 1
// "x1 x2^-1 x3" and "1 -2 3" denote the same word.
inline GroupWord parse_word(std::string_view text) {
    std::vector<std::int32_t> letters;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n) break;
        const std::size_t tok = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::string_view t = text.substr(tok, i - tok);

        bool neg = false;
        std::string_view digits;
        if (t.front() == 'x') {
            std::size_t end = 1;
            while (end < t.size() && std::isdigit(static_cast<unsigned char>(t[end]))) ++end;
            digits = t.substr(1, end - 1);
            std::string_view rest = t.substr(end);
            if (rest == "^-1") {
                neg = true;
            } else if (!rest.empty()) {
                throw parse_error("bad word token '" + std::string(t) + "'", tok);
            }
        } else {
            std::size_t start = 0;
            if (t.front() == '-' || t.front() == '+') {
                neg = (t.front() == '-');
                start = 1;
            }
            digits = t.substr(start);
            for (char c : digits) {
                if (!std::isdigit(static_cast<unsigned char>(c))) {
                    throw parse_error("bad word token '" + std::string(t) + "'", tok);
                }
            }
        }
        if (digits.empty()) {
            throw parse_error("bad word token '" + std::string(t) + "'", tok);
        }
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size() ||
            value > std::numeric_limits<std::int32_t>::max()) {
            throw parse_error("generator index out of range in '" + std::string(t) + "'", tok);
        }
        if (value == 0) {
            throw parse_error("generator index must be >= 1 in '" + std::string(t) + "'", tok);
        }
        letters.push_back(neg ? -static_cast<std::int32_t>(value) : static_cast<std::int32_t>(value));
    }
    return GroupWord(std::move(letters));
}

// Verbose rendering; round-trips through parse_word. Empty word renders as "".
inline std::string to_string(const GroupWord& w) {
    std::string out;
    for (std::int32_t k : w.letters()) {
        if (!out.empty()) out += ' ';
        out += 'x';
        out += std::to_string(k < 0 ? -static_cast<std::int64_t>(k) : k);
        if (k < 0) out += "^-1";
    }
    return out;
}

} // namespace corelink
