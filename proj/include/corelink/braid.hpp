#pragma once

// Classical and welded braid words, core-group label propagation through
// crossings, and presentations of the associated core group of a braid
// closure.
//
// Label convention: scanning the braid left to right with labels
// (x_1, ..., x_n) on the initial arcs, a classical crossing at positions
// (k, k+1) carrying labels (a, b) produces (a b^{-1} a, a): the strand
// entering at position k passes over and keeps its label, the strand
// entering at position k+1 dives under and its arc ends, and the crossing
// relation y x^{-1} y z^{-1} names the emerging arc z = a b^{-1} a. The
// relation does not distinguish the two under-arcs, so the sign of a
// classical letter does not change the transformation. A virtual crossing
// only swaps the two labels.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corelink/errors.hpp"
#include "corelink/words.hpp"

namespace corelink {

enum class LetterKind : std::uint8_t { classical, virtual_swap };

struct BraidLetter {
    LetterKind kind = LetterKind::classical;
    std::uint32_t position = 1; // 1 <= position <= strands - 1
    bool inverse = false;       // only meaningful for classical letters

    friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

class BraidWord {
public:
    explicit BraidWord(std::uint32_t strands, std::vector<BraidLetter> letters = {})
        : strands_(strands), letters_(std::move(letters)) {
        if (strands_ < 1) {
            throw std::invalid_argument("braid needs at least one strand");
        }
        for (const BraidLetter& l : letters_) {
            if (l.position < 1 || l.position >= strands_) {
                throw std::out_of_range("braid letter position " + std::to_string(l.position) +
                                        " out of range for " + std::to_string(strands_) + " strands");
            }
        }
    }

    std::uint32_t strands() const noexcept { return strands_; }
    const std::vector<BraidLetter>& letters() const noexcept { return letters_; }

    friend bool operator==(const BraidWord&, const BraidWord&) = default;

private:
    std::uint32_t strands_;
    std::vector<BraidLetter> letters_;
};

// Group presentation: generators x_1..x_m and a list of freely reduced,
// non-identity relators over them.
class Presentation {
public:
    explicit Presentation(std::uint32_t generators, std::vector<GroupWord> relators = {})
        : generators_(generators) {
        if (generators_ < 1) {
            throw std::invalid_argument("presentation needs at least one generator");
        }
        relators_.reserve(relators.size());
        for (GroupWord& r : relators) {
            if (r.empty()) continue; // identity relators are omitted
            if (r.max_index() > generators_) {
                throw std::out_of_range("relator letter index exceeds generator count");
            }
            relators_.push_back(std::move(r));
        }
    }

    std::uint32_t generators() const noexcept { return generators_; }
    const std::vector<GroupWord>& relators() const noexcept { return relators_; }

    friend bool operator==(const Presentation&, const Presentation&) = default;

private:
    std::uint32_t generators_;
    std::vector<GroupWord> relators_;
};

// Grammar (tokens may be separated by whitespace):
//   letter := INT | "v" INT          INT != 0; positive = sigma, negative = sigma^-1
//   group  := "(" letter+ ")" "^" INT     with repetition INT >= 1
//   braid  := (letter | group)*
// Strand count is supplied separately; every position must be < strands.
inline BraidWord parse_braid(std::string_view text, std::uint32_t strands) {
    if (strands < 1) {
        throw std::invalid_argument("braid needs at least one strand");
    }
    std::vector<BraidLetter> letters;
    std::vector<BraidLetter> group;
    bool in_group = false;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_uint = [&](const char* what) -> std::uint64_t {
        const std::size_t at = i;
        std::uint64_t v = 0;
        if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw parse_error(std::string("expected ") + what, at);
        }
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (v > 1'000'000'000ULL) {
                throw parse_error(std::string(what) + " out of range", at);
            }
            ++i;
        }
        return v;
    };
    auto check_position = [&](std::uint64_t pos, std::size_t at) -> std::uint32_t {
        if (pos < 1 || pos >= strands) {
            throw parse_error("strand index " + std::to_string(pos) + " out of range for " +
                                  std::to_string(strands) + " strands",
                              at);
        }
        return static_cast<std::uint32_t>(pos);
    };

    while (true) {
        skip_ws();
        if (i >= n) break;
        const std::size_t at = i;
        const char c = text[i];
        if (c == '(') {
            if (in_group) throw parse_error("repetition groups cannot nest", at);
            in_group = true;
            group.clear();
            ++i;
        } else if (c == ')') {
            if (!in_group) throw parse_error("unmatched ')'", at);
            if (group.empty()) throw parse_error("empty repetition group", at);
            ++i;
            skip_ws();
            if (i >= n || text[i] != '^') throw parse_error("expected '^' after ')'", i);
            ++i;
            skip_ws();
            bool neg = false;
            if (i < n && (text[i] == '-' || text[i] == '+')) {
                neg = (text[i] == '-');
                ++i;
            }
            const std::size_t exp_at = i;
            std::uint64_t k = parse_uint("repetition exponent");
            if (neg || k < 1) throw parse_error("repetition exponent must be >= 1", exp_at);
            for (std::uint64_t rep = 0; rep < k; ++rep) {
                letters.insert(letters.end(), group.begin(), group.end());
            }
            in_group = false;
        } else if (c == 'v') {
            ++i;
            std::uint32_t pos = check_position(parse_uint("strand index after 'v'"), at);
            (in_group ? group : letters).push_back({LetterKind::virtual_swap, pos, false});
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            bool neg = (c == '-');
            if (neg) ++i;
            std::uint32_t pos = check_position(parse_uint("strand index"), at);
            (in_group ? group : letters).push_back({LetterKind::classical, pos, neg});
        } else {
            throw parse_error(std::string("unexpected character '") + c + "'", at);
        }
    }
    if (in_group) throw parse_error("unterminated repetition group", n);
    return BraidWord(strands, std::move(letters));
}

// Terminal arc labels (Q_1, ..., Q_n) of the braid, starting from
// (x_1, ..., x_n).
inline std::vector<GroupWord> propagate_labels(const BraidWord& b) {
    std::vector<GroupWord> labels;
    labels.reserve(b.strands());
    for (std::uint32_t i = 1; i <= b.strands(); ++i) {
        labels.emplace_back(std::vector<std::int32_t>{static_cast<std::int32_t>(i)});
    }
    for (const BraidLetter& l : b.letters()) {
        GroupWord& a = labels[l.position - 1];
        GroupWord& bb = labels[l.position];
        if (l.kind == LetterKind::virtual_swap) {
            std::swap(a, bb);
        } else {
            GroupWord under = concat(concat(a, invert(bb)), a);
            bb = a;
            a = std::move(under);
        }
    }
    return labels;
}

// Core group of the braid closure on the strand generators:
// <x_1,...,x_n | Q_i x_i^{-1}>, with identity relators dropped.
inline Presentation closure_presentation(const BraidWord& b) {
    std::vector<GroupWord> relators;
    std::vector<GroupWord> labels = propagate_labels(b);
    relators.reserve(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        relators.push_back(
            concat(labels[i], GroupWord(std::vector<std::int32_t>{-static_cast<std::int32_t>(i + 1)})));
    }
    return Presentation(b.strands(), std::move(relators));
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

// Core group of the closure with one generator per diagram arc and one
// length-4 relator y x^{-1} y z^{-1} per classical crossing. Closing the
// braid identifies each strand's initial and terminal arc.
inline Presentation arc_level_presentation(const BraidWord& b) {
    const std::uint32_t n = b.strands();
    std::size_t next_arc = n;
    std::vector<std::size_t> cur(n);
    std::iota(cur.begin(), cur.end(), std::size_t{0});

    struct Crossing {
        std::size_t over, under_in, under_out;
    };
    std::vector<Crossing> crossings;
    for (const BraidLetter& l : b.letters()) {
        std::size_t& a = cur[l.position - 1];
        std::size_t& bb = cur[l.position];
        if (l.kind == LetterKind::virtual_swap) {
            std::swap(a, bb);
        } else {
            const std::size_t z = next_arc++;
            crossings.push_back({a, bb, z});
            bb = a;
            a = z;
        }
    }

    detail::DisjointSets dsu(next_arc);
    for (std::uint32_t i = 0; i < n; ++i) {
        dsu.unite(i, cur[i]);
    }
    // compress representatives to 1..m in increasing order
    std::vector<std::int32_t> gen_of(next_arc, 0);
    std::int32_t m = 0;
    for (std::size_t a = 0; a < next_arc; ++a) {
        if (dsu.find(a) == a) gen_of[a] = ++m;
    }
    auto gen = [&](std::size_t a) { return gen_of[dsu.find(a)]; };

    std::vector<GroupWord> relators;
    relators.reserve(crossings.size());
    for (const Crossing& c : crossings) {
        const std::int32_t y = gen(c.over), x = gen(c.under_in), z = gen(c.under_out);
        relators.push_back(GroupWord(std::vector<std::int32_t>{y, -x, y, -z}));
    }
    return Presentation(static_cast<std::uint32_t>(m), std::move(relators));
}

// Inserts p copies of the classical letter sigma_k^{sign} at the given
// letter index. The closure of the result is p-move equivalent to the
// closure of b.
inline BraidWord insert_p_move(const BraidWord& b, std::size_t position, std::uint32_t k,
                               bool inverse, std::uint32_t p) {
    if (position > b.letters().size()) {
        throw std::out_of_range("insertion index out of range");
    }
    if (k < 1 || k >= b.strands()) {
        throw std::out_of_range("strand index out of range");
    }
    if (p < 1) {
        throw std::invalid_argument("twist count must be >= 1");
    }
    std::vector<BraidLetter> letters = b.letters();
    letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(position), p,
                   BraidLetter{LetterKind::classical, k, inverse});
    return BraidWord(b.strands(), std::move(letters));
}

} // namespace corelink
