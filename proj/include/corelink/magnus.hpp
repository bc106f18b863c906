#pragma once

// Truncated power series in non-commuting variables X_1, X_2, ... with
// coefficients in Z_p, and the Magnus Z_p-expansion
//
//     E^p(x_i) = 1 + X_i,     E^p(x_i^{-1}) = 1 - X_i + X_i^2 - ...
//
// extended multiplicatively over words. Everything of degree above the
// truncation bound is discarded. Series are sparse: a sorted vector of
// (monomial, coefficient) terms with nonzero canonical coefficients, ordered
// by degree and then lexicographically by index sequence, plus a separate
// constant term. Values are immutable once built; expansions of independent
// words may run concurrently.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "corelink/errors.hpp"
#include "corelink/words.hpp"

namespace corelink {

// Index sequence of a product X_{i_1} ... X_{i_d}; the degree is the length.
// The constant term of a series is stored separately, never as an empty
// monomial.
using Monomial = std::vector<std::uint32_t>;

// Degree-then-lexicographic order; the canonical term order everywhere.
inline bool deg_lex_less(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct Term {
    Monomial mono;
    std::uint32_t coeff = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Failure threshold for stored/intermediate term counts; computations that
// would grow past the cap throw capacity_error instead of thrashing.
inline constexpr std::size_t kDefaultTermCap = 10'000'000;

class TruncatedSeries {
public:
    TruncatedSeries(std::uint32_t modulus, std::uint32_t trunc) : p_(modulus), trunc_(trunc) {
        if (!is_prime(p_)) {
            throw std::invalid_argument("series modulus " + std::to_string(p_) + " is not prime");
        }
        if (trunc_ < 1) {
            throw std::invalid_argument("truncation degree must be >= 1");
        }
    }

    // The series 1.
    static TruncatedSeries one(std::uint32_t modulus, std::uint32_t trunc) {
        TruncatedSeries s(modulus, trunc);
        s.constant_ = 1;
        return s;
    }

    // Builds a series from arbitrary (possibly unsorted, duplicated, or
    // unreduced) terms: sorts, folds duplicates mod p, prunes zeros.
    static TruncatedSeries make(std::uint32_t modulus, std::uint32_t trunc, std::uint64_t constant,
                                std::vector<Term> terms) {
        TruncatedSeries s(modulus, trunc);
        s.constant_ = static_cast<std::uint32_t>(constant % modulus);
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return deg_lex_less(a.mono, b.mono); });
        for (Term& t : terms) {
            if (t.mono.empty() || t.mono.size() > trunc) {
                throw std::invalid_argument("term degree outside [1, trunc]");
            }
            for (std::uint32_t ix : t.mono) {
                if (ix < 1) throw std::invalid_argument("monomial index must be >= 1");
            }
            if (!s.terms_.empty() && s.terms_.back().mono == t.mono) {
                s.terms_.back().coeff =
                    static_cast<std::uint32_t>((static_cast<std::uint64_t>(s.terms_.back().coeff) + t.coeff) % modulus);
            } else {
                s.terms_.push_back({std::move(t.mono), t.coeff % modulus});
            }
        }
        std::erase_if(s.terms_, [](const Term& t) { return t.coeff == 0; });
        return s;
    }

    std::uint32_t modulus() const noexcept { return p_; }
    std::uint32_t trunc() const noexcept { return trunc_; }
    std::uint32_t constant_term() const noexcept { return constant_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::uint32_t p_;
    std::uint32_t trunc_;
    std::uint32_t constant_ = 0;
    std::vector<Term> terms_;
};

namespace detail {

// Multiplies s on the right by a polynomial sum_k poly[k] * X_var^k.
//
// For each k the products {term * X_var^k} inherit the degree-lex order of
// s, so the result is a (d+2)-way merge of presorted runs; only surviving
// terms are ever materialized.
inline TruncatedSeries mul_univariate(const TruncatedSeries& s, std::uint32_t var,
                                      const std::vector<std::uint32_t>& poly, std::size_t term_cap) {
    const std::uint32_t p = s.modulus();
    const std::uint32_t trunc = s.trunc();
    const std::size_t pseudo = s.terms().size() + 1; // slot 0 is the constant

    auto slot_degree = [&](std::size_t j) -> std::uint32_t {
        return j == 0 ? 0 : static_cast<std::uint32_t>(s.terms()[j - 1].mono.size());
    };
    auto slot_coeff = [&](std::size_t j) -> std::uint32_t {
        return j == 0 ? s.constant_term() : s.terms()[j - 1].coeff;
    };

    struct Cursor {
        std::uint32_t k;
        std::size_t slot;
        Monomial key;
        std::uint32_t coeff;
    };
    auto key_of = [&](std::uint32_t k, std::size_t j) {
        Monomial key;
        key.reserve(slot_degree(j) + k);
        if (j > 0) key = s.terms()[j - 1].mono;
        key.insert(key.end(), k, var);
        return key;
    };
    auto cursor_greater = [](const Cursor& a, const Cursor& b) { return deg_lex_less(b.key, a.key); };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(cursor_greater)> heap(cursor_greater);

    auto push_cursor = [&](std::uint32_t k, std::size_t j) {
        // the first populated slot whose shifted degree still fits
        while (j < pseudo && slot_coeff(j) == 0) ++j;
        if (j >= pseudo || slot_degree(j) + k > trunc) return;
        const std::uint32_t c =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(slot_coeff(j)) * poly[k] % p);
        heap.push(Cursor{k, j, key_of(k, j), c});
    };
    for (std::uint32_t k = 0; k < poly.size() && k <= trunc; ++k) {
        if (poly[k] % p != 0) push_cursor(k, 0);
    }

    TruncatedSeries out(p, trunc);
    Monomial pending_key;
    std::uint64_t pending_coeff = 0;
    bool has_pending = false;
    std::vector<Term> out_terms;

    auto flush = [&] {
        if (!has_pending) return;
        const std::uint32_t c = static_cast<std::uint32_t>(pending_coeff % p);
        if (c != 0) {
            out_terms.push_back({std::move(pending_key), c});
            if (out_terms.size() > term_cap) {
                throw capacity_error("series term count exceeded cap of " + std::to_string(term_cap));
            }
        }
        has_pending = false;
    };

    std::uint32_t out_constant = 0;
    while (!heap.empty()) {
        Cursor cur = heap.top();
        heap.pop();
        if (cur.key.empty()) {
            out_constant = static_cast<std::uint32_t>((out_constant + cur.coeff) % p);
        } else if (has_pending && cur.key == pending_key) {
            pending_coeff += cur.coeff;
        } else {
            flush();
            pending_key = std::move(cur.key);
            pending_coeff = cur.coeff;
            has_pending = true;
        }
        push_cursor(cur.k, cur.slot + 1);
    }
    flush();

    return TruncatedSeries::make(p, trunc, out_constant, std::move(out_terms));
}

// Coefficients of E^p applied to a single letter, as a polynomial in one
// variable: 1 + X for a generator, the alternating geometric series for its
// inverse.
inline std::vector<std::uint32_t> generator_poly(bool inverse, std::uint32_t p, std::uint32_t d) {
    std::vector<std::uint32_t> poly;
    if (!inverse) {
        poly = {1, 1};
    } else {
        poly.resize(d + 1);
        for (std::uint32_t k = 0; k <= d; ++k) {
            poly[k] = (k % 2 == 0) ? 1 : p - 1;
        }
    }
    return poly;
}

} // namespace detail

// E^p image of a single letter x_i^{+-1}, truncated at degree d.
inline TruncatedSeries generator_series(std::uint32_t index, bool inverse, std::uint32_t p,
                                        std::uint32_t d) {
    if (index < 1) {
        throw std::invalid_argument("generator index must be >= 1");
    }
    TruncatedSeries base = TruncatedSeries::one(p, d); // validates p prime, d >= 1
    return detail::mul_univariate(base, index, detail::generator_poly(inverse, p, d), kDefaultTermCap);
}

// Non-commutative product, truncated. Both factors must share modulus and
// truncation degree.
inline TruncatedSeries mul(const TruncatedSeries& s, const TruncatedSeries& t,
                           std::size_t term_cap = kDefaultTermCap) {
    if (s.modulus() != t.modulus()) {
        throw std::invalid_argument("series modulus mismatch");
    }
    if (s.trunc() != t.trunc()) {
        throw std::invalid_argument("series truncation mismatch");
    }
    const std::uint32_t p = s.modulus();
    const std::uint32_t trunc = s.trunc();

    std::vector<Term> out;
    std::size_t emitted = 0;
    auto emit = [&](Monomial mono, std::uint64_t coeff) {
        if (++emitted > term_cap) {
            throw capacity_error("series term count exceeded cap of " + std::to_string(term_cap));
        }
        out.push_back({std::move(mono), static_cast<std::uint32_t>(coeff % p)});
    };

    if (s.constant_term() != 0) {
        for (const Term& tt : t.terms()) {
            emit(tt.mono, static_cast<std::uint64_t>(s.constant_term()) * tt.coeff);
        }
    }
    if (t.constant_term() != 0) {
        for (const Term& st : s.terms()) {
            emit(st.mono, static_cast<std::uint64_t>(st.coeff) * t.constant_term());
        }
    }
    for (const Term& st : s.terms()) {
        for (const Term& tt : t.terms()) {
            if (st.mono.size() + tt.mono.size() > trunc) continue;
            Monomial mono = st.mono;
            mono.insert(mono.end(), tt.mono.begin(), tt.mono.end());
            emit(std::move(mono), static_cast<std::uint64_t>(st.coeff) * tt.coeff);
        }
    }
    const std::uint64_t constant =
        static_cast<std::uint64_t>(s.constant_term()) * t.constant_term();
    return TruncatedSeries::make(p, trunc, constant, std::move(out));
}

// Magnus Z_p-expansion of a word, truncated at degree d: the ordered product
// of the letter series, evaluated left to right against an accumulator.
inline TruncatedSeries expand(const GroupWord& w, std::uint32_t p, std::uint32_t d,
                              std::size_t term_cap = kDefaultTermCap) {
    TruncatedSeries acc = TruncatedSeries::one(p, d); // validates p prime, d >= 1
    std::vector<std::uint32_t> pos_poly = detail::generator_poly(false, p, d);
    std::vector<std::uint32_t> neg_poly = detail::generator_poly(true, p, d);
    for (std::int32_t k : w.letters()) {
        const std::uint32_t index = static_cast<std::uint32_t>(k < 0 ? -static_cast<std::int64_t>(k) : k);
        acc = detail::mul_univariate(acc, index, k > 0 ? pos_poly : neg_poly, term_cap);
    }
    return acc;
}

// Stored coefficient of the monomial, 0 when absent. Querying a degree that
// was truncated away is an error, not a zero.
inline std::uint32_t coefficient(const TruncatedSeries& s, const Monomial& mono) {
    if (mono.size() > s.trunc()) {
        throw std::out_of_range("monomial degree exceeds series truncation");
    }
    for (std::uint32_t ix : mono) {
        if (ix < 1) throw std::invalid_argument("monomial index must be >= 1");
    }
    if (mono.empty()) return s.constant_term();
    auto it = std::lower_bound(s.terms().begin(), s.terms().end(), mono,
                               [](const Term& t, const Monomial& m) { return deg_lex_less(t.mono, m); });
    if (it != s.terms().end() && it->mono == mono) return it->coeff;
    return 0;
}

inline std::string to_string(const Monomial& mono) {
    std::string out;
    for (std::uint32_t ix : mono) {
        out += 'X';
        out += std::to_string(ix);
    }
    return out;
}

// "1 + 2·X4X2X3 + ..." with terms in degree-then-lex order.
inline std::string to_string(const TruncatedSeries& s) {
    std::string out = std::to_string(s.constant_term());
    for (const Term& t : s.terms()) {
        out += " + ";
        out += std::to_string(t.coeff);
        out += "·";
        out += to_string(t.mono);
    }
    return out;
}

} // namespace corelink
