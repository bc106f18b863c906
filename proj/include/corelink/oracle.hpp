#pragma once

// Deliberately naive reference computations, shipped with the library so the
// CLI's --verify flag and the test suite can cross-check the fast paths.
// Neither function shares an evaluation strategy with the code it checks:
// coloring counts come from exhaustive enumeration instead of Gaussian
// elimination, and series come from explicit distribution over all term
// choices instead of accumulator products.

#include <cstdint>
#include <map>
#include <vector>

#include "corelink/braid.hpp"
#include "corelink/errors.hpp"
#include "corelink/magnus.hpp"
#include "corelink/words.hpp"

namespace corelink::oracle {

inline constexpr std::uint64_t kMaxColoringAssignments = 1'000'000;
inline constexpr std::size_t kNaiveMaxLetters = 16;
inline constexpr std::uint32_t kNaiveMaxDegree = 4;

// Counts assignments in Z_p^m killed by every relator's exponent-sum
// functional. On an arc-level presentation this is exactly the number of Fox
// p-colorings of the diagram.
inline std::uint64_t enumerate_colorings(const Presentation& pr, std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    const std::uint32_t m = pr.generators();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        total *= p;
        if (total > kMaxColoringAssignments) {
            throw capacity_error("coloring enumeration would need " + std::to_string(p) + "^" +
                                 std::to_string(m) + " assignments (cap " +
                                 std::to_string(kMaxColoringAssignments) + ")");
        }
    }

    std::vector<std::vector<std::uint32_t>> functionals;
    functionals.reserve(pr.relators().size());
    for (const GroupWord& r : pr.relators()) {
        std::vector<std::int64_t> sums = exponent_sums(r, m);
        std::vector<std::uint32_t> row(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            row[i] = static_cast<std::uint32_t>(((sums[i] % p) + p) % p);
        }
        functionals.push_back(std::move(row));
    }

    std::vector<std::uint32_t> assign(m, 0);
    std::uint64_t count = 0;
    for (std::uint64_t step = 0; step < total; ++step) {
        bool ok = true;
        for (const auto& row : functionals) {
            std::uint64_t dot = 0;
            for (std::uint32_t i = 0; i < m; ++i) {
                dot += static_cast<std::uint64_t>(row[i]) * assign[i];
            }
            if (dot % p != 0) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        // odometer increment
        for (std::uint32_t i = 0; i < m; ++i) {
            if (++assign[i] < p) break;
            assign[i] = 0;
        }
    }
    return count;
}

namespace detail {

inline void naive_walk(const std::vector<std::int32_t>& letters, std::size_t at, Monomial& mono,
                       std::int64_t sign, std::uint32_t d,
                       std::map<Monomial, std::int64_t>& acc) {
    if (at == letters.size()) {
        acc[mono] += sign;
        return;
    }
    const std::int32_t k = letters[at];
    const std::uint32_t index = static_cast<std::uint32_t>(k < 0 ? -static_cast<std::int64_t>(k) : k);
    const std::uint32_t budget = d - static_cast<std::uint32_t>(mono.size());
    // choose the power of X_index contributed by this letter
    naive_walk(letters, at + 1, mono, sign, d, acc);
    const std::uint32_t max_power = (k > 0) ? std::min(budget, 1u) : budget;
    for (std::uint32_t t = 1; t <= max_power; ++t) {
        mono.push_back(index);
        naive_walk(letters, at + 1, mono, (k > 0 || t % 2 == 0) ? sign : -sign, d, acc);
    }
    mono.resize(mono.size() - max_power);
}

} // namespace detail

// Magnus Z_p-expansion by full distribution; must agree with expand() on its
// whole (small) domain.
inline TruncatedSeries naive_expand(const GroupWord& w, std::uint32_t p, std::uint32_t d) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    if (d < 1) {
        throw std::invalid_argument("truncation degree must be >= 1");
    }
    if (w.size() > kNaiveMaxLetters || d > kNaiveMaxDegree) {
        throw capacity_error("naive expansion limited to words of length <= " +
                             std::to_string(kNaiveMaxLetters) + " and degree <= " +
                             std::to_string(kNaiveMaxDegree));
    }
    std::map<Monomial, std::int64_t> acc;
    Monomial mono;
    detail::naive_walk(w.letters(), 0, mono, 1, d, acc);

    std::uint64_t constant = 0;
    std::vector<Term> terms;
    for (auto& [m, c] : acc) {
        const std::uint32_t canon = static_cast<std::uint32_t>(((c % p) + p) % p);
        if (m.empty()) {
            constant = canon;
        } else if (canon != 0) {
            terms.push_back({m, canon});
        }
    }
    return TruncatedSeries::make(p, d, constant, std::move(terms));
}

} // namespace corelink::oracle
