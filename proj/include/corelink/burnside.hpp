#pragma once

// Obstructions to trivializing a link by p-moves (and 4-moves), decided from
// a core-group presentation.
//
// A relator r passes the degree-d test over Z_p when its expansion has the
// shape 1 + (degree-d part constant on index multisets) + higher order:
// every coefficient in degrees 1..d-1 vanishes and the degree-d coefficients
// agree under permutation of the indices. For the p-move check d = p; links
// that are p-move equivalent to a trivial link (and satisfy the coloring
// precondition below) pass for every relator, so any violation certifies
// that the link is not p-move trivializable. The 4-move check runs the same
// test with Z_2 coefficients at degree 4 and has no coloring precondition.
//
// Verdicts are deterministic: the reported witness is always the first
// violation in degree-then-lexicographic order, so reports are bit-identical
// across runs and thread counts.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "corelink/braid.hpp"
#include "corelink/errors.hpp"
#include "corelink/magnus.hpp"
#include "corelink/words.hpp"

namespace corelink {

enum class RelatorStatus : std::uint8_t { pass, low_degree_violation, asymmetry_violation };

// A nonzero coefficient strictly below the test degree.
struct LowDegreeWitness {
    Monomial mono;
    std::uint32_t coeff = 0;

    friend bool operator==(const LowDegreeWitness&, const LowDegreeWitness&) = default;
};

// Two monomials with the same index multiset but different coefficients at
// the test degree.
struct AsymmetryWitness {
    Monomial first_mono;
    std::uint32_t first_coeff = 0;
    Monomial second_mono;
    std::uint32_t second_coeff = 0;

    friend bool operator==(const AsymmetryWitness&, const AsymmetryWitness&) = default;
};

struct RelatorVerdict {
    std::size_t index = 0;
    RelatorStatus status = RelatorStatus::pass;
    std::variant<std::monostate, LowDegreeWitness, AsymmetryWitness> witness;

    friend bool operator==(const RelatorVerdict&, const RelatorVerdict&) = default;
};

enum class PreconditionStatus : std::uint8_t { holds, fails, not_required };
enum class OverallVerdict : std::uint8_t { obstructed, no_obstruction, inapplicable };
enum class CheckMode : std::uint8_t { p_move, four_move };

// Exponent-sum vector (mod p) of the relator that breaks the coloring
// precondition.
struct PreconditionFailure {
    std::size_t relator_index = 0;
    std::vector<std::uint32_t> exponent_sums_mod_p;

    friend bool operator==(const PreconditionFailure&, const PreconditionFailure&) = default;
};

struct ObstructionReport {
    CheckMode mode = CheckMode::p_move;
    std::uint32_t modulus = 3; // coefficient field Z_p (2 for the 4-move check)
    std::uint32_t degree = 3;  // test degree (p, or 4 for the 4-move check)
    PreconditionStatus precondition = PreconditionStatus::holds;
    std::optional<PreconditionFailure> precondition_failure;
    std::vector<RelatorVerdict> verdicts; // ordered by relator index
    OverallVerdict overall = OverallVerdict::no_obstruction;

    friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

struct CheckOptions {
    std::size_t max_terms = kDefaultTermCap;
    // When nonzero and below the test degree, expand only to this degree and
    // look for low-degree violations. Screening can prove an obstruction
    // cheaply for large p but can never certify a pass; a clean screen
    // raises screen_inconclusive.
    std::uint32_t screen_degree = 0;
    unsigned threads = 1; // 0 = hardware concurrency
};

namespace detail {

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
    std::uint64_t acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

// Rank of a row list over the field Z_p, by Gaussian elimination.
inline std::uint32_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::uint32_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint32_t inv = mod_pow(rows[rank][col], p - 2, p); // Fermat, p prime
        for (std::size_t j = col; j < cols; ++j) {
            rows[rank][j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rows[rank][j]) * inv % p);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const std::uint64_t f = rows[r][col];
            for (std::size_t j = col; j < cols; ++j) {
                rows[r][j] = static_cast<std::uint32_t>(
                    (rows[r][j] + (p - static_cast<std::uint32_t>(f * rows[rank][j] % p))) % p);
            }
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::uint32_t> exponent_vector_mod_p(const GroupWord& w, std::uint32_t m,
                                                        std::uint32_t p) {
    std::vector<std::int64_t> sums = exponent_sums(w, m);
    std::vector<std::uint32_t> out(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        out[i] = static_cast<std::uint32_t>(((sums[i] % p) + p) % p);
    }
    return out;
}

// Number of distinct permutations of the multiset, saturating instead of
// overflowing (any saturated value exceeds every possible stored count).
inline std::uint64_t distinct_permutations(const Monomial& sorted_mono) {
    constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;
    std::uint64_t result = 1;
    std::uint64_t seen = 0, run = 0;
    std::uint32_t prev = 0;
    for (std::uint32_t ix : sorted_mono) {
        ++seen;
        run = (ix == prev) ? run + 1 : 1;
        prev = ix;
        // result *= seen / run stays integral along this recurrence
        if (result > kSaturate / seen) return kSaturate;
        result = result * seen / run;
    }
    return result;
}

// Core of the obstruction test: expand to `degree` (or to the screening
// degree) and report the first violation in degree-then-lex order. Returns
// nullopt when a screening pass found nothing, which proves nothing.
inline std::optional<RelatorVerdict> check_relator_core(const GroupWord& r, std::uint32_t modulus,
                                                        std::uint32_t degree,
                                                        const CheckOptions& opts) {
    const bool screened = opts.screen_degree != 0 && opts.screen_degree < degree;
    const std::uint32_t expand_to = screened ? opts.screen_degree : degree;
    const TruncatedSeries series = expand(r, modulus, expand_to, opts.max_terms);

    // terms are sorted, so the first one below the test degree is the witness
    for (const Term& t : series.terms()) {
        if (t.mono.size() >= degree) break;
        return RelatorVerdict{0, RelatorStatus::low_degree_violation,
                              LowDegreeWitness{t.mono, t.coeff}};
    }
    if (screened) return std::nullopt;

    // group the degree-d terms by index multiset; lists stay in lex order
    struct ClassInfo {
        std::vector<const Term*> members;
        bool mixed = false;
    };
    std::map<Monomial, ClassInfo> classes;
    for (const Term& t : series.terms()) {
        if (t.mono.size() != degree) continue;
        Monomial key = t.mono;
        std::sort(key.begin(), key.end());
        ClassInfo& ci = classes[key];
        if (!ci.members.empty() && ci.members.front()->coeff != t.coeff) ci.mixed = true;
        ci.members.push_back(&t);
    }
    for (const auto& [key, ci] : classes) {
        const std::uint64_t nperm = distinct_permutations(key);
        if (!ci.mixed && ci.members.size() == nperm) continue;

        // the class violates; build the deterministic witness against the
        // coefficient of its lex-least permutation (the sorted key itself)
        const std::uint32_t c0 = coefficient(series, key);
        // earliest stored member with a different coefficient
        const Term* stored = nullptr;
        for (const Term* t : ci.members) {
            if (t->coeff != c0 && !(t->mono == key)) {
                stored = t;
                break;
            }
        }
        // earliest absent permutation (coefficient 0), found by walking the
        // permutations in lex order against the sorted member list
        Monomial absent;
        if (c0 != 0) {
            Monomial perm = key;
            std::size_t at = 0;
            do {
                if (at < ci.members.size() && ci.members[at]->mono == perm) {
                    ++at;
                    continue;
                }
                absent = perm;
                break;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        AsymmetryWitness w;
        w.first_mono = key;
        w.first_coeff = c0;
        if (!absent.empty() && (stored == nullptr || deg_lex_less(absent, stored->mono))) {
            w.second_mono = absent;
            w.second_coeff = 0;
        } else {
            w.second_mono = stored->mono;
            w.second_coeff = stored->coeff;
        }
        return RelatorVerdict{0, RelatorStatus::asymmetry_violation, std::move(w)};
    }
    return RelatorVerdict{0, RelatorStatus::pass, std::monostate{}};
}

// Runs fn(i) for i in [0, n) across the requested number of threads and
// collects results by index, so the outcome is independent of scheduling.
template <typename Fn>
inline std::vector<std::optional<RelatorVerdict>> run_indexed(std::size_t n, unsigned threads,
                                                              Fn&& fn) {
    std::vector<std::optional<RelatorVerdict>> results(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e); // lowest index first
    }
    return results;
}

inline ObstructionReport run_obstruction(const Presentation& pr, CheckMode mode,
                                         std::uint32_t modulus, std::uint32_t degree,
                                         bool require_precondition, const CheckOptions& opts) {
    ObstructionReport report;
    report.mode = mode;
    report.modulus = modulus;
    report.degree = degree;

    if (require_precondition) {
        report.precondition = PreconditionStatus::holds;
        for (std::size_t i = 0; i < pr.relators().size(); ++i) {
            std::vector<std::uint32_t> vec =
                exponent_vector_mod_p(pr.relators()[i], pr.generators(), modulus);
            if (std::any_of(vec.begin(), vec.end(), [](std::uint32_t v) { return v != 0; })) {
                report.precondition = PreconditionStatus::fails;
                report.precondition_failure = PreconditionFailure{i, std::move(vec)};
                report.overall = OverallVerdict::inapplicable;
                return report;
            }
        }
    } else {
        report.precondition = PreconditionStatus::not_required;
    }

    const auto results = run_indexed(pr.relators().size(), opts.threads, [&](std::size_t i) {
        return check_relator_core(pr.relators()[i], modulus, degree, opts);
    });

    bool any_violation = false;
    bool any_unresolved = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i]) {
            RelatorVerdict v = *results[i];
            v.index = i;
            if (v.status != RelatorStatus::pass) any_violation = true;
            report.verdicts.push_back(std::move(v));
        } else {
            any_unresolved = true; // screened clean: no sound verdict
        }
    }
    if (any_unresolved && !any_violation) {
        throw screen_inconclusive(
            "screening to degree " + std::to_string(opts.screen_degree) +
            " found no violation; rerun without --screen-degree for a full verdict");
    }
    report.overall = any_violation ? OverallVerdict::obstructed : OverallVerdict::no_obstruction;
    return report;
}

} // namespace detail

// Rank over Z_p of the relators' exponent-sum vectors, and the exponent e
// with coloring-group order p^e (e = generators - rank).
struct ColoringRank {
    std::uint32_t rank = 0;
    std::uint32_t order_exponent = 0;

    friend bool operator==(const ColoringRank&, const ColoringRank&) = default;
};

inline ColoringRank coloring_rank(const Presentation& pr, std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(pr.relators().size());
    for (const GroupWord& r : pr.relators()) {
        rows.push_back(detail::exponent_vector_mod_p(r, pr.generators(), p));
    }
    const std::uint32_t rank = detail::rank_mod_p(std::move(rows), p);
    return ColoringRank{rank, pr.generators() - rank};
}

// True iff every relator abelianizes to zero mod p, i.e. the p-coloring
// group is all of Z_p^m.
inline bool precondition_holds(const Presentation& pr, std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    for (const GroupWord& r : pr.relators()) {
        const std::vector<std::uint32_t> vec = detail::exponent_vector_mod_p(r, pr.generators(), p);
        if (std::any_of(vec.begin(), vec.end(), [](std::uint32_t v) { return v != 0; })) {
            return false;
        }
    }
    return true;
}

// p-move test of a single relator. With screening enabled, a clean result
// raises screen_inconclusive rather than claiming a pass.
inline RelatorVerdict check_relator(const GroupWord& r, std::uint32_t p,
                                    const CheckOptions& opts = {}) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    std::optional<RelatorVerdict> v = detail::check_relator_core(r, p, p, opts);
    if (!v) {
        throw screen_inconclusive("screening to degree " + std::to_string(opts.screen_degree) +
                                  " found no violation; no verdict");
    }
    return *v;
}

// p-move obstruction for a whole presentation. overall == obstructed means
// the link is not p-move equivalent to a trivial link; no_obstruction is
// inconclusive; inapplicable means the coloring precondition fails and the
// test says nothing.
inline ObstructionReport obstruct_p(const Presentation& pr, std::uint32_t p,
                                    const CheckOptions& opts = {}) {
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }
    return detail::run_obstruction(pr, CheckMode::p_move, p, p, /*require_precondition=*/true, opts);
}

// 4-move obstruction: Z_2 coefficients, test degree 4, no coloring
// precondition. The caller asserts the presentation has one generator per
// link component.
inline ObstructionReport obstruct_4(const Presentation& pr, const CheckOptions& opts = {}) {
    return detail::run_obstruction(pr, CheckMode::four_move, 2, 4, /*require_precondition=*/false,
                                   opts);
}

} // namespace corelink
