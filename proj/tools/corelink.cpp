// Command-line front end: build core-group presentations of braid closures,
// expand words through the Magnus Z_p-expansion, count Fox colorings, and
// decide the p-move / 4-move obstructions.
//
// Exit codes for obstruct/fourmove: 0 = no obstruction found (inconclusive),
// 10 = obstructed, 11 = inapplicable (coloring precondition fails),
// 12 = degree-limited screening was inconclusive. All commands exit 2 on
// input or capacity errors.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corelink/corelink.hpp"

namespace {

constexpr int kExitObstructed = 10;
constexpr int kExitInapplicable = 11;
constexpr int kExitScreenInconclusive = 12;
constexpr int kExitError = 2;

struct InputOptions {
    std::string braid;
    bool braid_set = false;
    std::uint32_t strands = 0;
    std::string braid_file;
    std::string relators_file;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool allow_relators = true) {
    auto* braid = cmd->add_option("--braid", in.braid, "braid word, e.g. \"(1 2 3 4)^10\"");
    braid->each([&in](const std::string&) { in.braid_set = true; });
    auto* strands = cmd->add_option("--strands", in.strands, "strand count for --braid");
    braid->needs(strands);
    strands->needs(braid);
    auto* bfile = cmd->add_option("--braid-file", in.braid_file,
                                  "braid file ('strands N' line, then the word)");
    bfile->excludes(braid);
    if (allow_relators) {
        auto* rel = cmd->add_option("--relators", in.relators_file,
                                    "presentation JSON file {\"generators\": m, \"relators\": [[...]]}");
        rel->excludes(braid)->excludes(bfile);
    }
}

corelink::Presentation load_presentation_input(const InputOptions& in) {
    if (in.braid_set) {
        return corelink::closure_presentation(corelink::parse_braid(in.braid, in.strands));
    }
    if (!in.braid_file.empty()) {
        return corelink::closure_presentation(corelink::io::load_braid(in.braid_file));
    }
    if (!in.relators_file.empty()) {
        return corelink::io::load_presentation(in.relators_file);
    }
    throw CLI::ValidationError("input", "one of --braid, --braid-file, --relators is required");
}

corelink::BraidWord load_braid_input(const InputOptions& in) {
    if (in.braid_set) {
        return corelink::parse_braid(in.braid, in.strands);
    }
    if (!in.braid_file.empty()) {
        return corelink::io::load_braid(in.braid_file);
    }
    throw CLI::ValidationError("input", "one of --braid, --braid-file is required");
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (v > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
        v *= base;
    }
    return v;
}

int report_exit_code(const corelink::ObstructionReport& rep) {
    switch (rep.overall) {
        case corelink::OverallVerdict::obstructed: return kExitObstructed;
        case corelink::OverallVerdict::inapplicable: return kExitInapplicable;
        case corelink::OverallVerdict::no_obstruction: return 0;
    }
    return kExitError;
}

// Cross-checks the linear-algebra coloring order against brute-force
// enumeration. Throws on mismatch (would be a bug, not an input problem).
std::uint64_t verify_coloring(const corelink::Presentation& pr, std::uint32_t p) {
    const corelink::ColoringRank cr = corelink::coloring_rank(pr, p);
    const std::uint64_t count = corelink::oracle::enumerate_colorings(pr, p);
    const auto expected = checked_pow(p, cr.order_exponent);
    if (!expected || count != *expected) {
        throw std::runtime_error("verification FAILED: enumeration found " + std::to_string(count) +
                                 " colorings, rank predicts " + std::to_string(p) + "^" +
                                 std::to_string(cr.order_exponent));
    }
    return count;
}

int cmd_present(const InputOptions& in) {
    const corelink::Presentation pr = load_presentation_input(in);
    std::cout << corelink::io::presentation_to_json(pr).dump(2) << '\n';
    return 0;
}

int cmd_expand(const std::string& word_text, std::uint32_t p, std::optional<std::uint32_t> degree,
               bool as_json, bool verify, std::size_t max_terms) {
    const corelink::GroupWord w = corelink::parse_word(word_text);
    const std::uint32_t d = degree.value_or(p);
    const corelink::TruncatedSeries s = corelink::expand(w, p, d, max_terms);
    bool verified = false;
    if (verify) {
        if (corelink::oracle::naive_expand(w, p, d) != s) {
            std::cerr << "verification FAILED: naive expansion disagrees\n";
            return 1;
        }
        verified = true;
    }
    if (as_json) {
        corelink::io::json out{{"word", corelink::to_string(w)},
                               {"p", p},
                               {"degree", d},
                               {"series", corelink::io::series_to_json(s)}};
        if (verified) out["verified"] = true;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << corelink::to_string(s) << '\n';
        if (verified) {
            std::cout << "verified: naive expansion agrees (" << s.terms().size() << " terms)\n";
        }
    }
    return 0;
}

int cmd_color(const InputOptions& in, std::uint32_t p, bool as_json, bool verify) {
    const corelink::Presentation pr = load_presentation_input(in);
    const corelink::ColoringRank cr = corelink::coloring_rank(pr, p);
    const auto order = checked_pow(p, cr.order_exponent);
    std::optional<std::uint64_t> enumerated;
    if (verify) enumerated = verify_coloring(pr, p);
    if (as_json) {
        corelink::io::json out{{"p", p},
                               {"generators", pr.generators()},
                               {"rank", cr.rank},
                               {"order_exponent", cr.order_exponent}};
        if (order) out["order"] = *order;
        if (enumerated) out["verified"] = true;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "coloring group order: " << p << "^" << cr.order_exponent;
        if (order) std::cout << " = " << *order;
        std::cout << '\n';
        if (enumerated) {
            std::cout << "verified: enumeration found " << *enumerated << " colorings\n";
        }
    }
    return 0;
}

int cmd_obstruct(const InputOptions& in, std::uint32_t p, const corelink::CheckOptions& opts,
                 bool as_json, bool verify) {
    const corelink::Presentation pr = load_presentation_input(in);
    const corelink::ObstructionReport rep = corelink::obstruct_p(pr, p, opts);
    std::uint64_t enumerated = 0;
    if (verify) enumerated = verify_coloring(pr, p);
    if (as_json) {
        std::cout << corelink::io::report_to_json(rep).dump(2) << '\n';
    } else {
        std::cout << corelink::io::report_to_text(rep);
        if (verify) {
            std::cout << "verified: enumeration found " << enumerated << " colorings\n";
        }
    }
    return report_exit_code(rep);
}

int cmd_fourmove(const InputOptions& in, const corelink::CheckOptions& opts, bool as_json,
                 bool verify) {
    const corelink::Presentation pr = load_presentation_input(in);
    const corelink::ObstructionReport rep = corelink::obstruct_4(pr, opts);
    std::size_t verified = 0, skipped = 0;
    if (verify) {
        for (const corelink::GroupWord& r : pr.relators()) {
            if (r.size() > corelink::oracle::kNaiveMaxLetters) {
                ++skipped;
                continue;
            }
            if (corelink::oracle::naive_expand(r, 2, 4) != corelink::expand(r, 2, 4, opts.max_terms)) {
                std::cerr << "verification FAILED: naive expansion disagrees\n";
                return 1;
            }
            ++verified;
        }
    }
    if (as_json) {
        std::cout << corelink::io::report_to_json(rep).dump(2) << '\n';
    } else {
        std::cout << corelink::io::report_to_text(rep);
        if (verify) {
            std::cout << "verified: " << verified << " relator expansion(s) against the naive oracle";
            if (skipped > 0) std::cout << ", " << skipped << " outside the oracle domain";
            std::cout << '\n';
        }
    }
    return report_exit_code(rep);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"core-group presentations, Magnus Z_p-expansions, Fox colorings, and\n"
                 "p-move / 4-move obstructions for classical and welded braid closures"};
    app.require_subcommand(1);

    // present
    InputOptions present_in;
    auto* present = app.add_subcommand("present", "print the core-group presentation of a closure");
    add_input_options(present, present_in, /*allow_relators=*/false);

    // expand
    std::string word_text;
    std::uint32_t expand_p = 0;
    std::optional<std::uint32_t> expand_degree;
    bool expand_json = false, expand_verify = false;
    std::size_t expand_max_terms = corelink::kDefaultTermCap;
    auto* expand = app.add_subcommand("expand", "Magnus Z_p-expansion of a word");
    expand->add_option("--word", word_text, "word, e.g. \"x1 x2^-1\" or \"1 -2\"")->required();
    expand->add_option("--p", expand_p, "prime modulus")->required();
    expand->add_option("--degree", expand_degree, "truncation degree (default: p)");
    expand->add_flag("--json", expand_json, "emit JSON");
    expand->add_flag("--verify", expand_verify, "cross-check against the naive oracle");
    expand->add_option("--max-terms", expand_max_terms, "series term cap");

    // color
    InputOptions color_in;
    std::uint32_t color_p = 0;
    bool color_json = false, color_verify = false;
    auto* color = app.add_subcommand("color", "Fox p-coloring group order");
    add_input_options(color, color_in);
    color->add_option("--p", color_p, "prime modulus")->required();
    color->add_flag("--json", color_json, "emit JSON");
    color->add_flag("--verify", color_verify, "cross-check by brute-force enumeration");

    // obstruct
    InputOptions obstruct_in;
    std::uint32_t obstruct_p_value = 0;
    bool obstruct_json = false, obstruct_verify = false;
    corelink::CheckOptions obstruct_opts;
    auto* obstruct = app.add_subcommand("obstruct", "p-move obstruction check");
    add_input_options(obstruct, obstruct_in);
    obstruct->add_option("--p", obstruct_p_value, "odd prime of the p-move")->required();
    obstruct->add_flag("--json", obstruct_json, "emit JSON report");
    obstruct->add_flag("--verify", obstruct_verify, "cross-check the coloring order by enumeration");
    obstruct->add_option("--max-terms", obstruct_opts.max_terms, "series term cap");
    obstruct->add_option("--screen-degree", obstruct_opts.screen_degree,
                         "only scan degrees 1..D (sound for obstructions, never certifies a pass)");
    obstruct->add_option("--threads", obstruct_opts.threads,
                         "relator checks run in parallel (0 = hardware)");

    // fourmove
    InputOptions fourmove_in;
    bool fourmove_json = false, fourmove_verify = false;
    corelink::CheckOptions fourmove_opts;
    auto* fourmove = app.add_subcommand(
        "fourmove", "4-move obstruction check (Z_2 coefficients, degree 4). For --relators input "
                    "the caller asserts the presentation has one generator per link component.");
    add_input_options(fourmove, fourmove_in);
    fourmove->add_flag("--json", fourmove_json, "emit JSON report");
    fourmove->add_flag("--verify", fourmove_verify,
                       "cross-check relator expansions against the naive oracle");
    fourmove->add_option("--max-terms", fourmove_opts.max_terms, "series term cap");
    fourmove->add_option("--screen-degree", fourmove_opts.screen_degree,
                         "only scan degrees 1..D");
    fourmove->add_option("--threads", fourmove_opts.threads,
                         "relator checks run in parallel (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (present->parsed()) return cmd_present(present_in);
        if (expand->parsed())
            return cmd_expand(word_text, expand_p, expand_degree, expand_json, expand_verify,
                              expand_max_terms);
        if (color->parsed()) return cmd_color(color_in, color_p, color_json, color_verify);
        if (obstruct->parsed())
            return cmd_obstruct(obstruct_in, obstruct_p_value, obstruct_opts, obstruct_json,
                                obstruct_verify);
        if (fourmove->parsed())
            return cmd_fourmove(fourmove_in, fourmove_opts, fourmove_json, fourmove_verify);
    } catch (const corelink::screen_inconclusive& e) {
        std::cerr << "corelink: " << e.what() << '\n';
        return kExitScreenInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "corelink: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
