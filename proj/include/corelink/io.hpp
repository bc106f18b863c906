#pragma once

// JSON and file formats.
//
// Presentation files:
//   {"generators": m, "relators": [[1, -2, ...], ...]}
// with relators as signed generator indices; they are freely reduced on
// load and identity relators are dropped.
//
// Braid files are plain text: '#' comment lines, a "strands N" line, then
// the braid word (possibly across several lines).
//
// Obstruction reports:
//   {"p": int, "mode": "p-move"|"4-move",
//    "precondition": "holds"|"fails"|"not_required",
//    "relators": [{"index": i, "status": "...", "witness": {...}}, ...],
//    "overall": "obstructed"|"no_obstruction"|"inapplicable"}
// plus "precondition_witness" when the precondition fails. Key order is
// fixed so serialized reports are byte-stable.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corelink/braid.hpp"
#include "corelink/burnside.hpp"
#include "corelink/errors.hpp"
#include "corelink/magnus.hpp"
#include "corelink/words.hpp"

namespace corelink::io {

using json = nlohmann::ordered_json;

inline json presentation_to_json(const Presentation& pr) {
    json relators = json::array();
    for (const GroupWord& r : pr.relators()) {
        relators.push_back(r.letters());
    }
    return json{{"generators", pr.generators()}, {"relators", std::move(relators)}};
}

inline Presentation presentation_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("relators")) {
        throw std::invalid_argument(
            "presentation must be an object with 'generators' and 'relators'");
    }
    const auto& jg = j.at("generators");
    if (!jg.is_number_integer() || jg.get<std::int64_t>() < 1 ||
        jg.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("'generators' must be a positive integer");
    }
    const std::uint32_t m = jg.get<std::uint32_t>();
    if (!j.at("relators").is_array()) {
        throw std::invalid_argument("'relators' must be an array of arrays of integers");
    }
    std::vector<GroupWord> relators;
    for (const auto& jr : j.at("relators")) {
        if (!jr.is_array()) {
            throw std::invalid_argument("'relators' must be an array of arrays of integers");
        }
        std::vector<std::int32_t> letters;
        letters.reserve(jr.size());
        for (const auto& jk : jr) {
            if (!jk.is_number_integer()) {
                throw std::invalid_argument("relator letters must be integers");
            }
            const std::int64_t k = jk.get<std::int64_t>();
            if (k == 0 || k < -static_cast<std::int64_t>(m) || k > static_cast<std::int64_t>(m)) {
                throw std::invalid_argument("relator letter " + std::to_string(k) +
                                            " out of range for " + std::to_string(m) +
                                            " generators");
            }
            letters.push_back(static_cast<std::int32_t>(k));
        }
        relators.emplace_back(std::move(letters));
    }
    return Presentation(m, std::move(relators));
}

inline Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open presentation file: " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    try {
        return presentation_from_json(j);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline void save_presentation(const Presentation& pr, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write presentation file: " + path);
    }
    out << presentation_to_json(pr).dump(2) << '\n';
}

// Braid file: comments, "strands N", then braid word lines.
inline BraidWord load_braid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open braid file: " + path);
    }
    std::uint32_t strands = 0;
    bool have_strands = false;
    std::string word;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!have_strands) {
            std::istringstream ls(line);
            std::string keyword;
            if (!(ls >> keyword) || keyword != "strands" || !(ls >> strands) || strands < 1) {
                throw std::runtime_error(path + ": expected 'strands N' before the braid word");
            }
            std::string rest;
            if (ls >> rest) {
                throw std::runtime_error(path + ": unexpected text after 'strands N'");
            }
            have_strands = true;
        } else {
            word += ' ';
            word += line;
        }
    }
    if (!have_strands) {
        throw std::runtime_error(path + ": missing 'strands N' line");
    }
    return parse_braid(word, strands);
}

// [{"indices": [...], "coeff": c}, ...]; the constant term comes first with
// empty indices, then the proper terms in degree-then-lex order.
inline json series_to_json(const TruncatedSeries& s) {
    json out = json::array();
    out.push_back(json{{"indices", json::array()}, {"coeff", s.constant_term()}});
    for (const Term& t : s.terms()) {
        out.push_back(json{{"indices", t.mono}, {"coeff", t.coeff}});
    }
    return out;
}

inline const char* to_string(RelatorStatus s) {
    switch (s) {
        case RelatorStatus::pass: return "pass";
        case RelatorStatus::low_degree_violation: return "low_degree_violation";
        case RelatorStatus::asymmetry_violation: return "asymmetry_violation";
    }
    return "?";
}

inline const char* to_string(PreconditionStatus s) {
    switch (s) {
        case PreconditionStatus::holds: return "holds";
        case PreconditionStatus::fails: return "fails";
        case PreconditionStatus::not_required: return "not_required";
    }
    return "?";
}

inline const char* to_string(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::obstructed: return "obstructed";
        case OverallVerdict::no_obstruction: return "no_obstruction";
        case OverallVerdict::inapplicable: return "inapplicable";
    }
    return "?";
}

inline json verdict_to_json(const RelatorVerdict& v) {
    json out{{"index", v.index}, {"status", to_string(v.status)}};
    if (const auto* low = std::get_if<LowDegreeWitness>(&v.witness)) {
        out["witness"] = json{{"indices", low->mono}, {"coeff", low->coeff}};
    } else if (const auto* asym = std::get_if<AsymmetryWitness>(&v.witness)) {
        out["witness"] = json{
            {"first", json{{"indices", asym->first_mono}, {"coeff", asym->first_coeff}}},
            {"second", json{{"indices", asym->second_mono}, {"coeff", asym->second_coeff}}}};
    }
    return out;
}

inline json report_to_json(const ObstructionReport& rep) {
    json out{{"p", rep.modulus},
             {"mode", rep.mode == CheckMode::p_move ? "p-move" : "4-move"},
             {"precondition", to_string(rep.precondition)}};
    if (rep.precondition_failure) {
        out["precondition_witness"] = json{{"relator", rep.precondition_failure->relator_index},
                                           {"exponent_sums", rep.precondition_failure->exponent_sums_mod_p}};
    }
    json verdicts = json::array();
    for (const RelatorVerdict& v : rep.verdicts) {
        verdicts.push_back(verdict_to_json(v));
    }
    out["relators"] = std::move(verdicts);
    out["overall"] = to_string(rep.overall);
    return out;
}

inline std::string report_to_text(const ObstructionReport& rep) {
    std::string out;
    if (rep.mode == CheckMode::p_move) {
        out += "p-move obstruction check (p = " + std::to_string(rep.modulus) + ")\n";
    } else {
        out += "4-move obstruction check (Z_2 coefficients, degree 4)\n";
    }
    out += "precondition: ";
    out += to_string(rep.precondition);
    if (rep.precondition_failure) {
        out += " (relator " + std::to_string(rep.precondition_failure->relator_index + 1) +
               " exponent sums mod " + std::to_string(rep.modulus) + ":";
        for (std::uint32_t v : rep.precondition_failure->exponent_sums_mod_p) {
            out += ' ';
            out += std::to_string(v);
        }
        out += ")";
    }
    out += '\n';
    for (const RelatorVerdict& v : rep.verdicts) {
        out += "relator " + std::to_string(v.index + 1) + ": ";
        if (const auto* low = std::get_if<LowDegreeWitness>(&v.witness)) {
            out += "low-degree violation: coeff[" + corelink::to_string(low->mono) +
                   "] = " + std::to_string(low->coeff);
        } else if (const auto* asym = std::get_if<AsymmetryWitness>(&v.witness)) {
            out += "asymmetry violation at degree " + std::to_string(rep.degree) + ": coeff[" +
                   corelink::to_string(asym->first_mono) + "] = " + std::to_string(asym->first_coeff) +
                   ", coeff[" + corelink::to_string(asym->second_mono) +
                   "] = " + std::to_string(asym->second_coeff);
        } else {
            out += "pass";
        }
        out += '\n';
    }
    out += "overall: ";
    out += to_string(rep.overall);
    switch (rep.overall) {
        case OverallVerdict::obstructed:
            out += rep.mode == CheckMode::p_move
                       ? " (not p-move equivalent to a trivial link)"
                       : " (not 4-move equivalent to a trivial link)";
            break;
        case OverallVerdict::no_obstruction:
            out += " (inconclusive: the test found nothing)";
            break;
        case OverallVerdict::inapplicable:
            out += " (coloring precondition fails; the test says nothing)";
            break;
    }
    out += '\n';
    return out;
}

} // namespace corelink::io
