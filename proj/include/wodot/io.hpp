#pragma once

// JSON forms and the text shorthand used on the command line.
//
//   element   [c1, c2, ...]
//   set       sorted array of elements
//   group     {"moduli": [n1, n2, ...]}
//   sequence  {"group": {...}, "terms": [{"elem": [...], "mult": k}, ...]}
//
// Text shorthand: a sequence is a whitespace-separated list of terms, each
// term a comma-separated coordinate list with an optional ^k multiplicity,
// e.g. "0^3 1 3" over C4 or "0,0^2 1,1" over C2+C4. Weights accept "a..b"
// (inclusive run) or a comma list with optional ^k.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wodot/congruence.hpp"
#include "wodot/error.hpp"
#include "wodot/group.hpp"
#include "wodot/sequence.hpp"
#include "wodot/theorem.hpp"
#include "wodot/weighted_sumset.hpp"
#include "wodot/zerosum.hpp"

namespace wodot::io {

using nlohmann::json;

inline json to_json(const Group& g) { return json{{"moduli", g.moduli()}}; }

inline json to_json(const Element& e) { return json(e.coords()); }

inline json to_json(const ElementSet& s) {
    json arr = json::array();
    for (const auto& e : s.members()) arr.push_back(to_json(e));
    return arr;
}

inline json to_json(const Sequence& s) {
    json terms = json::array();
    for (const auto& [e, k] : s.distinct_terms()) terms.push_back({{"elem", to_json(e)}, {"mult", k}});
    return json{{"group", to_json(s.group())}, {"terms", terms}};
}

namespace detail {

inline std::int64_t parse_int(const std::string& tok) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw PreconditionError("not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) throw PreconditionError("not an integer: '" + tok + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

// "x^k" -> (x, k)
inline std::pair<std::string, std::uint64_t> split_power(const std::string& tok) {
    const auto caret = tok.find('^');
    if (caret == std::string::npos) return {tok, 1};
    const auto k = parse_int(tok.substr(caret + 1));
    if (k < 0) throw PreconditionError("negative multiplicity in '" + tok + "'");
    return {tok.substr(0, caret), static_cast<std::uint64_t>(k)};
}

} // namespace detail

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    if (s.empty()) return out;
    for (const auto& t : detail::split(s, ',')) out.push_back(detail::parse_int(t));
    return out;
}

// "5" or "2,4"
inline Group parse_group(const std::string& s) { return Group(parse_int_list(s)); }

inline Sequence parse_sequence(const Group& g, const std::string& text) {
    Sequence s(g);
    for (const auto& w : detail::words(text)) {
        const auto [body, k] = detail::split_power(w);
        s.add(g.element(parse_int_list(body)), k);
    }
    return s;
}

inline WeightSeq parse_weights(const std::string& text) {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const auto a = detail::parse_int(text.substr(0, dots));
        const auto b = detail::parse_int(text.substr(dots + 2));
        if (b < a) return {};
        return WeightSeq::run(a, static_cast<std::uint64_t>(b - a + 1));
    }
    WeightSeq w;
    if (text.empty()) return w;
    for (const auto& t : detail::split(text, ',')) {
        const auto [body, k] = detail::split_power(t);
        w.add(detail::parse_int(body), k);
    }
    return w;
}

inline Group group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("moduli")) throw PreconditionError("group JSON needs a moduli array");
    return Group(j.at("moduli").get<std::vector<std::int64_t>>());
}

inline Sequence sequence_from_json(const json& j) {
    const auto g = group_from_json(j.at("group"));
    Sequence s(g);
    for (const auto& t : j.at("terms")) {
        const auto k = t.at("mult").get<std::int64_t>();
        if (k < 1) throw PreconditionError("multiplicities must be positive");
        s.add(g.element(t.at("elem").get<std::vector<std::int64_t>>()), static_cast<std::uint64_t>(k));
    }
    return s;
}

inline json to_json(const Classification& c) {
    json j{{"kind", to_string(c.kind)}};
    if (c.g) j["g"] = to_json(*c.g);
    if (c.gprime) j["gprime"] = to_json(*c.gprime);
    if (c.predicted_missing) j["predicted_missing"] = to_json(*c.predicted_missing);
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline json to_json(const VerificationReport& r) {
    json lengths = json::array();
    for (const auto& l : r.lengths)
        lengths.push_back({{"length", l.length}, {"sequences", l.sequences}, {"full", l.full}, {"min_size", l.min_size}});
    json exceptions = json::array();
    for (const auto& e : r.exceptions)
        exceptions.push_back({{"sequence", e.sequence.to_string()}, {"classification", to_json(e.classification)}});
    return json{{"group", to_json(r.group)},
                {"max_len", r.max_len},
                {"lengths", lengths},
                {"sequences_checked", r.sequences_checked},
                {"bound_violations", r.bound_violations},
                {"exceptions", exceptions},
                {"mismatches", r.mismatches},
                {"ok", r.ok()}};
}

inline json to_json(const CongruenceVerdict& v) {
    json j{{"solvable", v.solvable}, {"branch", to_string(v.branch)}, {"gcd", v.gcd}};
    if (v.branch == Branch::SpecialFamily) {
        j["excluded_alpha"] = v.excluded_or_offset;
        j["triple"] = {{"j", v.triple->j}, {"k", v.triple->k}, {"l", v.triple->l}};
    } else if (v.branch == Branch::GeneralGcd) {
        j["offset"] = v.excluded_or_offset;
    }
    if (v.witness) j["witness"] = *v.witness;
    return j;
}

inline json to_json(const ConstructionResult& r) {
    json j{{"m", r.m}, {"n", r.n}, {"role", to_string(r.role)}, {"feasible", r.feasible}};
    if (!r.pattern.empty()) j["pattern"] = r.pattern;
    if (r.feasible) {
        j["sequence"] = to_json(*r.sequence);
        j["text"] = r.sequence->to_string();
        j["witness_x"] = r.witness_x;
        j["verified"] = r.verified;
        j["length"] = r.sequence->length();
        j["support"] = r.sequence->counts().size();
    } else {
        j["reason"] = r.reason;
    }
    return j;
}

} // namespace wodot::io
