// wodot: weighted restricted sumsets, theorem verification, distinct-residue
// congruences and rank-2 minimal zero-sum constructions from the shell.
//
// Exit codes: 0 ok, 1 valid negative answer (unsolvable / infeasible /
// verification found violations), 2 usage or precondition error, 3 internal
// inconsistency.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wodot/check/acceptance.hpp"
#include "wodot/io.hpp"
#include "wodot/wodot.hpp"

namespace {

using nlohmann::json;
using namespace wodot;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kViolation = 3 };

struct RunConfig {
    bool json = false;
    std::uint64_t seed = check::kDefaultSeed;
    int mask_bits = default_limits.mask_bits;
    std::uint64_t enum_budget = default_limits.enum_budget;
    std::string out;

    Limits limits() const {
        Limits l;
        l.mask_bits = mask_bits;
        l.enum_budget = enum_budget;
        return l;
    }
};

struct Output {
    std::string text;
    json payload;
    int code = kOk;
};

void emit(const RunConfig& cfg, const Output& o) {
    std::ostringstream os;
    if (cfg.json) os << o.payload.dump(2) << "\n";
    else os << o.text;
    if (cfg.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw PreconditionError("cannot write " + cfg.out);
    f << os.str();
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// --- wsum -----------------------------------------------------------------

struct WsumArgs {
    std::string group, seq, weights;
    bool naive = false;
};

Output run_wsum(const RunConfig& cfg, const WsumArgs& a) {
    const auto g = io::parse_group(a.group);
    const auto s = io::parse_sequence(g, a.seq);
    const auto w = io::parse_weights(a.weights);
    const auto res = a.naive ? odot_naive(w, s, cfg.limits()) : odot(w, s, cfg.limits());
    Output o;
    o.payload = {{"group", io::to_json(g)}, {"result", io::to_json(res)}, {"size", res.size()}};
    o.text = "W (.) S over " + g.to_string() + " = " + res.to_string() + "\n|W (.) S| = " +
             std::to_string(res.size()) + "\n";
    return o;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string group;
    std::int64_t max_len = -1;
    std::optional<std::string> report;  // --json [path]
};

Output run_verify(const RunConfig& cfg, const VerifyArgs& a) {
    const auto g = io::parse_group(a.group);
    const auto max_len = a.max_len < 0 ? g.order() + 1 : static_cast<std::uint64_t>(a.max_len);
    auto lim = cfg.limits();
    const auto rep = verify_main_theorem(g, max_len, lim, [](const std::string& line) { std::cerr << line << "\n"; });
    const auto j = io::to_json(rep);
    if (a.report && !a.report->empty()) {
        std::ofstream f(*a.report);
        if (!f) throw PreconditionError("cannot write " + *a.report);
        f << j.dump(2) << "\n";
    }
    Output o;
    o.payload = j;
    std::ostringstream os;
    os << "group " << g.to_string() << ", lengths 1.." << max_len << "\n";
    for (const auto& l : rep.lengths)
        os << "  |S| = " << l.length << ": " << l.sequences << " sequences, " << l.full << " with W (.) S = G, min size "
           << l.min_size << "\n";
    os << "exceptional full-length sequences: " << rep.exceptions.size() << "\n";
    for (const auto& e : rep.exceptions) {
        os << "  " << e.sequence.to_string() << "  " << to_string(e.classification.kind);
        if (e.classification.predicted_missing) os << ", missing " << e.classification.predicted_missing->to_string();
        os << "\n";
    }
    os << "bound violations: " << rep.bound_violations.size() << ", mismatches: " << rep.mismatches.size() << "\n";
    for (const auto& m : rep.bound_violations) os << "  " << m << "\n";
    for (const auto& m : rep.mismatches) os << "  " << m << "\n";
    o.text = os.str();
    o.code = rep.ok() ? kOk : kViolation;
    return o;
}

// --- congruence -----------------------------------------------------------

struct CongruenceArgs {
    std::int64_t mod = 0;
    std::string coeffs;
    std::int64_t alpha = 1;
    bool witness = false;
    bool all_alpha = false;
};

Output run_congruence(const RunConfig& cfg, const CongruenceArgs& a) {
    const auto coeffs = io::parse_int_list(a.coeffs);
    const auto inst = normalize(coeffs, a.mod, a.alpha);
    Output o;
    if (a.all_alpha) {
        const auto v = decide_all_alpha(inst);
        o.payload = {{"every_alpha", v.every_alpha}, {"branch", to_string(v.branch)}, {"gcd", v.gcd}};
        if (v.unreachable) o.payload["unreachable_alpha"] = *v.unreachable;
        o.text = std::string(v.every_alpha ? "every alpha is reachable" : "not every alpha is reachable") + " (" +
                 to_string(v.branch) + ", gcd " + std::to_string(v.gcd) + ")";
        if (v.unreachable) o.text += "; e.g. alpha = " + std::to_string(*v.unreachable) + " has no solution";
        o.text += "\n";
        o.code = v.every_alpha ? kOk : kNegative;
        return o;
    }
    const auto v = a.witness ? construct(inst, cfg.limits()) : decide(inst);
    o.payload = io::to_json(v);
    std::ostringstream os;
    os << "sum a_i x_i = " << a.alpha << " (mod " << a.mod << ") with distinct x_i: "
       << (v.solvable ? "solvable" : "unsolvable") << " (" << to_string(v.branch) << ", gcd " << v.gcd << ")\n";
    if (v.witness) os << "x = (" << join(v.projected_witness(coeffs.size())) << ")\n";
    o.text = os.str();
    o.code = v.solvable ? kOk : kNegative;
    return o;
}

// --- zerosum --------------------------------------------------------------

struct ZerosumArgs {
    std::int64_t m = 0, n = 1;
    std::optional<std::int64_t> support;
    std::string pattern;
    std::optional<std::string> role;
};

Output run_zerosum(const RunConfig& cfg, const ZerosumArgs& a) {
    const auto role = a.role ? std::optional<BasisRole>(parse_role(*a.role)) : std::nullopt;
    ConstructionResult r;
    if (a.support) {
        r = construct_with_support(a.m, a.n, *a.support, role, cfg.limits());
    } else {
        r = construct_from_pattern({a.m, a.n, role.value_or(BasisRole::J1K2), io::parse_int_list(a.pattern)},
                                   cfg.limits());
    }
    Output o;
    o.payload = io::to_json(r);
    std::ostringstream os;
    os << "C" << r.m << " + C" << r.m * r.n << ", role " << to_string(r.role);
    if (!r.pattern.empty()) os << ", pattern (" << join(r.pattern) << ")";
    os << "\n";
    if (r.feasible) {
        os << "S = " << r.sequence->to_string() << "\n"
           << "x = (" << join(r.witness_x) << "), length " << r.sequence->length() << ", support "
           << r.sequence->counts().size() << ", minimal zero-sum: " << (r.verified ? "verified" : "unverified")
           << "\n";
    } else {
        os << "infeasible: " << r.reason << "\n";
    }
    o.text = os.str();
    o.code = r.feasible ? kOk : kNegative;
    return o;
}

// --- selftest -------------------------------------------------------------

Output run_selftest(const RunConfig& cfg) {
    check::AcceptanceOptions opt;
    opt.seed = cfg.seed;
    opt.progress = &std::cerr;
    const auto results = check::run_acceptance(opt);
    Output o;
    json arr = json::array();
    std::ostringstream os;
    bool ok = true;
    for (const auto& r : results) {
        arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail << "\n";
        ok = ok && r.passed;
    }
    o.payload = {{"seed", cfg.seed}, {"criteria", arr}, {"passed", ok}};
    o.text = os.str();
    o.code = ok ? kOk : kViolation;
    return o;
}

int report_error(bool as_json, const std::string& kind, const std::string& msg, int code) {
    if (as_json) std::cerr << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
    else std::cerr << "wodot: " << kind << ": " << msg << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted restricted sumsets over finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_flag("--json", cfg.json, "Emit JSON on stdout");
    app.add_option("--seed", cfg.seed, "Seed for the sampled selftest campaigns");
    app.add_option("--budget-mask-bits", cfg.mask_bits, "log2 of the largest DP state space")
        ->check(CLI::Range(1, 40));
    app.add_option("--budget-enum", cfg.enum_budget, "Largest subsequence enumeration")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "Write the result here instead of stdout");

    WsumArgs wsum;
    auto* c_wsum = app.add_subcommand("wsum", "Compute W (.) S");
    c_wsum->add_option("--group", wsum.group, "Group moduli, e.g. 2,4")->required();
    c_wsum->add_option("--seq", wsum.seq, "Sequence, e.g. \"0,0^2 1,1\"")->required();
    c_wsum->add_option("--weights", wsum.weights, "Weights: a..b or a comma list with ^k")->required();
    c_wsum->add_flag("--naive", wsum.naive, "Use the permutation enumerator");

    VerifyArgs verify;
    std::string verify_json;
    auto* c_verify = app.add_subcommand("verify", "Exhaustively check the lower bound and full-length classification");
    c_verify->add_option("--group", verify.group, "Group moduli")->required();
    c_verify->add_option("--max-len", verify.max_len, "Longest sequence length (default |G|+1)");
    auto* verify_json_opt =
        c_verify->add_option("--json", verify_json, "JSON output; with a path, also write the report there")
            ->expected(0, 1);

    CongruenceArgs cong;
    auto* c_cong = app.add_subcommand("congruence", "Distinct-residue solvability of sum a_i x_i = alpha (mod n)");
    c_cong->add_option("--mod", cong.mod, "Modulus n")->required();
    c_cong->add_option("--coeffs", cong.coeffs, "Coefficients a_1,...,a_r")->required();
    c_cong->add_option("--alpha", cong.alpha, "Right-hand side (default 1)");
    c_cong->add_flag("--witness", cong.witness, "Also construct a witness");
    c_cong->add_flag("--all-alpha", cong.all_alpha, "Decide whether every alpha is reachable");

    ZerosumArgs zs;
    std::int64_t support = 0;
    std::string role;
    auto* c_zs = app.add_subcommand("zerosum", "Build a maximal-length minimal zero-sum sequence over C_m + C_mn");
    c_zs->add_option("--m", zs.m, "m >= 2")->required();
    c_zs->add_option("--n", zs.n, "n >= 1 (default 1)");
    auto* sup_opt = c_zs->add_option("--support", support, "Target support size");
    auto* pat_opt = c_zs->add_option("--pattern", zs.pattern, "Multiplicity pattern a_1,...,a_l");
    sup_opt->excludes(pat_opt);
    auto* role_opt = c_zs->add_option("--role", role, "12/jk: e_j = e_1; 21/kj: e_j = e_2");

    auto* c_self = app.add_subcommand("selftest", "Run the acceptance suite");

    const bool json_hint = std::any_of(argv + 1, argv + argc, [](const char* a) { return std::string(a) == "--json"; });
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(json_hint, "usage", e.what(), kUsage);
    }

    try {
        Output o;
        if (c_wsum->parsed()) {
            o = run_wsum(cfg, wsum);
        } else if (c_verify->parsed()) {
            if (verify_json_opt->count() > 0) {
                cfg.json = true;
                verify.report = verify_json;
            }
            o = run_verify(cfg, verify);
        } else if (c_cong->parsed()) {
            o = run_congruence(cfg, cong);
        } else if (c_zs->parsed()) {
            if (sup_opt->count() == 0 && pat_opt->count() == 0)
                throw PreconditionError("zerosum needs --support or --pattern");
            if (sup_opt->count() > 0) zs.support = support;
            if (role_opt->count() > 0) zs.role = role;
            o = run_zerosum(cfg, zs);
        } else if (c_self->parsed()) {
            o = run_selftest(cfg);
        }
        emit(cfg, o);
        return o.code;
    } catch (const BudgetExceeded& e) {
        return report_error(cfg.json, "budget", e.what(), kUsage);
    } catch (const NotApplicableError& e) {
        return report_error(cfg.json, "not-applicable", e.what(), kUsage);
    } catch (const PreconditionError& e) {
        return report_error(cfg.json, "precondition", e.what(), kUsage);
    } catch (const TheoremViolation& e) {
        return report_error(cfg.json, "violation", e.what(), kViolation);
    } catch (const std::exception& e) {
        return report_error(cfg.json, "error", e.what(), kViolation);
    }
}
