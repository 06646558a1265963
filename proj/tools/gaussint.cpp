// Command-line surface for the Gaussian abundancy toolkit. Exact ring and
// rational results round-trip through the text syntax; analytic results
// carry explicit error bounds. Exit codes: 0 success, 1 usage, 2 domain,
// 3 resource bound, 4 internal inconsistency (including a k >= 2 perfect
// hit and failing verify suites).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "gaussint/analytic.hpp"
#include "gaussint/divfunc.hpp"
#include "gaussint/gfactor.hpp"
#include "gaussint/gint.hpp"
#include "gaussint/search.hpp"
#include "gaussint/serialize.hpp"
#include "gaussint/solitary.hpp"
#include "gaussint/verify.hpp"

namespace {

using nlohmann::json;
using namespace gaussint;

struct Options {
    bool json_output = false;
};

mpz_class parse_mpz(const std::string& s) {
    try {
        return mpz_class(s, 10);
    } catch (const std::invalid_argument&) {
        throw parse_error("bad integer literal: " + s);
    }
}

BigFloat parse_real(const std::string& s) {
    try {
        return BigFloat(s);
    } catch (const std::exception&) {
        throw parse_error("bad real literal: " + s);
    }
}

void print_envelope(const std::string& command, json inputs, json result, bool exact,
                    std::optional<std::string> error_bound = std::nullopt) {
    json env{{"command", command},
             {"inputs", std::move(inputs)},
             {"result", std::move(result)},
             {"exact", exact}};
    if (error_bound) env["error_bound"] = *error_bound;
    std::cout << env.dump() << "\n";
}

std::string unit_text(Unit u) {
    return to_string(u.value()) + " (i^" + std::to_string(u.i_exponent()) + ")";
}

void cmd_factor(const Options& opt, const std::string& eta_text) {
    const GaussianInt eta = parse_gaussian(eta_text);
    const Factorization f = factor(eta);
    if (opt.json_output) {
        print_envelope("factor", {{"eta", to_string(eta)}}, f, true);
        return;
    }
    std::cout << to_string(eta) << " = " << unit_text(f.unit);
    for (const auto& [pi, e] : f.factors) std::cout << " * (" << to_string(pi) << ")^" << e;
    std::cout << "\n";
}

void cmd_sigma(const Options& opt, const std::string& eta_text, unsigned k, bool bruteforce,
               uint64_t oracle_bound) {
    const GaussianInt eta = parse_gaussian(eta_text);
    const GaussianInt s = bruteforce ? sigma_k_bruteforce(eta, k, oracle_bound) : sigma_k(eta, k);
    if (opt.json_output) {
        print_envelope("sigma",
                       {{"eta", to_string(eta)}, {"k", k}, {"bruteforce", bruteforce}},
                       to_string(s), true);
        return;
    }
    std::cout << "sigma_" << k << "(" << to_string(eta) << ") = " << to_string(s) << "\n";
}

void cmd_abundancy(const Options& opt, const std::string& eta_text, unsigned k) {
    const GaussianInt eta = parse_gaussian(eta_text);
    const GaussianRational idx = abundancy(eta, k);
    const mpq_class nq = idx.norm();
    if (opt.json_output) {
        json result = idx;
        result["norm"] = nq.get_str();
        print_envelope("abundancy", {{"eta", to_string(eta)}, {"k", k}}, result, true);
        return;
    }
    std::cout << "I_" << k << "(" << to_string(eta) << ") = " << idx.to_string()
              << ", ||I_" << k << "|| = " << nq.get_str() << "\n";
}

void cmd_solitary(const Options& opt, const std::string& eta_text, unsigned k) {
    const SolitaryCertificate cert = greening_check(parse_gaussian(eta_text), k);
    if (opt.json_output) {
        print_envelope("solitary", {{"eta", to_string(cert.eta)}, {"k", k}}, cert, true);
        return;
    }
    std::cout << to_string(cert.eta) << " k=" << k << ": gcd(eta^k, sigma_k) = "
              << to_string(cert.gcd_value)
              << (cert.certified ? " -> certified solitary (gcd criterion)"
                                 : " -> not certified (inconclusive)")
              << "\n";
}

void cmd_friendly(const Options& opt, const std::string& a_text, const std::string& b_text,
                  unsigned k) {
    const GaussianInt a = parse_gaussian(a_text), b = parse_gaussian(b_text);
    const FriendlyResult r = are_friendly(a, b, k);
    if (opt.json_output) {
        print_envelope("friendly", {{"eta1", to_string(a)}, {"eta2", to_string(b)}, {"k", k}},
                       json{{"friendly", r.friendly},
                            {"associates", r.associates},
                            {"index1", r.index1},
                            {"index2", r.index2}},
                       true);
        return;
    }
    std::cout << to_string(a) << " and " << to_string(b) << " (k=" << k << "): "
              << (r.friendly ? (r.associates ? "friendly (associates)" : "friendly") : "not friendly")
              << "; I_k = " << r.index1.to_string() << " vs " << r.index2.to_string() << "\n";
}

void print_zeta_result(const Options& opt, const std::string& command, const ZetaValue& v,
                       int precision, json inputs) {
    if (opt.json_output) {
        print_envelope(command, std::move(inputs), json(v), false,
                       format_bigfloat(v.abs_error_bound, 6));
        return;
    }
    std::cout << command << "(" << format_bigfloat(v.s, 10) << ") = "
              << format_bigfloat(v.value, precision + 3) << "  (|error| <= "
              << format_bigfloat(v.abs_error_bound, 4) << ")\n";
}

void cmd_search(const Options& opt, SearchTask task, std::optional<std::string> state,
                unsigned workers) {
    if (!state) {
        if (const char* dir = std::getenv("GAUSSINT_STATE_DIR")) {
            std::string name = std::string("search-") + to_string(task.kind) + "-k" +
                               std::to_string(task.k) + "-" + std::to_string(task.norm_lo) + "-" +
                               std::to_string(task.norm_hi);
            if (task.t) name += "-t" + task.t->get_str();
            if (task.tau) name += "-tau" + to_string(*task.tau);
            state = std::string(dir) + "/" + name + ".jsonl";
        }
    }
    RunOptions ropt;
    ropt.workers = workers;
    if (opt.json_output) ropt.live = &std::cout;
    const SearchOutcome out = run_search(task, state, ropt);
    if (!opt.json_output) {
        for (const SearchRecord& r : out.records) {
            std::cout << "hit #" << r.seq << ": eta = " << to_string(r.eta)
                      << ", I_" << r.k << " = " << r.index.to_string();
            if (r.norm_value) std::cout << ", ||I|| = " << r.norm_value->get_str();
            if (r.tau) std::cout << ", tau = " << to_string(*r.tau);
            for (const auto& p : r.partners) std::cout << ", partner " << to_string(p);
            std::cout << "\n";
        }
        std::cout << "scanned " << out.scanned << " canonical values in ["
                  << task.norm_lo << ", " << task.norm_hi << "]; " << out.records.size()
                  << " record(s)";
        if (!out.max_index_arg.is_zero())
            std::cout << "; max ||I_" << task.k << "|| = " << out.max_index_norm.get_str()
                      << " at " << to_string(out.max_index_arg);
        std::cout << "\n";
    }
    if (out.critical_inconsistency) {
        std::cerr << "critical inconsistency: perfect hit(s) at k >= 2 contradict the "
                     "nonexistence theorem\n";
        std::exit(4);
    }
}

void cmd_verify(const Options& opt, const std::string& suite) {
    const SuiteReport rep = run_verify_suite(suite);
    if (opt.json_output) {
        print_envelope("verify", {{"suite", suite}},
                       json{{"name", rep.name},
                            {"checked", rep.checked},
                            {"failed", rep.failed},
                            {"passed", rep.passed()},
                            {"failures", rep.failures},
                            {"notes", rep.notes}},
                       true);
    } else {
        std::cout << rep.summary() << "\n";
        for (const auto& f : rep.failures) std::cout << "  failure: " << f << "\n";
        if (rep.failed > rep.failures.size())
            std::cout << "  ... and " << (rep.failed - rep.failures.size()) << " more\n";
        for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
    }
    if (!rep.passed()) std::exit(4);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaussint: exact divisor sums, abundancy indexes, solitary certificates,\n"
                 "zeta bounds and checkpointed searches over the Gaussian integers"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_flag("--json", opt.json_output, "emit machine-readable JSON");

    std::string eta_text, eta2_text, s_text, suite;
    unsigned k = 1;
    bool bruteforce = false;
    uint64_t oracle_bound = kDefaultOracleNormBound;
    int precision = 12;

    auto* factor_cmd = app.add_subcommand("factor", "factor into unit * canonical prime powers");
    factor_cmd->add_option("eta", eta_text, "Gaussian integer, e.g. 3-2i")->required();
    factor_cmd->callback([&] { cmd_factor(opt, eta_text); });

    auto* sigma_cmd = app.add_subcommand("sigma", "divisor power sum sigma_k");
    sigma_cmd->add_option("eta", eta_text)->required();
    sigma_cmd->add_option("--k", k, "power")->required()->check(CLI::PositiveNumber);
    sigma_cmd->add_flag("--bruteforce", bruteforce, "use the divisor-enumeration oracle");
    sigma_cmd->add_option("--oracle-bound", oracle_bound, "norm cap for the oracle");
    sigma_cmd->callback([&] { cmd_sigma(opt, eta_text, k, bruteforce, oracle_bound); });

    auto* ab_cmd = app.add_subcommand("abundancy", "exact abundancy index I_k");
    ab_cmd->add_option("eta", eta_text)->required();
    ab_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    ab_cmd->callback([&] { cmd_abundancy(opt, eta_text, k); });

    auto* sol_cmd = app.add_subcommand("solitary", "gcd-criterion solitary certificate");
    sol_cmd->add_option("eta", eta_text)->required();
    sol_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    sol_cmd->callback([&] { cmd_solitary(opt, eta_text, k); });

    auto* fr_cmd = app.add_subcommand("friendly", "exact abundancy equality of two elements");
    fr_cmd->add_option("eta1", eta_text)->required();
    fr_cmd->add_option("eta2", eta2_text)->required();
    fr_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    fr_cmd->callback([&] { cmd_friendly(opt, eta_text, eta2_text, k); });

    auto* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta with certified error bound");
    zeta_cmd->add_option("s", s_text, "real s > 1")->required();
    zeta_cmd->add_option("--precision", precision, "target digits (1-40)");
    zeta_cmd->callback([&] {
        print_zeta_result(opt, "zeta", zeta(parse_real(s_text), precision), precision,
                          {{"s", s_text}, {"precision", precision}});
    });

    auto* beta_cmd = app.add_subcommand("beta", "Dirichlet beta with certified error bound");
    beta_cmd->add_option("s", s_text)->required();
    beta_cmd->add_option("--precision", precision);
    beta_cmd->callback([&] {
        print_zeta_result(opt, "beta", beta(parse_real(s_text), precision), precision,
                          {{"s", s_text}, {"precision", precision}});
    });

    bool euler_product = false;
    uint64_t norm_limit = 1'000'000;
    auto* zq_cmd = app.add_subcommand("zeta-qi", "Dedekind zeta of Q[i]: zeta(s)*beta(s)");
    zq_cmd->add_option("s", s_text)->required();
    zq_cmd->add_option("--precision", precision);
    zq_cmd->add_flag("--euler-product", euler_product,
                     "partial Euler product over Gaussian primes instead");
    zq_cmd->add_option("--norm-limit", norm_limit, "prime norm cap for --euler-product");
    zq_cmd->callback([&] {
        if (euler_product) {
            const BigFloat v = dedekind_zeta_euler_product(parse_real(s_text), norm_limit);
            if (opt.json_output)
                print_envelope("zeta-qi",
                               {{"s", s_text}, {"euler_product", true}, {"norm_limit", norm_limit}},
                               json{{"value", format_bigfloat(v, 20)}}, false);
            else
                std::cout << "zeta-qi(" << s_text << ") partial Euler product (norm <= "
                          << norm_limit << ") = " << format_bigfloat(v, 15) << "\n";
            return;
        }
        print_zeta_result(opt, "zeta-qi", dedekind_zeta_qi(parse_real(s_text), precision), precision,
                          {{"s", s_text}, {"precision", precision}});
    });

    SearchTask task;
    std::string tau_text, t_text, state_text;
    unsigned workers = 1;
    auto* search_cmd = app.add_subcommand("search", "checkpointed range searches");
    search_cmd->require_subcommand(1);
    search_cmd->fallthrough();
    for (SearchKind kind :
         {SearchKind::tau_perfect, SearchKind::norm_perfect, SearchKind::friendly}) {
        auto* sub = search_cmd->add_subcommand(to_string(kind));
        sub->fallthrough();
        sub->add_option("--k", task.k)->required()->check(CLI::PositiveNumber);
        sub->add_option("--norm-hi", task.norm_hi)->required()->check(CLI::PositiveNumber);
        sub->add_option("--norm-lo", task.norm_lo)->check(CLI::PositiveNumber);
        sub->add_option("--block-size", task.block_size)->check(CLI::PositiveNumber);
        sub->add_option("--state", state_text, "checkpoint/results JSONL path");
        sub->add_option("--workers", workers)->check(CLI::PositiveNumber);
        if (kind == SearchKind::tau_perfect)
            sub->add_option("--tau", tau_text, "only report this integral index");
        if (kind == SearchKind::norm_perfect)
            sub->add_option("--t", t_text, "only report this integer ||I_k||");
        sub->callback([&, kind] {
            task.kind = kind;
            if (!tau_text.empty()) task.tau = parse_gaussian(tau_text);
            if (!t_text.empty()) task.t = parse_mpz(t_text);
            cmd_search(opt, task,
                       state_text.empty() ? std::nullopt
                                          : std::optional<std::string>(state_text),
                       workers);
        });
    }

    auto* verify_cmd = app.add_subcommand("verify", "run a named invariant suite");
    verify_cmd->add_option("suite", suite,
                           "oracle-sigma | multiplicativity | monotonicity | "
                           "prime-power-bounds | lemma-inequalities | bound-k2")
        ->required();
    verify_cmd->callback([&] { cmd_verify(opt, suite); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const state_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
