#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normlab/harness.hpp"

namespace {

// "lo:hi:points", e.g. "0:10:10000".
bool parse_grid(const std::string& s, normlab::ApproxOptions& opts) {
    std::istringstream in(s);
    std::string lo, hi, pts;
    if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') ||
        !std::getline(in, pts))
        return false;
    try {
        opts.grid_lo = std::stod(lo);
        opts.grid_hi = std::stod(hi);
        opts.grid_points = std::stoi(pts);
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normlab: checks, fuzz campaigns, falsification searches and "
                 "certificates for a family of matrix norm inequalities"};
    app.require_subcommand(1);

    // check
    normlab::CheckOptions check_opts;
    CLI::App* check = app.add_subcommand(
        "check", "Evaluate one instance file against a claim");
    check->add_option("instance", check_opts.instance_path, "instance JSON file")
        ->required();
    check->add_option("--claim", check_opts.claim_override,
                      "claim id (overrides the file's \"claim\")");
    check->add_option("--tol", check_opts.tol, "verdict tolerance");
    check->add_flag("--force", check_opts.force,
                    "evaluate even if hypothesis checks fail");

    // fuzz
    normlab::FuzzCliOptions fuzz_opts;
    CLI::App* fuzz =
        app.add_subcommand("fuzz", "Run a seeded random campaign for a claim");
    fuzz->add_option("--claim", fuzz_opts.campaign.claim, "claim id")->required();
    fuzz->add_option("--trials", fuzz_opts.campaign.trials, "number of trials");
    fuzz->add_option("--dim-max", fuzz_opts.campaign.dim_max,
                     "largest matrix dimension");
    fuzz->add_option("--terms-max", fuzz_opts.campaign.terms_max,
                     "largest term count");
    fuzz->add_option("--seed", fuzz_opts.campaign.seed, "campaign seed");
    fuzz->add_option("--tol", fuzz_opts.campaign.tol, "verdict tolerance");
    fuzz->add_option("--jobs", fuzz_opts.campaign.jobs,
                     "worker threads (0 = hardware)");
    fuzz->add_option("--out", fuzz_opts.out_path, "JSONL report path");
    fuzz->add_option("--witness", fuzz_opts.witness_path,
                     "witness path on violation");
    fuzz->add_flag("--no-times", fuzz_opts.campaign.no_times,
                   "zero the ms field for byte-stable reports");

    // falsify
    normlab::FalsifyCliOptions fals_opts;
    CLI::App* falsify = app.add_subcommand(
        "falsify", "Search for a counterexample to a claimed-false variant");
    falsify
        ->add_option("--claim", fals_opts.search.target,
                     "target: loewner-subadd | eq4-nonpsd | eq2-reversed")
        ->required();
    falsify->add_option("--budget", fals_opts.search.budget, "trial budget");
    falsify->add_option("--seed", fals_opts.search.seed, "search seed");
    falsify->add_option("--dim-max", fals_opts.search.dim_max,
                        "largest dimension (0 = target default)");
    falsify->add_option("--tol", fals_opts.search.tol, "verdict tolerance");
    falsify->add_option("--jobs", fals_opts.search.jobs,
                        "worker threads (0 = hardware)");
    falsify->add_option("--out", fals_opts.out_path, "witness path");

    // certify
    normlab::CertifyOptions cert_opts;
    CLI::App* certify = app.add_subcommand(
        "certify", "Emit and re-verify a unitary certificate");
    certify->add_option("instance", cert_opts.instance_path, "instance JSON file")
        ->required();
    certify
        ->add_option("--claim", cert_opts.claim,
                     "eq2 | contractive-sum | thm-dominance")
        ->required();
    certify->add_option("--tol", cert_opts.tol, "verdict tolerance");
    certify->add_option("--out", cert_opts.out_path, "certificate path");

    // approx
    normlab::ApproxOptions approx_opts;
    std::string grid_spec = "0:10:1001";
    std::vector<double> rs;
    CLI::App* approx = app.add_subcommand(
        "approx", "Tabulate the hinge function and its smoothers");
    approx->add_option("--a", approx_opts.a, "hinge knot (a > 0)");
    approx->add_option("--r", rs, "smoothing parameters (repeatable)");
    approx->add_option("--grid", grid_spec, "grid as lo:hi:points");
    approx->add_option("--out", approx_opts.out_path, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (check->parsed()) return normlab::run_check(check_opts, std::cout, std::cerr);
    if (fuzz->parsed()) return normlab::run_fuzz(fuzz_opts, std::cout, std::cerr);
    if (falsify->parsed())
        return normlab::run_falsify(fals_opts, std::cout, std::cerr);
    if (certify->parsed())
        return normlab::run_certify(cert_opts, std::cout, std::cerr);
    if (approx->parsed()) {
        if (!rs.empty()) approx_opts.rs = rs;
        if (!parse_grid(grid_spec, approx_opts)) {
            std::cerr << "error: --grid expects lo:hi:points\n";
            return 2;
        }
        return normlab::run_approx(approx_opts, std::cout, std::cerr);
    }
    return 2;
}
