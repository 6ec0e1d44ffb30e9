// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Campaign trial counts and tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "normlab/generators.hpp"
#include "normlab/harness.hpp"

using namespace normlab;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

CampaignOptions campaign(const std::string& claim, int trials, int dim_max = 8,
                         int terms_max = 4) {
    CampaignOptions o;
    o.claim = claim;
    o.trials = trials;
    o.dim_max = dim_max;
    o.terms_max = terms_max;
    o.seed = 42;
    o.tol = 1e-8;
    o.jobs = 4;
    o.no_times = true;
    return o;
}

bool campaign_clean(const CampaignResult& r) {
    return r.violated == 0 && r.hypothesis_failures == 0 &&
           r.inconclusive == 0 && r.holds == r.trials;
}

// --- criterion 1: the combined concave congruence-sum inequality --------

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const CampaignResult r = run_campaign(campaign("thm31", 1000));
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    const bool ok = campaign_clean(r) && secs < 60.0;
    report(1, ok,
           "thm31 campaign: 1000 trials, min margin " + fmt(r.min_margin) +
               ", " + fmt(secs) + " s at 4 workers" +
               (campaign_clean(r) ? "" : " (violations or failures present)"));
}

// --- criterion 2: convex direction and the power/trace special case -----

void criterion2() {
    const std::vector<ScalarFunction> gset = {
        ScalarFunction::power(2.0), ScalarFunction::power(2.5),
        ScalarFunction::power(3.0), ScalarFunction::angle(1.0)};
    bool ok = true;
    double min_margin = 1e300;
    for (int t = 0; t < 1000; ++t) {
        GeneratedInstance gen = generate_instance("cor32", 42, (std::uint64_t)t, 8, 4);
        gen.instance.f = gset[(size_t)(t % 4)];
        const Adjudication adj = adjudicate(gen.instance, 1e-8);
        if (adj.status != TrialStatus::Holds) ok = false;
        min_margin = std::min(min_margin, adj.verdict.margin);
    }

    // McCarthy-style trace comparison: the Ky Fan n margin of the power
    // claim must be non-negative on its own.
    double min_trace_margin = 1e300;
    for (int t = 0; t < 200; ++t) {
        GeneratedInstance gen = generate_instance("thm11", 43, (std::uint64_t)t, 8, 4);
        const Verdict v = evaluate_claim(gen.instance);
        if (!v.hypotheses_ok || v.per_k_margins.empty()) {
            ok = false;
            continue;
        }
        const double trace_margin = v.per_k_margins.back();
        min_trace_margin = std::min(min_trace_margin, trace_margin);
        if (trace_margin < -1e-8 * v.scale) ok = false;
    }
    report(2, ok,
           "cor32 campaign over {t^2, t^2.5, t^3, angle}: 1000 trials, min "
           "margin " +
               fmt(min_margin) + "; power trace case on 200 trials, min k=n "
               "margin " + fmt(min_trace_margin));
}

// --- criterion 3: contraction suite with certificates -------------------

void criterion3() {
    bool ok = true;
    std::string detail = "500-trial campaigns:";
    for (const std::string& claim :
         {"eq1", "eq2", "eq3", "eq5", "uchiyama", "contractive-sum"}) {
        const CampaignResult r = run_campaign(campaign(claim, 500));
        bool claim_ok = campaign_clean(r);
        if (claim == "eq2" || claim == "contractive-sum") {
            claim_ok = claim_ok && r.certificates == r.trials &&
                       r.min_certificate_margin >= -1e-8 &&
                       r.max_certificate_unitarity <= 1e-9;
            detail += " " + claim + " (certs " + std::to_string(r.certificates) +
                      ", min cert margin " + fmt(r.min_certificate_margin) + ")";
        } else {
            detail += " " + claim;
        }
        detail += claim_ok ? " ok;" : " FAILED;";
        ok = ok && claim_ok;
    }
    report(3, ok, detail);
}

// --- criterion 4: proof-step machinery -----------------------------------

void criterion4() {
    bool ok = true;
    std::ostringstream detail;

    // eq9 over all projection ranks.
    const CampaignResult r9 = run_campaign(campaign("eq9", 500));
    std::set<int> ks;
    for (const std::string& line : r9.jsonl) {
        const json j = json::parse(line);
        if (j["genspec"].contains("k")) ks.insert(j["genspec"]["k"].get<int>());
    }
    bool k_cover = true;
    for (int k = 1; k <= 8; ++k) k_cover = k_cover && ks.count(k) > 0;
    ok = ok && campaign_clean(r9) && k_cover;
    detail << "eq9 500 trials (k values covered: " << ks.size() << "/8), ";

    // Hinge decomposition exactness across the convex catalog.
    const std::vector<std::vector<double>> grids = {
        {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0},
        {0.0, 0.1, 0.3, 0.7, 1.5, 3.1, 6.3, 12.7},
        {0.0, 1.0, 2.0, 4.0, 8.0},
    };
    double worst_rec = 0.0;
    for (const ScalarFunction& g : convex_catalog()) {
        for (const auto& grid : grids) {
            const AngleDecomposition dec = angle_decompose(g, grid);
            for (const auto& [a, c] : dec.terms)
                if (c < 0.0) ok = false;
            for (double t : grid) {
                const double want = eval(g, t);
                const double err = std::abs(decomposition_eval(dec, t) - want) /
                                   std::max(1.0, std::abs(want));
                worst_rec = std::max(worst_rec, err);
            }
        }
    }
    ok = ok && worst_rec <= 1e-12;
    detail << "decomposition error " << fmt(worst_rec) << ", ";

    // Uniform smoother convergence.
    double worst_gap_ratio = 0.0;
    for (double a : {0.5, 1.0, 3.0}) {
        const ScalarFunction gamma = ScalarFunction::angle(a);
        for (double r : {1.0, 1e-2, 1e-4}) {
            const ScalarFunction h = ScalarFunction::smoother(a, r);
            double sup = 0.0;
            for (int i = 0; i <= 10000; ++i) {
                const double t = 10.0 * a * i / 10000.0;
                sup = std::max(sup, std::abs(eval(h, t) - eval(gamma, t)));
            }
            worst_gap_ratio = std::max(worst_gap_ratio, sup / std::sqrt(r));
        }
    }
    ok = ok && worst_gap_ratio <= 1.0;
    detail << "sup-gap/sqrt(r) " << fmt(worst_gap_ratio) << ", ";

    // Operator concavity of the smoother inverse by sampling.
    double worst_opc = 0.0;
    for (int n : {2, 3}) {
        const OperatorConcavityReport rep = check_operator_concave_sample(
            ScalarFunction::smoother_inverse(1.0, 0.5), n, 200, 42);
        if (!rep.ok) ok = false;
        worst_opc = std::min(worst_opc, rep.worst_margin);
    }
    detail << "smoother-inverse concavity worst margin " << fmt(worst_opc);
    report(4, ok, detail.str());
}

// --- criterion 5: falsification discoveries ------------------------------

bool replay_exits_1(const Instance& witness, const std::string& path) {
    json w;
    w["instance"] = instance_to_json(witness);
    write_json_file(path, w);
    std::ostringstream out, err;
    CheckOptions check;
    check.instance_path = path;
    check.tol = 1e-7;
    const int code = run_check(check, out, err);
    std::remove(path.c_str());
    return code == 1;
}

void criterion5() {
    bool ok = true;
    std::ostringstream detail;

    const auto find = [&](const std::string& target, std::uint64_t budget,
                          bool allow_retry) {
        FalsifyOptions o;
        o.target = target;
        o.budget = budget;
        o.seed = 42;
        o.jobs = 4;
        FalsifyResult res = run_falsify_search(o);
        std::uint64_t used_budget = budget;
        if (!res.found && allow_retry) {
            o.budget = 1000000;
            used_budget = o.budget;
            res = run_falsify_search(o);
        }
        detail << target << ": ";
        if (!res.found) {
            detail << "NOT FOUND within " << used_budget << "; ";
            ok = false;
            return;
        }
        const bool replays =
            replay_exits_1(*res.witness, "acc5_" + target + ".json");
        if (!replays) ok = false;
        detail << "found at trial " << res.trials_used << " (budget "
               << used_budget << ", margin " << fmt(res.witness_verdict->margin)
               << ", n=" << res.witness->dim() << ", replay "
               << (replays ? "exit 1" : "FAILED") << "); ";
    };

    find("loewner-subadd", 100000, false);
    find("eq4-nonpsd", 100000, true);
    find("eq2-reversed", 100000, true);
    report(5, ok, detail.str());
}

// --- criterion 6: numerical core -----------------------------------------

void criterion6() {
    bool ok = true;
    double worst_recon = 0.0, worst_unit = 0.0;
    for (int t = 0; t < 500; ++t) {
        Rng rng = Rng::substream(4242, (std::uint64_t)t);
        const int n = 1 + rng.below(8);
        HermitianMatrix h = HermitianMatrix::zero(n);
        switch (t % 4) {
            case 0: h = random_hermitian(rng, n); break;
            case 1: h = random_psd(rng, n); break;
            case 2:
                h = n >= 2 ? random_psd_rank_deficient(rng, n, 1 + rng.below(n - 1))
                           : random_psd(rng, n);
                break;
            default: h = random_psd_degenerate(rng, n); break;
        }
        const Spectrum s = eig_hermitian(h);
        ComplexMatrix lam(n);
        for (int i = 0; i < n; ++i) lam(i, i) = s.eigenvalues[(size_t)i];
        const double recon =
            (s.eigenvectors * lam * s.eigenvectors.adjoint() - h.matrix())
                .frobenius_norm() /
            std::max(1.0, h.frobenius_norm());
        const double unit = (s.eigenvectors.adjoint() * s.eigenvectors -
                             ComplexMatrix::identity(n))
                                .frobenius_norm();
        worst_recon = std::max(worst_recon, recon);
        worst_unit = std::max(worst_unit, unit);
    }
    ok = ok && worst_recon <= 1e-10 && worst_unit <= 1e-10;

    double worst_alias = 0.0;
    for (int t = 0; t < 200; ++t) {
        Rng rng = Rng::substream(4343, (std::uint64_t)t);
        const int n = 1 + rng.below(8);
        const ComplexMatrix m = random_general(rng, n);
        const double scale = std::max(1.0, norm(m, NormSpec::trace()));
        const double alias = std::max(
            {std::abs(norm(m, NormSpec::op()) - norm(m, NormSpec::ky_fan(1))),
             std::abs(norm(m, NormSpec::op()) -
                      norm(m, NormSpec::schatten(
                                  std::numeric_limits<double>::infinity()))),
             std::abs(norm(m, NormSpec::trace()) - norm(m, NormSpec::ky_fan(n))),
             std::abs(norm(m, NormSpec::trace()) - norm(m, NormSpec::schatten(1.0))),
             std::abs(norm(m, NormSpec::frobenius()) -
                      norm(m, NormSpec::schatten(2.0)))});
        worst_alias = std::max(worst_alias, alias / scale);
    }
    ok = ok && worst_alias <= 1e-10;
    report(6, ok,
           "eigensolver over 500 mixed-ensemble matrices: reconstruction " +
               fmt(worst_recon) + ", unitarity " + fmt(worst_unit) +
               "; norm alias coherence " + fmt(worst_alias) + " on 200 matrices");
}

// --- criterion 7: determinism across worker counts -----------------------

void criterion7() {
    const std::vector<std::pair<std::string, int>> suite = {
        {"thm31", 1000}, {"cor32", 1000},         {"thm11", 200},
        {"eq1", 500},    {"eq2", 500},            {"eq3", 500},
        {"eq5", 500},    {"uchiyama", 500},       {"contractive-sum", 500},
        {"eq9", 500},
    };
    bool ok = true;
    std::uint64_t bytes = 0;
    for (const auto& [claim, trials] : suite) {
        CampaignOptions o = campaign(claim, trials);
        o.jobs = 1;
        const CampaignResult serial = run_campaign(o);
        o.jobs = 4;
        const CampaignResult parallel = run_campaign(o);
        if (serial.jsonl.size() != parallel.jsonl.size()) {
            ok = false;
            continue;
        }
        for (size_t i = 0; i < serial.jsonl.size(); ++i) {
            bytes += serial.jsonl[i].size();
            if (serial.jsonl[i] != parallel.jsonl[i]) ok = false;
        }
    }
    report(7, ok,
           "sorted JSONL byte-identical between 1 and 4 workers over the "
           "full campaign suite (" +
               std::to_string(bytes) + " bytes compared)");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
