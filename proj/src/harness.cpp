#include "normlab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "normlab/generators.hpp"

namespace normlab {

namespace {

constexpr double kRawViolationTol = 1e-6;
constexpr double kTightViolationTol = 1e-7;

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        jobs = hw == 0 ? 2 : static_cast<int>(hw);
    }
    jobs = std::min(jobs, std::max(count, 1));
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    for (std::thread& t : pool) t.join();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Adjudication adjudicate(const Instance& inst, double tol, bool force,
                        bool want_certificate) {
    EvalOptions opts;
    opts.tol = tol;
    opts.force = force;
    opts.want_certificate = want_certificate;

    Adjudication adj;
    const Verdict raw = evaluate_claim(inst, opts);
    adj.verdict = raw;
    if (!raw.evaluated) {
        adj.status = TrialStatus::HypothesisFailure;
        return adj;
    }
    if (raw.holds) {
        adj.status = TrialStatus::Holds;
        return adj;
    }

    // Suspicious margin: re-run with the tight eigensolver threshold
    // before classifying.
    opts.eig.threshold = 1e-15;
    const Verdict tight = evaluate_claim(inst, opts);
    adj.verdict = tight;
    adj.tightened = true;
    if (tight.holds) {
        adj.status = TrialStatus::Holds;
        return adj;
    }
    const bool raw_violates = raw.margin < -kRawViolationTol * raw.scale;
    const bool tight_violates =
        tight.margin < -kTightViolationTol * tight.scale;
    adj.status = raw_violates && tight_violates ? TrialStatus::Violated
                                                : TrialStatus::Inconclusive;
    return adj;
}

namespace {

struct TrialRow {
    TrialStatus status = TrialStatus::Holds;
    std::string line;
    double margin = std::numeric_limits<double>::quiet_NaN();
    double cert_margin = std::numeric_limits<double>::quiet_NaN();
    double cert_unitarity = std::numeric_limits<double>::quiet_NaN();
    bool has_cert = false;
    std::string error;
};

bool violation_recheck(const Instance& inst, double tol) {
    return adjudicate(inst, tol, false, false).status == TrialStatus::Violated;
}

}  // namespace

CampaignResult run_campaign_with(
    const CampaignOptions& opts,
    const std::function<Adjudication(const Instance&, double)>& evaluate) {
    if (!known_claim(opts.claim))
        throw ParseError("unknown claim id: " + opts.claim);
    if (opts.trials < 1) throw PreconditionError("trials must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    std::vector<TrialRow> rows(static_cast<size_t>(opts.trials));

    parallel_for(opts.trials, opts.jobs, [&](int i) {
        TrialRow& row = rows[static_cast<size_t>(i)];
        try {
            const GeneratedInstance gen = generate_instance(
                opts.claim, opts.seed, static_cast<std::uint64_t>(i),
                opts.dim_max, opts.terms_max);
            const auto t0 = std::chrono::steady_clock::now();
            const Adjudication adj = evaluate(gen.instance, opts.tol);
            const double ms =
                std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

            row.status = adj.status;
            const Verdict& v = adj.verdict;
            row.margin = v.margin;
            if (v.certificate) {
                row.has_cert = true;
                row.cert_margin = v.certificate->loewner_margin;
                row.cert_unitarity = v.certificate->unitarity_residual;
            }

            json line;
            line["trial"] = i;
            line["claim"] = opts.claim;
            line["n"] = gen.genspec.n;
            line["m"] = gen.genspec.m;
            line["f"] = function_to_json(gen.instance.f);
            line["genspec"] = genspec_to_json(gen.genspec);
            line["holds"] = v.holds;
            if (v.evaluated) line["margin"] = v.margin;
            else line["margin"] = nullptr;
            if (v.binding_k > 0) line["binding_k"] = v.binding_k;
            else line["binding_k"] = nullptr;
            line["hypotheses_ok"] = v.hypotheses_ok;
            line["ms"] = opts.no_times ? 0.0 : ms;
            if (adj.status == TrialStatus::Inconclusive)
                line["warning"] = "inconclusive";
            row.line = line.dump();
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    for (const TrialRow& row : rows)
        if (!row.error.empty())
            throw Error("trial failed: " + row.error);

    CampaignResult res;
    res.trials = opts.trials;
    res.min_margin = std::numeric_limits<double>::infinity();
    res.min_certificate_margin = std::numeric_limits<double>::infinity();
    int first_violation = -1;
    for (int i = 0; i < opts.trials; ++i) {
        const TrialRow& row = rows[static_cast<size_t>(i)];
        res.jsonl.push_back(row.line);
        if (row.has_cert) {
            ++res.certificates;
            res.min_certificate_margin =
                std::min(res.min_certificate_margin, row.cert_margin);
            res.max_certificate_unitarity =
                std::max(res.max_certificate_unitarity, row.cert_unitarity);
        }
        switch (row.status) {
            case TrialStatus::Holds: ++res.holds; break;
            case TrialStatus::Inconclusive: ++res.inconclusive; break;
            case TrialStatus::Violated:
                ++res.violated;
                if (first_violation < 0) first_violation = i;
                break;
            case TrialStatus::HypothesisFailure:
                ++res.hypothesis_failures;
                break;
        }
        if (!std::isnan(row.margin))
            res.min_margin = std::min(res.min_margin, row.margin);
    }

    if (first_violation >= 0) {
        const GeneratedInstance gen = generate_instance(
            opts.claim, opts.seed, static_cast<std::uint64_t>(first_violation),
            opts.dim_max, opts.terms_max);
        const Instance shrunk =
            shrink_instance(gen.instance, [&](const Instance& candidate) {
                return violation_recheck(candidate, opts.tol);
            });
        res.witness = shrunk;
        res.witness_verdict =
            adjudicate(shrunk, opts.tol, false, false).verdict;
    }

    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return res;
}

CampaignResult run_campaign(const CampaignOptions& opts) {
    return run_campaign_with(opts, [&](const Instance& inst, double tol) {
        return adjudicate(inst, tol, false, opts.want_certificates);
    });
}

namespace {

// Falsification targets draw adversarial ensembles directly; the salt
// keeps the three target streams disjoint for a shared seed.
Instance make_falsify_instance(const std::string& target, std::uint64_t seed,
                               std::uint64_t trial, int dim_max) {
    Rng rng = Rng::substream(seed ^ fnv1a64(target), trial);
    Instance inst;
    inst.claim = target;

    if (target == "loewner-subadd") {
        const int dm = dim_max > 0 ? dim_max : 2;
        const int lo = std::min(2, dm);
        const int n = lo + rng.below(dm - lo + 1);
        inst.f = ScalarFunction::sqrt();
        inst.terms.push_back({random_psd(rng, n), std::nullopt});
        inst.terms.push_back({random_psd(rng, n), std::nullopt});
        return inst;
    }
    if (target == "eq4-nonpsd") {
        const int dm = dim_max > 0 ? dim_max : 3;
        const int lo = std::min(2, dm);
        const int n = lo + rng.below(dm - lo + 1);
        inst.f = reals_concave_catalog()[static_cast<size_t>(
            rng.below(static_cast<int>(reals_concave_catalog().size())))];
        InstanceTerm t;
        t.a = random_hermitian(rng, n);
        t.z = random_expansive(rng, n);
        inst.terms.push_back(std::move(t));
        return inst;
    }
    if (target == "eq2-reversed") {
        const int dm = dim_max > 0 ? dim_max : 3;
        const int lo = std::min(2, dm);
        const int n = lo + rng.below(dm - lo + 1);
        static const std::vector<ScalarFunction> fs = {
            ScalarFunction::sqrt(), ScalarFunction::log1p(),
            ScalarFunction::power(0.7), ScalarFunction::clamp(1.0)};
        inst.f = fs[static_cast<size_t>(rng.below(static_cast<int>(fs.size())))];
        InstanceTerm t;
        t.a = random_psd(rng, n);
        t.z = random_expansive(rng, n);
        inst.terms.push_back(std::move(t));
        return inst;
    }
    throw ParseError("unknown falsification target: " + target);
}

}  // namespace

FalsifyResult run_falsify_search(const FalsifyOptions& opts) {
    if (opts.target != "loewner-subadd" && opts.target != "eq4-nonpsd" &&
        opts.target != "eq2-reversed")
        throw ParseError("unknown falsification target: " + opts.target);

    FalsifyResult res;
    constexpr std::uint64_t kChunk = 512;
    for (std::uint64_t base = 0; base < opts.budget; base += kChunk) {
        const int count =
            static_cast<int>(std::min<std::uint64_t>(kChunk, opts.budget - base));
        std::vector<char> found(static_cast<size_t>(count), 0);
        std::vector<std::string> errors(static_cast<size_t>(count));
        parallel_for(count, opts.jobs, [&](int i) {
            try {
                const Instance inst = make_falsify_instance(
                    opts.target, opts.seed, base + static_cast<std::uint64_t>(i),
                    opts.dim_max);
                if (adjudicate(inst, opts.tol, false, false).status ==
                    TrialStatus::Violated)
                    found[static_cast<size_t>(i)] = 1;
            } catch (const std::exception& e) {
                errors[static_cast<size_t>(i)] = e.what();
            }
        });
        for (int i = 0; i < count; ++i) {
            if (!errors[static_cast<size_t>(i)].empty())
                throw Error("falsify trial failed: " + errors[static_cast<size_t>(i)]);
            if (!found[static_cast<size_t>(i)]) continue;
            const std::uint64_t trial = base + static_cast<std::uint64_t>(i);
            res.found = true;
            res.trials_used = trial + 1;
            const Instance raw =
                make_falsify_instance(opts.target, opts.seed, trial, opts.dim_max);
            const Instance shrunk =
                shrink_instance(raw, [&](const Instance& candidate) {
                    return violation_recheck(candidate, opts.tol);
                });
            res.witness = shrunk;
            res.witness_verdict = adjudicate(shrunk, opts.tol, false, false).verdict;
            return res;
        }
    }
    res.trials_used = opts.budget;
    return res;
}

int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        json j = load_json_file(opts.instance_path);
        // Witness files wrap the instance next to the recorded verdict.
        if (j.is_object() && j.contains("instance")) j = j["instance"];
        Instance inst = instance_from_json(j);
        if (!opts.claim_override.empty()) inst.claim = opts.claim_override;
        if (inst.claim.empty()) {
            err << "error: no claim given (instance file has no \"claim\" and "
                   "--claim not passed)\n";
            return 2;
        }
        if (!known_claim(inst.claim)) {
            err << "error: unknown claim id: " << inst.claim << "\n";
            return 2;
        }

        const Adjudication adj =
            adjudicate(inst, opts.tol, opts.force, true);
        json report = verdict_to_json(adj.verdict);
        report["tightened"] = adj.tightened;
        switch (adj.status) {
            case TrialStatus::HypothesisFailure:
                report["status"] = "hypothesis-failure";
                out << report.dump(2) << "\n";
                err << "error: hypothesis checks failed (use --force to "
                       "evaluate anyway)\n";
                return 2;
            case TrialStatus::Holds:
                report["status"] = "holds";
                out << report.dump(2) << "\n";
                return 0;
            case TrialStatus::Inconclusive:
                report["status"] = "inconclusive";
                report["warning"] =
                    "margin in the round-off buffer zone after tight re-run";
                out << report.dump(2) << "\n";
                return 0;
            case TrialStatus::Violated:
                report["status"] = "violated";
                out << report.dump(2) << "\n";
                return 1;
        }
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_fuzz(const FuzzCliOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const CampaignResult res = run_campaign(opts.campaign);

        if (opts.out_path.empty()) {
            for (const std::string& line : res.jsonl) out << line << "\n";
        } else {
            std::ofstream file(opts.out_path);
            if (!file) throw Error("cannot write report: " + opts.out_path);
            for (const std::string& line : res.jsonl) file << line << "\n";
        }

        err << "claim=" << opts.campaign.claim << " trials=" << res.trials
            << " holds=" << res.holds << " inconclusive=" << res.inconclusive
            << " violated=" << res.violated
            << " hypothesis_failures=" << res.hypothesis_failures
            << " min_margin=" << res.min_margin << " ms=" << res.elapsed_ms
            << "\n";

        if (res.witness) {
            std::string wpath = opts.witness_path;
            if (wpath.empty())
                wpath = opts.out_path.empty() ? "witness.json"
                                              : opts.out_path + ".witness.json";
            json w;
            w["instance"] = instance_to_json(*res.witness);
            w["verdict"] = verdict_to_json(*res.witness_verdict);
            write_json_file(wpath, w);
            err << "violation found; shrunk witness written to " << wpath << "\n";
        }
        return res.violated == 0 && res.hypothesis_failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_falsify(const FalsifyCliOptions& opts, std::ostream& out,
                std::ostream& err) {
    try {
        const FalsifyResult res = run_falsify_search(opts.search);
        if (!res.found) {
            err << "no counterexample for " << opts.search.target << " within "
                << opts.search.budget << " trials\n";
            return 1;
        }
        const std::string wpath =
            opts.out_path.empty() ? "witness.json" : opts.out_path;
        json w;
        w["instance"] = instance_to_json(*res.witness);
        w["verdict"] = verdict_to_json(*res.witness_verdict);
        write_json_file(wpath, w);

        json summary;
        summary["target"] = opts.search.target;
        summary["trials_used"] = res.trials_used;
        summary["witness"] = wpath;
        summary["margin"] = res.witness_verdict->margin;
        out << summary.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_certify(const CertifyOptions& opts, std::ostream& out,
                std::ostream& err) {
    try {
        const json j = load_json_file(opts.instance_path);
        json report;

        if (opts.claim == "thm-dominance") {
            if (!j.contains("L") || !j.contains("R"))
                throw ParseError(
                    "thm-dominance certification needs \"L\" and \"R\" matrices");
            const HermitianMatrix l = hermitian_from_json(j["L"]);
            const HermitianMatrix r = hermitian_from_json(j["R"]);
            const UnitaryCertificate cert = dominance_unitary(l, r);
            report["claim"] = "thm-dominance";
            report["certificate"] = certificate_to_json(cert);
        } else if (opts.claim == "eq2" || opts.claim == "contractive-sum") {
            Instance inst = instance_from_json(j);
            inst.claim = opts.claim;
            EvalOptions eo;
            eo.tol = opts.tol;
            const Verdict v = evaluate_claim(inst, eo);
            if (!v.hypotheses_ok) {
                err << "error: hypothesis checks failed for " << opts.claim
                    << "\n";
                return 2;
            }
            if (!v.holds || !v.certificate)
                throw DominanceError(
                    "entrywise eigenvalue dominance fails; no certificate",
                    v.binding_k);
            report["claim"] = opts.claim;
            report["margin"] = v.margin;
            report["scale"] = v.scale;
            report["certificate"] = certificate_to_json(*v.certificate);
        } else {
            err << "error: certify supports eq2, contractive-sum, "
                   "thm-dominance\n";
            return 2;
        }

        if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
        out << report.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_approx(const ApproxOptions& opts, std::ostream& out,
               std::ostream& err) {
    try {
        if (opts.a <= 0.0) throw PreconditionError("a must be positive");
        if (opts.rs.empty()) throw PreconditionError("need at least one r");
        for (double r : opts.rs)
            if (r <= 0.0) throw PreconditionError("r values must be positive");
        if (opts.grid_points < 2 || opts.grid_hi <= opts.grid_lo ||
            opts.grid_lo < 0.0)
            throw PreconditionError("grid must be lo:hi:points with hi > lo >= 0");

        const ScalarFunction gamma = ScalarFunction::angle(opts.a);
        std::vector<ScalarFunction> hs;
        for (double r : opts.rs) hs.push_back(ScalarFunction::smoother(opts.a, r));

        std::string csv;
        char buf[192];
        csv += "t,gamma";
        for (double r : opts.rs) {
            std::snprintf(buf, sizeof(buf), ",h_r=%g", r);
            csv += buf;
        }
        csv += "\n";

        std::vector<double> sup_gap(opts.rs.size(), 0.0);
        for (int i = 0; i < opts.grid_points; ++i) {
            const double t = opts.grid_lo + (opts.grid_hi - opts.grid_lo) * i /
                                                (opts.grid_points - 1);
            const double g = eval(gamma, t);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", t, g);
            csv += buf;
            for (size_t ri = 0; ri < hs.size(); ++ri) {
                const double h = eval(hs[ri], t);
                sup_gap[ri] = std::max(sup_gap[ri], std::abs(h - g));
                std::snprintf(buf, sizeof(buf), ",%.17g", h);
                csv += buf;
            }
            csv += "\n";
        }

        bool all_ok = true;
        for (size_t ri = 0; ri < opts.rs.size(); ++ri) {
            const double bound = std::sqrt(opts.rs[ri]);
            const bool ok = sup_gap[ri] <= bound;
            all_ok = all_ok && ok;
            std::snprintf(buf, sizeof(buf), "# sup_gap r=%g gap=%.17g bound=%.17g ok=%d\n",
                          opts.rs[ri], sup_gap[ri], bound, ok ? 1 : 0);
            csv += buf;
        }

        if (opts.out_path.empty()) {
            out << csv;
        } else {
            std::ofstream file(opts.out_path);
            if (!file) throw Error("cannot write: " + opts.out_path);
            file << csv;
        }
        if (!all_ok) {
            err << "error: sup-gap bound sqrt(r) violated\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace normlab
