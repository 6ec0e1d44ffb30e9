#pragma once

#include <functional>
#include <iosfwd>
#include <optional>

#include "normlab/claims.hpp"
#include "normlab/io.hpp"

namespace normlab {

// Everything needed to regenerate one trial's instance without storing
// matrices: the root seed, the trial index, the draw bounds, plus the
// values actually drawn (recorded for the report).
struct GenSpec {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    int dim_max = 8;
    int terms_max = 4;
    int n = 0;
    int m = 0;
    std::vector<std::string> ensembles;
    std::string f_name;
    std::optional<int> k;
};

struct GeneratedInstance {
    Instance instance;
    GenSpec genspec;
};

// Deterministic, claim-appropriate instance for trial (seed, index).
GeneratedInstance generate_instance(const std::string& claim,
                                    std::uint64_t seed, std::uint64_t trial,
                                    int dim_max, int terms_max);

json genspec_to_json(const GenSpec& g);

// Greedy counterexample reduction: principal submatrix compression,
// entry rounding, then term dropping, keeping only steps after which
// still_fails(candidate) stays true.
Instance shrink_instance(const Instance& failing,
                         const std::function<bool(const Instance&)>& still_fails);

enum class TrialStatus { Holds, Inconclusive, Violated, HypothesisFailure };

// Margin classification pipeline: a raw run at the default eigensolver
// threshold, then (only when the raw margin is suspicious) a tight re-run
// at threshold 1e-15. A violation must clear -1e-6*scale raw and
// -1e-7*scale tight; the band in between is inconclusive.
struct Adjudication {
    TrialStatus status = TrialStatus::Holds;
    Verdict verdict;  // the deciding verdict (tight one if a re-run happened)
    bool tightened = false;
};

Adjudication adjudicate(const Instance& inst, double tol, bool force = false,
                        bool want_certificate = true);

struct CampaignOptions {
    std::string claim;
    int trials = 1000;
    int dim_max = 8;
    int terms_max = 4;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    int jobs = 0;  // 0 = hardware concurrency
    bool no_times = false;
    bool want_certificates = true;
};

struct CampaignResult {
    int trials = 0;
    int holds = 0;
    int inconclusive = 0;
    int violated = 0;
    int hypothesis_failures = 0;
    int certificates = 0;
    double min_certificate_margin = 0.0;
    double max_certificate_unitarity = 0.0;
    double min_margin = 0.0;
    double elapsed_ms = 0.0;
    std::vector<std::string> jsonl;  // one line per trial, ordered by index
    std::optional<Instance> witness;  // shrunk first violation
    std::optional<Verdict> witness_verdict;
};

CampaignResult run_campaign(const CampaignOptions& opts);

// Hook for tests: same trial loop with a caller-supplied evaluator.
CampaignResult run_campaign_with(
    const CampaignOptions& opts,
    const std::function<Adjudication(const Instance&, double)>& evaluate);

struct FalsifyOptions {
    std::string target;  // loewner-subadd | eq4-nonpsd | eq2-reversed
    std::uint64_t budget = 100000;
    std::uint64_t seed = 1;
    int dim_max = 0;  // 0 = target default
    double tol = 1e-8;
    int jobs = 0;
};

struct FalsifyResult {
    bool found = false;
    std::uint64_t trials_used = 0;
    std::optional<Instance> witness;  // shrunk
    std::optional<Verdict> witness_verdict;
};

FalsifyResult run_falsify_search(const FalsifyOptions& opts);

// CLI entry points; exit codes: 0 ok / counterexample found (falsify),
// 1 violation / budget exhausted (falsify), 2 usage or input errors.
struct CheckOptions {
    std::string instance_path;
    std::string claim_override;
    double tol = 1e-8;
    bool force = false;
};
int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

struct FuzzCliOptions {
    CampaignOptions campaign;
    std::string out_path;      // empty = stdout
    std::string witness_path;  // empty = derived from out_path
};
int run_fuzz(const FuzzCliOptions& opts, std::ostream& out, std::ostream& err);

struct FalsifyCliOptions {
    FalsifyOptions search;
    std::string out_path;  // witness file; empty = "witness.json"
};
int run_falsify(const FalsifyCliOptions& opts, std::ostream& out,
                std::ostream& err);

struct CertifyOptions {
    std::string instance_path;
    std::string claim;  // eq2 | contractive-sum | thm-dominance
    std::string out_path;  // empty = stdout only
    double tol = 1e-8;
};
int run_certify(const CertifyOptions& opts, std::ostream& out,
                std::ostream& err);

struct ApproxOptions {
    double a = 1.0;
    std::vector<double> rs = {1.0, 0.01};
    double grid_lo = 0.0;
    double grid_hi = 10.0;
    int grid_points = 1001;
    std::string out_path;  // empty = stdout
};
int run_approx(const ApproxOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace normlab
