#include <cmath>
#include <cstdio>

#include "normlab/generators.hpp"
#include "normlab/harness.hpp"

namespace normlab {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

HermitianMatrix draw_psd_variant(Rng& rng, int n, std::vector<std::string>& tags) {
    const int roll = rng.below(10);
    if (n >= 2 && roll == 7) {
        const int rank = 1 + rng.below(n - 1);
        tags.push_back("psd-rank-deficient(" + std::to_string(rank) + ")");
        return random_psd_rank_deficient(rng, n, rank);
    }
    if (n >= 2 && roll == 8) {
        tags.push_back("psd-degenerate-spectrum");
        return random_psd_degenerate(rng, n);
    }
    tags.push_back("psd");
    return random_psd(rng, n);
}

ComplexMatrix draw_expansive_variant(Rng& rng, int n,
                                     std::vector<std::string>& tags) {
    const int roll = rng.below(10);
    if (roll == 6) {
        static const double eps_menu[] = {0.0, 0.001, 0.1};
        const double eps = eps_menu[rng.below(3)];
        tags.push_back("expansive-near-identity(" + fmt(eps) + ")");
        return random_expansive_near_identity(rng, n, eps);
    }
    if (roll == 7) {
        tags.push_back("unitary");
        return random_unitary(rng, n);
    }
    tags.push_back("expansive");
    return random_expansive(rng, n);
}

ComplexMatrix draw_contraction_variant(Rng& rng, int n,
                                       std::vector<std::string>& tags) {
    const int roll = rng.below(10);
    if (roll == 7) {
        tags.push_back("unitary");
        return random_unitary(rng, n);
    }
    tags.push_back("contraction");
    return random_contraction(rng, n);
}

ScalarFunction draw_from(Rng& rng, const std::vector<ScalarFunction>& catalog) {
    return catalog[static_cast<size_t>(rng.below(static_cast<int>(catalog.size())))];
}

}  // namespace

GeneratedInstance generate_instance(const std::string& claim,
                                    std::uint64_t seed, std::uint64_t trial,
                                    int dim_max, int terms_max) {
    if (!known_claim(claim)) throw ParseError("unknown claim id: " + claim);
    if (dim_max < 1 || dim_max > kMaxDim)
        throw PreconditionError("dim_max out of range");
    if (terms_max < 1) throw PreconditionError("terms_max must be >= 1");

    Rng rng = Rng::substream(seed, trial);
    GeneratedInstance out;
    GenSpec& gs = out.genspec;
    gs.seed = seed;
    gs.trial = trial;
    gs.dim_max = dim_max;
    gs.terms_max = terms_max;

    Instance& inst = out.instance;
    inst.claim = claim;

    // Negative claims only bite from dimension 2 up; scalar instances of
    // them are provably clean and would waste the search budget.
    const bool needs_dim2 = claim == "loewner-subadd" || claim == "eq4-nonpsd" ||
                            claim == "eq2-reversed";
    const int lo = needs_dim2 ? std::min(2, dim_max) : 1;
    const int n = lo + rng.below(dim_max - lo + 1);
    gs.n = n;

    int m = 1;
    if (claim == "thm31" || claim == "cor32" || claim == "thm11" ||
        claim == "contractive-sum")
        m = 1 + rng.below(terms_max);
    else if (claim == "thm22")
        m = terms_max >= 2 ? 2 + rng.below(terms_max - 1) : 1;
    else if (claim == "eq5" || claim == "eq6-weyl" || claim == "uchiyama" ||
             claim == "eq9" || claim == "loewner-subadd")
        m = 2;
    gs.m = m;

    if (claim == "cor32" || claim == "eq9")
        inst.f = draw_from(rng, convex_catalog());
    else if (claim == "thm11") {
        static const double ps[] = {2.0, 2.5, 3.0};
        inst.f = ScalarFunction::power(ps[rng.below(3)]);
    } else if (claim == "eq3" || claim == "eq3-reversed")
        inst.f = draw_from(rng, operator_concave_catalog());
    else if (claim == "eq1-hermitian" || claim == "eq4-nonpsd")
        inst.f = draw_from(rng, reals_concave_catalog());
    else if (claim == "contractive-sum")
        inst.f = draw_from(rng, monotone_concave_catalog());
    else
        inst.f = draw_from(rng, concave_catalog());
    gs.f_name = inst.f.name();

    if (claim == "contractive-sum") {
        std::vector<ComplexMatrix> family = random_contractive_family(rng, n, m);
        for (int i = 0; i < m; ++i) {
            InstanceTerm t;
            t.a = draw_psd_variant(rng, n, gs.ensembles);
            t.z = family[static_cast<size_t>(i)];
            gs.ensembles.push_back("contractive-family");
            inst.terms.push_back(std::move(t));
        }
    } else if (claim == "uchiyama") {
        for (int i = 0; i < m; ++i) {
            InstanceTerm t;
            t.z = random_general(rng, n);
            gs.ensembles.push_back("general");
            inst.terms.push_back(std::move(t));
        }
    } else {
        for (int i = 0; i < m; ++i) {
            InstanceTerm t;
            if (claim == "eq1-hermitian" || claim == "eq4-nonpsd") {
                t.a = random_hermitian(rng, n);
                gs.ensembles.push_back("hermitian-indefinite");
            } else {
                t.a = draw_psd_variant(rng, n, gs.ensembles);
            }

            if (claim == "thm31" || claim == "thm21" || claim == "cor32" ||
                claim == "thm11" || claim == "eq9" || claim == "eq2-reversed" ||
                claim == "eq3-reversed" || claim == "eq4" ||
                claim == "eq4-nonpsd") {
                t.z = draw_expansive_variant(rng, n, gs.ensembles);
            } else if (claim == "eq1" || claim == "eq1-hermitian" ||
                       claim == "eq2" || claim == "eq3") {
                t.z = draw_contraction_variant(rng, n, gs.ensembles);
            } else {
                gs.ensembles.push_back("identity");
            }
            inst.terms.push_back(std::move(t));
        }
    }

    if (claim == "eq9") {
        inst.k = 1 + rng.below(n);
        gs.k = inst.k;
    }
    return out;
}

json genspec_to_json(const GenSpec& g) {
    json j;
    j["seed"] = g.seed;
    j["trial"] = g.trial;
    j["dim_max"] = g.dim_max;
    j["terms_max"] = g.terms_max;
    j["n"] = g.n;
    j["m"] = g.m;
    j["ensembles"] = g.ensembles;
    if (g.k) j["k"] = *g.k;
    return j;
}

namespace {

Instance compressed(const Instance& inst, const std::vector<int>& keep) {
    Instance out;
    out.claim = inst.claim;
    out.f = inst.f;
    if (inst.k) out.k = std::min(*inst.k, static_cast<int>(keep.size()));
    for (const InstanceTerm& t : inst.terms) {
        InstanceTerm nt;
        if (t.a) nt.a = t.a->submatrix(keep);
        if (t.z) nt.z = t.z->submatrix(keep);
        out.terms.push_back(std::move(nt));
    }
    return out;
}

double round_to(double x, double scale) { return std::round(x * scale) / scale; }

Instance rounded(const Instance& inst, int digits) {
    const double scale = std::pow(10.0, digits);
    const auto round_matrix = [&](const ComplexMatrix& m) {
        ComplexMatrix out(m.dim());
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j)
                out(i, j) = cxd(round_to(m(i, j).real(), scale),
                                round_to(m(i, j).imag(), scale));
        return out;
    };
    Instance out;
    out.claim = inst.claim;
    out.f = inst.f;
    out.k = inst.k;
    for (const InstanceTerm& t : inst.terms) {
        InstanceTerm nt;
        if (t.a) nt.a = HermitianMatrix(round_matrix(t.a->matrix()));
        if (t.z) nt.z = round_matrix(*t.z);
        out.terms.push_back(std::move(nt));
    }
    return out;
}

// Lexicographic combinations of {0..n-1} of a given size.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
        idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

Instance shrink_instance(
    const Instance& failing,
    const std::function<bool(const Instance&)>& still_fails) {
    Instance cur = failing;

    // Principal submatrix reduction: smallest still-failing dimension wins.
    const int n = cur.dim();
    bool compressed_ok = false;
    for (int size = 1; size < n && !compressed_ok; ++size) {
        std::vector<int> keep(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) keep[static_cast<size_t>(i)] = i;
        do {
            Instance candidate = compressed(cur, keep);
            if (still_fails(candidate)) {
                cur = std::move(candidate);
                compressed_ok = true;
                break;
            }
        } while (next_combination(keep, n));
    }

    // Entry rounding: coarsest digit count that keeps the violation.
    for (int digits = 1; digits <= 12; ++digits) {
        Instance candidate = rounded(cur, digits);
        if (still_fails(candidate)) {
            cur = std::move(candidate);
            break;
        }
    }

    // Term-count reduction.
    bool dropped = true;
    while (dropped && cur.terms.size() > 1) {
        dropped = false;
        for (size_t i = 0; i < cur.terms.size(); ++i) {
            Instance candidate = cur;
            candidate.terms.erase(candidate.terms.begin() +
                                  static_cast<std::ptrdiff_t>(i));
            if (still_fails(candidate)) {
                cur = std::move(candidate);
                dropped = true;
                break;
            }
        }
    }
    return cur;
}

}  // namespace normlab
