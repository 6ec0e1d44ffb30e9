#include "normlab/claims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normlab/generators.hpp"

namespace normlab {

namespace {

constexpr double kTagTol = 1e-12;     // tolerance on recorded tag values
constexpr double kIdentityTol = 1e-10;

ComplexMatrix term_z(const InstanceTerm& t, int n) {
    return t.z ? *t.z : ComplexMatrix::identity(n);
}

const HermitianMatrix& term_a(const InstanceTerm& t) {
    if (!t.a) throw PreconditionError("claim requires an A operand in every term");
    return *t.a;
}

double trace_norm(const HermitianMatrix& h, const EigOptions& opts) {
    const Spectrum s = eig_hermitian(h, opts);
    double sum = 0.0;
    for (double v : s.eigenvalues) sum += std::abs(v);
    return sum;
}

double max_eigenvalue(const HermitianMatrix& h, const EigOptions& opts) {
    return eig_hermitian(h, opts).eigenvalues.front();
}

// Sum of Z_i* A_i Z_i, optionally with f applied to each A_i first.
HermitianMatrix congruence_sum(const Instance& inst, bool apply_f,
                               const EvalOptions& opts) {
    const int n = inst.dim();
    HermitianMatrix acc = HermitianMatrix::zero(n);
    for (const InstanceTerm& t : inst.terms) {
        const HermitianMatrix& a = term_a(t);
        const HermitianMatrix base =
            apply_f ? apply_scalar_function(a, inst.f, opts.eig) : a;
        acc = acc + congruence(term_z(t, n), base);
    }
    return acc;
}

struct HypothesisSet {
    std::vector<HypothesisCheck> checks;
    bool ok = true;

    void add(const std::string& name, bool good, double value) {
        checks.push_back({name, good, value});
        ok = ok && good;
    }
};

void hyp_term_count(HypothesisSet& h, const Instance& inst, int exactly) {
    h.add("term_count", static_cast<int>(inst.terms.size()) == exactly,
          static_cast<double>(inst.terms.size()));
}

void hyp_a_psd(HypothesisSet& h, const Instance& inst, const EvalOptions& o) {
    for (size_t i = 0; i < inst.terms.size(); ++i) {
        const HermitianMatrix& a = term_a(inst.terms[i]);
        const Spectrum s = eig_hermitian(a, o.eig);
        const double lo = s.eigenvalues.back();
        const double op = std::max(std::abs(s.eigenvalues.front()), std::abs(lo));
        h.add("A_psd[" + std::to_string(i) + "]",
              lo >= -o.tol * std::max(1.0, op), lo);
    }
}

void hyp_a_present(HypothesisSet& h, const Instance& inst) {
    for (size_t i = 0; i < inst.terms.size(); ++i)
        h.add("A_present[" + std::to_string(i) + "]",
              inst.terms[i].a.has_value(), 0.0);
}

void hyp_z_expansive(HypothesisSet& h, const Instance& inst,
                     const EvalOptions& o) {
    const int n = inst.dim();
    for (size_t i = 0; i < inst.terms.size(); ++i) {
        const double smin =
            singular_values(term_z(inst.terms[i], n), o.eig).back();
        h.add("Z_expansive[" + std::to_string(i) + "]", smin >= 1.0 - o.tol,
              smin);
    }
}

void hyp_z_contraction(HypothesisSet& h, const Instance& inst,
                       const EvalOptions& o) {
    const int n = inst.dim();
    for (size_t i = 0; i < inst.terms.size(); ++i) {
        const double smax =
            singular_values(term_z(inst.terms[i], n), o.eig).front();
        h.add("Z_contraction[" + std::to_string(i) + "]", smax <= 1.0 + o.tol,
              smax);
    }
}

void hyp_z_identity(HypothesisSet& h, const Instance& inst) {
    const int n = inst.dim();
    for (size_t i = 0; i < inst.terms.size(); ++i) {
        const InstanceTerm& t = inst.terms[i];
        double dev = 0.0;
        if (t.z) dev = (*t.z - ComplexMatrix::identity(n)).frobenius_norm();
        h.add("Z_identity[" + std::to_string(i) + "]",
              dev <= kIdentityTol * std::sqrt(static_cast<double>(n)), dev);
    }
}

void hyp_family_contractive(HypothesisSet& h, const Instance& inst,
                            const EvalOptions& o) {
    const int n = inst.dim();
    HermitianMatrix sum = HermitianMatrix::zero(n);
    for (const InstanceTerm& t : inst.terms) {
        const ComplexMatrix z = term_z(t, n);
        sum = sum + HermitianMatrix(z.adjoint() * z);
    }
    const double top = max_eigenvalue(sum, o.eig);
    h.add("family_sum_contractive", top <= 1.0 + o.tol, top);
}

void hyp_operands_in_z(HypothesisSet& h, const Instance& inst) {
    for (size_t i = 0; i < inst.terms.size(); ++i)
        h.add("operand_present[" + std::to_string(i) + "]",
              inst.terms[i].z.has_value(), 0.0);
}

// Upper bound for the spectra every f in this instance will see.
double spectral_range(const Instance& inst, const EvalOptions& o) {
    const int n = inst.dim();
    double max_a = 0.0, max_z = 1.0;
    for (const InstanceTerm& t : inst.terms) {
        if (t.a)
            max_a = std::max(max_a, std::max(0.0, max_eigenvalue(*t.a, o.eig)));
        const std::vector<double> sv = singular_values(term_z(t, n), o.eig);
        max_z = std::max(max_z, sv.front());
        if (!t.a) max_a = std::max(max_a, sv.front());  // general operands
    }
    return std::max(1.0, max_a) * max_z * max_z *
           std::max<double>(1.0, static_cast<double>(inst.terms.size()));
}

void hyp_f_concave(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_concave", f.concave_tagged(), 0.0);
}

void hyp_f_convex(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_convex", f.convex_tagged(), 0.0);
}

void hyp_f_zero_nonneg(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_zero_nonneg", f.value_at_zero >= -kTagTol, f.value_at_zero);
}

void hyp_f_vanishes_at_zero(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_vanishes_at_zero", std::abs(f.value_at_zero) <= kTagTol,
          f.value_at_zero);
}

void hyp_f_nonneg_sampled(HypothesisSet& h, const ScalarFunction& f,
                          double hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double v = eval(f, hi * i / 32.0);
        mn = std::min(mn, v);
        mx = std::max(mx, std::abs(v));
    }
    h.add("f_nonneg_sampled", mn >= -1e-9 * std::max(1.0, mx), mn);
}

void hyp_f_operator_concave(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_operator_concave", f.operator_concave, 0.0);
}

void hyp_f_domain_reals(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_domain_reals", f.domain == FunctionDomain::Reals, 0.0);
}

void hyp_f_monotone(HypothesisSet& h, const ScalarFunction& f) {
    h.add("f_monotone", f.monotone, 0.0);
}

std::vector<double> herm_eigenvalues(const HermitianMatrix& m,
                                     const EigOptions& opts) {
    return eig_hermitian(m, opts).eigenvalues;
}

// Shared scaffolding: margin + tolerance bookkeeping.
void finish(Verdict& v, double margin, double scale, const EvalOptions& o) {
    v.evaluated = true;
    v.margin = margin;
    v.scale = std::max(1.0, scale);
    v.tolerance_used = o.tol * v.scale;
    v.holds = margin >= -v.tolerance_used;
}

// Ky Fan dominance verdict for L <= R over every k.
void kyfan_verdict(Verdict& v, const HermitianMatrix& l, const HermitianMatrix& r,
                   const EvalOptions& o) {
    const DominanceResult dom =
        ky_fan_dominance(l.matrix(), r.matrix(), o.tol, o.eig);
    v.per_k_margins = dom.margins;
    v.binding_k = dom.binding_k;
    const double scale =
        std::max({1.0, trace_norm(l, o.eig), trace_norm(r, o.eig)});
    finish(v, dom.min_margin, scale, o);
}

// Entrywise eigenvalue dominance verdict: lambda_j(top) >= lambda_j(bottom)
// for every j.
void entrywise_verdict(Verdict& v, const HermitianMatrix& top,
                       const HermitianMatrix& bottom, const EvalOptions& o) {
    const std::vector<double> lt = herm_eigenvalues(top, o.eig);
    const std::vector<double> lb = herm_eigenvalues(bottom, o.eig);
    double mn = std::numeric_limits<double>::infinity();
    double tr_top = 0.0, tr_bottom = 0.0;
    v.per_k_margins.resize(lt.size());
    for (size_t j = 0; j < lt.size(); ++j) {
        v.per_k_margins[j] = lt[j] - lb[j];
        if (v.per_k_margins[j] < mn) {
            mn = v.per_k_margins[j];
            v.binding_k = static_cast<int>(j) + 1;
        }
        tr_top += std::abs(lt[j]);
        tr_bottom += std::abs(lb[j]);
    }
    finish(v, mn, std::max(tr_top, tr_bottom), o);
}

void loewner_verdict(Verdict& v, const HermitianMatrix& small,
                     const HermitianMatrix& big, const EvalOptions& o) {
    const Spectrum d = eig_hermitian(big - small, o.eig);
    const double scale =
        std::max(trace_norm(small, o.eig), trace_norm(big, o.eig));
    finish(v, d.eigenvalues.back(), scale, o);
}

void trace_verdict(Verdict& v, double lhs_trace, double rhs_trace,
                   double side_scale, const EvalOptions& o) {
    // Claim shape: lhs <= rhs, margin = rhs - lhs.
    finish(v, rhs_trace - lhs_trace, side_scale, o);
}

void attach_certificate(Verdict& v, const HermitianMatrix& l,
                        const HermitianMatrix& r, const EvalOptions& o) {
    if (!o.want_certificate || !v.holds) return;
    v.certificate = dominance_unitary(l, r, o.eig);
    v.details["certificate_margin"] = v.certificate->loewner_margin;
    v.details["certificate_unitarity"] = v.certificate->unitarity_residual;
}

}  // namespace

int Instance::dim() const {
    if (terms.empty()) throw PreconditionError("instance has no terms");
    int n = 0;
    for (const InstanceTerm& t : terms) {
        if (!t.a && !t.z)
            throw PreconditionError("instance term has no operands");
        if (t.a) {
            if (n == 0) n = t.a->dim();
            if (t.a->dim() != n)
                throw DimensionError("instance terms disagree on dimension");
        }
        if (t.z) {
            if (n == 0) n = t.z->dim();
            if (t.z->dim() != n)
                throw DimensionError("instance terms disagree on dimension");
        }
    }
    return n;
}

const std::vector<std::string>& claim_ids() {
    static const std::vector<std::string> ids = {
        "thm31",    "thm21",        "thm22",           "cor32",
        "thm11",    "eq1",          "eq1-hermitian",   "eq2",
        "eq2-reversed", "eq3",      "eq3-reversed",    "eq4",
        "eq4-nonpsd",   "eq5",      "eq6-weyl",        "uchiyama",
        "contractive-sum",          "eq9",             "loewner-subadd",
    };
    return ids;
}

bool known_claim(const std::string& id) {
    const auto& ids = claim_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

UnitaryCertificate dominance_unitary(const HermitianMatrix& l,
                                     const HermitianMatrix& r,
                                     const EigOptions& opts) {
    if (l.dim() != r.dim())
        throw DimensionError("dominance_unitary dimension mismatch");
    const Spectrum sl = eig_hermitian(l, opts);
    const Spectrum sr = eig_hermitian(r, opts);

    const double scale = std::max(
        {1.0, std::abs(sl.eigenvalues.front()), std::abs(sl.eigenvalues.back()),
         std::abs(sr.eigenvalues.front()), std::abs(sr.eigenvalues.back())});
    for (size_t j = 0; j < sl.eigenvalues.size(); ++j)
        if (sl.eigenvalues[j] < sr.eigenvalues[j] - 1e-9 * scale)
            throw DominanceError(
                "entrywise eigenvalue dominance fails at index " +
                    std::to_string(j + 1),
                static_cast<int>(j) + 1);

    UnitaryCertificate cert;
    cert.v = sl.eigenvectors * sr.eigenvectors.adjoint();

    const int n = l.dim();
    cert.unitarity_residual =
        (cert.v.adjoint() * cert.v - ComplexMatrix::identity(n)).frobenius_norm();

    // Independent re-verification with a fresh decomposition.
    const HermitianMatrix conjugated(cert.v * r.matrix() * cert.v.adjoint());
    const LoewnerResult lw = loewner_leq(conjugated, l, 1e-8, opts);
    cert.loewner_margin = lw.margin;
    if (cert.unitarity_residual > 1e-9)
        throw CertificateError("certificate unitary drifted from unitarity",
                               cert.unitarity_residual);
    if (!lw.holds)
        throw CertificateError("certificate failed Loewner re-verification",
                               lw.margin);
    return cert;
}

Eq6Witness search_eq6_witness(const HermitianMatrix& a, const HermitianMatrix& b,
                              const ScalarFunction& f, std::uint64_t budget,
                              std::uint64_t seed, const EvalOptions& opts) {
    const int n = a.dim();
    if (b.dim() != n) throw DimensionError("search_eq6_witness dimension mismatch");
    const HermitianMatrix fa = apply_scalar_function(a, f, opts.eig);
    const HermitianMatrix fb = apply_scalar_function(b, f, opts.eig);
    const HermitianMatrix t = apply_scalar_function(a + b, f, opts.eig);
    const double scale =
        std::max({1.0, trace_norm(t, opts.eig),
                  trace_norm(fa, opts.eig) + trace_norm(fb, opts.eig)});
    const double accept = -1e-8 * scale;

    Eq6Witness best;
    best.margin = -std::numeric_limits<double>::infinity();

    const auto conjugate = [&](const ComplexMatrix& u, const HermitianMatrix& h) {
        return HermitianMatrix(u * h.matrix() * u.adjoint());
    };
    const auto align = [&](const HermitianMatrix& x, const HermitianMatrix& d) {
        const Spectrum sx = eig_hermitian(x, opts.eig);
        const Spectrum sd = eig_hermitian(d, opts.eig);
        return sd.eigenvectors * sx.eigenvectors.adjoint();
    };
    const auto margin_of = [&](const ComplexMatrix& u, const ComplexMatrix& v) {
        const HermitianMatrix sum = conjugate(u, fa) + conjugate(v, fb);
        ++best.evaluations;
        return eig_hermitian(sum - t, opts.eig).eigenvalues.back();
    };
    const auto consider = [&](const ComplexMatrix& u, const ComplexMatrix& v,
                              double m) {
        if (m > best.margin) {
            best.margin = m;
            best.u = u;
            best.v = v;
        }
        if (m >= accept) best.found = true;
        return best.found;
    };

    for (std::uint64_t restart = 0; best.evaluations < budget; ++restart) {
        Rng rng = Rng::substream(seed, restart);
        ComplexMatrix u = restart == 0 ? ComplexMatrix::identity(n)
                                       : random_unitary(rng, n);
        ComplexMatrix v = restart == 0 ? ComplexMatrix::identity(n)
                                       : random_unitary(rng, n);
        if (consider(u, v, margin_of(u, v))) return best;
        for (int iter = 0; iter < 16 && best.evaluations < budget; ++iter) {
            u = align(fa, t - conjugate(v, fb));
            if (consider(u, v, margin_of(u, v))) return best;
            if (best.evaluations >= budget) break;
            v = align(fb, t - conjugate(u, fa));
            if (consider(u, v, margin_of(u, v))) return best;
        }
    }
    return best;
}

namespace {

HypothesisSet collect_hypotheses(const Instance& inst, const EvalOptions& o) {
    HypothesisSet h;
    const std::string& c = inst.claim;
    const ScalarFunction& f = inst.f;

    if (c == "thm31" || c == "thm21" || c == "thm22") {
        if (c == "thm21") hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        if (c == "thm22") hyp_z_identity(h, inst);
        else hyp_z_expansive(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "cor32" || c == "thm11") {
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_expansive(h, inst, o);
        hyp_f_convex(h, f);
        hyp_f_vanishes_at_zero(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
        if (c == "thm11")
            h.add("f_power_p_gt_1",
                  f.kind == FunctionKind::Power && f.p > 1.0, f.p);
    } else if (c == "eq1" || c == "eq2") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_contraction(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "eq1-hermitian") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_z_contraction(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_domain_reals(h, f);
        hyp_f_zero_nonneg(h, f);
    } else if (c == "eq2-reversed") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_expansive(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "eq3" || c == "eq3-reversed") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        if (c == "eq3") hyp_z_contraction(h, inst, o);
        else hyp_z_expansive(h, inst, o);
        hyp_f_operator_concave(h, f);
        hyp_f_zero_nonneg(h, f);
    } else if (c == "eq4") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_expansive(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "eq4-nonpsd") {
        hyp_term_count(h, inst, 1);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_z_expansive(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_domain_reals(h, f);
        hyp_f_zero_nonneg(h, f);
    } else if (c == "eq5" || c == "eq6-weyl" || c == "loewner-subadd") {
        hyp_term_count(h, inst, 2);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_identity(h, inst);
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "uchiyama") {
        hyp_term_count(h, inst, 2);
        hyp_operands_in_z(h, inst);
        if (!h.ok) return h;
        hyp_f_concave(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
    } else if (c == "contractive-sum") {
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_family_contractive(h, inst, o);
        hyp_f_concave(h, f);
        hyp_f_monotone(h, f);
        hyp_f_zero_nonneg(h, f);
    } else if (c == "eq9") {
        hyp_term_count(h, inst, 2);
        hyp_a_present(h, inst);
        if (!h.ok) return h;
        hyp_a_psd(h, inst, o);
        hyp_z_expansive(h, inst, o);
        hyp_f_convex(h, f);
        hyp_f_vanishes_at_zero(h, f);
        hyp_f_nonneg_sampled(h, f, spectral_range(inst, o));
        const int n = inst.dim();
        const int k = inst.k.value_or(n);
        h.add("k_in_range", k >= 1 && k <= n, static_cast<double>(k));
    } else {
        throw ParseError("unknown claim id: " + c);
    }
    return h;
}

void eval_kyfan_family(Verdict& v, const Instance& inst, const EvalOptions& o) {
    // L = f(sum Z* A Z) vs R = sum Z* f(A) Z in every Ky Fan norm.
    const HermitianMatrix s = congruence_sum(inst, false, o);
    const HermitianMatrix l = apply_scalar_function(s, inst.f, o.eig);
    const HermitianMatrix r = congruence_sum(inst, true, o);
    kyfan_verdict(v, l, r, o);
}

void eval_convex_family(Verdict& v, const Instance& inst, const EvalOptions& o) {
    // Convex direction: L = sum Z* g(A) Z vs R = g(sum Z* A Z).
    const HermitianMatrix l = congruence_sum(inst, true, o);
    const HermitianMatrix r =
        apply_scalar_function(congruence_sum(inst, false, o), inst.f, o.eig);
    kyfan_verdict(v, l, r, o);
}

void eval_trace_congruence(Verdict& v, const Instance& inst,
                           const EvalOptions& o, bool reversed) {
    const int n = inst.dim();
    const InstanceTerm& t = inst.terms.front();
    const ComplexMatrix z = term_z(t, n);
    const HermitianMatrix fzaz =
        apply_scalar_function(congruence(z, term_a(t)), inst.f, o.eig);
    const HermitianMatrix zfaz =
        congruence(z, apply_scalar_function(term_a(t), inst.f, o.eig));
    const double scale =
        std::max(trace_norm(fzaz, o.eig), trace_norm(zfaz, o.eig));
    // eq1: Tr f(Z*AZ) >= Tr Z*f(A)Z; eq4 family reverses the comparison.
    if (reversed) trace_verdict(v, fzaz.trace(), zfaz.trace(), scale, o);
    else trace_verdict(v, zfaz.trace(), fzaz.trace(), scale, o);
}

void eval_eq2(Verdict& v, const Instance& inst, const EvalOptions& o,
              bool reversed) {
    const int n = inst.dim();
    const InstanceTerm& t = inst.terms.front();
    const ComplexMatrix z = term_z(t, n);
    const HermitianMatrix l =
        apply_scalar_function(congruence(z, term_a(t)), inst.f, o.eig);
    const HermitianMatrix r =
        congruence(z, apply_scalar_function(term_a(t), inst.f, o.eig));
    if (reversed) {
        entrywise_verdict(v, r, l, o);  // claims lambda_j(R) >= lambda_j(L)
    } else {
        entrywise_verdict(v, l, r, o);
        attach_certificate(v, l, r, o);
    }
}

void eval_eq3(Verdict& v, const Instance& inst, const EvalOptions& o,
              bool reversed) {
    const int n = inst.dim();
    const InstanceTerm& t = inst.terms.front();
    const ComplexMatrix z = term_z(t, n);
    const HermitianMatrix fzaz =
        apply_scalar_function(congruence(z, term_a(t)), inst.f, o.eig);
    const HermitianMatrix zfaz =
        congruence(z, apply_scalar_function(term_a(t), inst.f, o.eig));
    if (reversed) loewner_verdict(v, fzaz, zfaz, o);
    else loewner_verdict(v, zfaz, fzaz, o);
}

void eval_eq5(Verdict& v, const Instance& inst, const EvalOptions& o) {
    const HermitianMatrix& a = term_a(inst.terms[0]);
    const HermitianMatrix& b = term_a(inst.terms[1]);
    const HermitianMatrix fab = apply_scalar_function(a + b, inst.f, o.eig);
    const HermitianMatrix fa = apply_scalar_function(a, inst.f, o.eig);
    const HermitianMatrix fb = apply_scalar_function(b, inst.f, o.eig);
    const double scale = std::max(trace_norm(fab, o.eig),
                                  trace_norm(fa, o.eig) + trace_norm(fb, o.eig));
    trace_verdict(v, fab.trace(), fa.trace() + fb.trace(), scale, o);
}

void eval_eq6_weyl(Verdict& v, const Instance& inst, const EvalOptions& o) {
    const HermitianMatrix& a = term_a(inst.terms[0]);
    const HermitianMatrix& b = term_a(inst.terms[1]);
    const std::vector<double> la =
        herm_eigenvalues(apply_scalar_function(a, inst.f, o.eig), o.eig);
    const std::vector<double> lb =
        herm_eigenvalues(apply_scalar_function(b, inst.f, o.eig), o.eig);
    const HermitianMatrix fab = apply_scalar_function(a + b, inst.f, o.eig);
    const std::vector<double> lab = herm_eigenvalues(fab, o.eig);

    const int n = static_cast<int>(la.size());
    double mn = std::numeric_limits<double>::infinity();
    int bi = 1, bj = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; i + j - 1 <= n; ++j) {
            const double m = la[static_cast<size_t>(i - 1)] +
                             lb[static_cast<size_t>(j - 1)] -
                             lab[static_cast<size_t>(i + j - 2)];
            if (m < mn) {
                mn = m;
                bi = i;
                bj = j;
            }
        }
    double tr_a = 0.0, tr_b = 0.0, tr_ab = 0.0;
    for (double x : la) tr_a += std::abs(x);
    for (double x : lb) tr_b += std::abs(x);
    for (double x : lab) tr_ab += std::abs(x);
    v.details["binding_i"] = bi;
    v.details["binding_j"] = bj;
    finish(v, mn, std::max(tr_ab, tr_a + tr_b), o);
}

void eval_uchiyama(Verdict& v, const Instance& inst, const EvalOptions& o) {
    const ComplexMatrix& x = *inst.terms[0].z;
    const ComplexMatrix& y = *inst.terms[1].z;
    const HermitianMatrix fx =
        apply_scalar_function(abs_matrix(x, o.eig), inst.f, o.eig);
    const HermitianMatrix fy =
        apply_scalar_function(abs_matrix(y, o.eig), inst.f, o.eig);
    const HermitianMatrix fxy =
        apply_scalar_function(abs_matrix(x + y, o.eig), inst.f, o.eig);

    const std::vector<double> sx = singular_values(fx.matrix(), o.eig);
    const std::vector<double> sy = singular_values(fy.matrix(), o.eig);
    const std::vector<double> sxy = singular_values(fxy.matrix(), o.eig);

    double pl = 0.0, pr = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    v.per_k_margins.resize(sx.size());
    for (size_t k = 0; k < sx.size(); ++k) {
        pl += sxy[k];
        pr += sx[k] + sy[k];
        v.per_k_margins[k] = pr - pl;
        if (v.per_k_margins[k] < mn) {
            mn = v.per_k_margins[k];
            v.binding_k = static_cast<int>(k) + 1;
        }
    }
    finish(v, mn, std::max(pl, pr), o);
}

void eval_contractive_sum(Verdict& v, const Instance& inst,
                          const EvalOptions& o) {
    const HermitianMatrix l =
        apply_scalar_function(congruence_sum(inst, false, o), inst.f, o.eig);
    const HermitianMatrix r = congruence_sum(inst, true, o);
    entrywise_verdict(v, l, r, o);
    attach_certificate(v, l, r, o);
}

void eval_eq9(Verdict& v, const Instance& inst, const EvalOptions& o) {
    const int n = inst.dim();
    const int k = inst.k.value_or(n);
    const HermitianMatrix s = congruence_sum(inst, false, o);
    const Spectrum spec = eig_hermitian(s, o.eig);

    const HermitianMatrix hs = apply_scalar_function(s, inst.f, o.eig);
    const HermitianMatrix sum_h = congruence_sum(inst, true, o);

    // Compressed traces against the top-k eigenvectors of S.
    const auto compressed_trace = [&](const HermitianMatrix& m) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            cxd quad = 0.0;
            for (int row = 0; row < n; ++row) {
                cxd mrow = 0.0;
                for (int col = 0; col < n; ++col)
                    mrow += m(row, col) * spec.eigenvectors(col, j);
                quad += std::conj(spec.eigenvectors(row, j)) * mrow;
            }
            acc += quad.real();
        }
        return acc;
    };

    const double lhs = compressed_trace(sum_h);
    const double rhs = compressed_trace(hs);
    if (k < n)
        v.details["gap_at_cut"] = spec.eigenvalues[static_cast<size_t>(k - 1)] -
                                  spec.eigenvalues[static_cast<size_t>(k)];
    v.details["k"] = k;
    const double scale =
        std::max(trace_norm(hs, o.eig), trace_norm(sum_h, o.eig));
    trace_verdict(v, lhs, rhs, scale, o);
}

void eval_loewner_subadd(Verdict& v, const Instance& inst,
                         const EvalOptions& o) {
    const HermitianMatrix& a = term_a(inst.terms[0]);
    const HermitianMatrix& b = term_a(inst.terms[1]);
    const HermitianMatrix fab = apply_scalar_function(a + b, inst.f, o.eig);
    const HermitianMatrix sum = apply_scalar_function(a, inst.f, o.eig) +
                                apply_scalar_function(b, inst.f, o.eig);
    loewner_verdict(v, fab, sum, o);
}

}  // namespace

Verdict evaluate_claim(const Instance& inst, const EvalOptions& opts) {
    if (!known_claim(inst.claim))
        throw ParseError("unknown claim id: " + inst.claim);
    Verdict v;
    v.claim = inst.claim;
    inst.dim();  // validates operand consistency

    HypothesisSet hyps = collect_hypotheses(inst, opts);
    v.hypotheses = std::move(hyps.checks);
    v.hypotheses_ok = hyps.ok;
    if (!v.hypotheses_ok && !opts.force) return v;

    const std::string& c = inst.claim;
    if (c == "thm31" || c == "thm21" || c == "thm22")
        eval_kyfan_family(v, inst, opts);
    else if (c == "cor32" || c == "thm11")
        eval_convex_family(v, inst, opts);
    else if (c == "eq1" || c == "eq1-hermitian")
        eval_trace_congruence(v, inst, opts, false);
    else if (c == "eq4" || c == "eq4-nonpsd")
        eval_trace_congruence(v, inst, opts, true);
    else if (c == "eq2")
        eval_eq2(v, inst, opts, false);
    else if (c == "eq2-reversed")
        eval_eq2(v, inst, opts, true);
    else if (c == "eq3")
        eval_eq3(v, inst, opts, false);
    else if (c == "eq3-reversed")
        eval_eq3(v, inst, opts, true);
    else if (c == "eq5")
        eval_eq5(v, inst, opts);
    else if (c == "eq6-weyl")
        eval_eq6_weyl(v, inst, opts);
    else if (c == "uchiyama")
        eval_uchiyama(v, inst, opts);
    else if (c == "contractive-sum")
        eval_contractive_sum(v, inst, opts);
    else if (c == "eq9")
        eval_eq9(v, inst, opts);
    else if (c == "loewner-subadd")
        eval_loewner_subadd(v, inst, opts);
    return v;
}

Verdict check_thm21(const HermitianMatrix& a, const ComplexMatrix& z,
                    const ScalarFunction& f, const EvalOptions& opts) {
    Instance inst;
    inst.claim = "thm21";
    inst.f = f;
    inst.terms.push_back({a, z});
    return evaluate_claim(inst, opts);
}

Verdict check_thm22(const std::vector<HermitianMatrix>& as,
                    const ScalarFunction& f, const EvalOptions& opts) {
    Instance inst;
    inst.claim = "thm22";
    inst.f = f;
    for (const HermitianMatrix& a : as) inst.terms.push_back({a, std::nullopt});
    return evaluate_claim(inst, opts);
}

Verdict check_thm11(const std::vector<InstanceTerm>& terms, double p,
                    const EvalOptions& opts) {
    Instance inst;
    inst.claim = "thm11";
    inst.f = ScalarFunction::power(p);
    inst.terms = terms;
    return evaluate_claim(inst, opts);
}

}  // namespace normlab
