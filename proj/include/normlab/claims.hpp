#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normlab/norms.hpp"

namespace normlab {

// One operand pair. A missing Z means the identity; A may be absent for
// claims whose operands are general matrices carried in the Z slot
// (uchiyama).
struct InstanceTerm {
    std::optional<HermitianMatrix> a;
    std::optional<ComplexMatrix> z;
};

// A concrete, checkable input for a named claim.
struct Instance {
    std::string claim;
    ScalarFunction f;
    std::vector<InstanceTerm> terms;
    std::optional<int> k;  // projection rank for eq9

    // Common dimension of all operands; throws on inconsistency.
    int dim() const;
};

struct HypothesisCheck {
    std::string name;
    bool ok = false;
    double value = 0.0;  // diagnostic (smallest eigenvalue, extremal sigma, ...)
};

// Unitary V together with its independent re-verification numbers:
// unitarity_residual = ||V*V - I||_F and loewner_margin = smallest
// eigenvalue of L - V R V* for the certified pair (L, R).
struct UnitaryCertificate {
    ComplexMatrix v;
    double unitarity_residual = 0.0;
    double loewner_margin = 0.0;
};

struct Verdict {
    std::string claim;
    bool holds = false;
    bool evaluated = false;  // false when hypotheses failed without force
    double margin = 0.0;     // signed; >= 0 means the inequality is satisfied
    double scale = 1.0;      // max(1, trace-norm of the larger side)
    double tolerance_used = 0.0;  // absolute: tol * scale
    std::vector<double> per_k_margins;  // per Ky Fan k, or per eigenvalue index
    int binding_k = 0;                  // 1-based; 0 when not applicable
    bool hypotheses_ok = false;
    std::vector<HypothesisCheck> hypotheses;
    std::optional<UnitaryCertificate> certificate;
    std::map<std::string, double> details;
};

struct EvalOptions {
    double tol = 1e-8;
    EigOptions eig = {};
    bool force = false;            // evaluate even if hypotheses fail
    bool want_certificate = true;  // build certificates where defined
};

const std::vector<std::string>& claim_ids();
bool known_claim(const std::string& id);

// Evaluates the named claim on the instance: checks the claim's
// hypothesis predicates, computes the margin (Ky Fan, entrywise
// eigenvalue, Loewner or trace, depending on the claim), and constructs
// a certificate where the claim has one.
Verdict evaluate_claim(const Instance& inst, const EvalOptions& opts = {});

// Aligns the sorted eigenbases of L and R into a unitary V with
// V R V* <= L, valid whenever the eigenvalues of L dominate those of R
// entrywise. Throws DominanceError when dominance fails and
// CertificateError when the constructed V does not re-verify.
UnitaryCertificate dominance_unitary(const HermitianMatrix& l,
                                     const HermitianMatrix& r,
                                     const EigOptions& opts = {});

struct Eq6Witness {
    bool found = false;
    ComplexMatrix u, v;
    double margin = 0.0;  // smallest eigenvalue of U f(A) U* + V f(B) V* - f(A+B)
    std::uint64_t evaluations = 0;
};

// Best-effort randomized search, with alternating eigenbasis alignment,
// for unitaries U, V with f(A+B) <= U f(A) U* + V f(B) V*. A miss is not
// a refutation.
Eq6Witness search_eq6_witness(const HermitianMatrix& a, const HermitianMatrix& b,
                              const ScalarFunction& f, std::uint64_t budget,
                              std::uint64_t seed, const EvalOptions& opts = {});

// Convenience constructors matching the delegating checks.
Verdict check_thm21(const HermitianMatrix& a, const ComplexMatrix& z,
                    const ScalarFunction& f, const EvalOptions& opts = {});
Verdict check_thm22(const std::vector<HermitianMatrix>& as,
                    const ScalarFunction& f, const EvalOptions& opts = {});
Verdict check_thm11(const std::vector<InstanceTerm>& terms, double p,
                    const EvalOptions& opts = {});

}  // namespace normlab
