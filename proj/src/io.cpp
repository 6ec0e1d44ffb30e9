#include "normlab/io.hpp"

#include <cmath>
#include <fstream>

namespace normlab {

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(std::string("expected numeric field \"") + key + "\"");
    return j[key].get<double>();
}

std::vector<std::vector<double>> grid_field(const json& j, const char* key,
                                            int n) {
    const json& g = j.at(key);
    if (!g.is_array() || static_cast<int>(g.size()) != n)
        throw ParseError(std::string("field \"") + key + "\" must be an " +
                         std::to_string(n) + "x" + std::to_string(n) +
                         " array");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(n));
    for (const json& row : g) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError(std::string("ragged row in \"") + key + "\"");
        std::vector<double> r;
        r.reserve(static_cast<size_t>(n));
        for (const json& x : row) {
            if (!x.is_number()) throw ParseError("matrix entries must be numbers");
            r.push_back(x.get<double>());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
    const int n = m.dim();
    json re = json::array(), im = json::array();
    bool any_imag = false;
    for (int i = 0; i < n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
            if (m(i, j).imag() != 0.0) any_imag = true;
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    json out;
    out["n"] = n;
    out["re"] = std::move(re);
    if (any_imag) out["im"] = std::move(im);
    return out;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    const double n_raw = require_number(j, "n");
    const int n = static_cast<int>(n_raw);
    if (n < 1 || n > kMaxDim || n != n_raw)
        throw ParseError("matrix dimension out of range");
    const auto re = grid_field(j, "re", n);
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = grid_field(j, "im", n);

    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double x = re[static_cast<size_t>(i)][static_cast<size_t>(k)];
            const double y =
                im.empty() ? 0.0
                           : im[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ParseError("matrix entries must be finite");
            m(i, k) = cxd(x, y);
        }
    return m;
}

HermitianMatrix hermitian_from_json(const json& j) {
    return HermitianMatrix(matrix_from_json(j));
}

json function_to_json(const ScalarFunction& f) {
    json out;
    switch (f.kind) {
        case FunctionKind::Power:
            out["kind"] = "power";
            out["p"] = f.p;
            break;
        case FunctionKind::Log1p: out["kind"] = "log1p"; break;
        case FunctionKind::Clamp:
            out["kind"] = "clamp";
            out["a"] = f.a;
            break;
        case FunctionKind::Sqrt: out["kind"] = "sqrt"; break;
        case FunctionKind::Affine:
            out["kind"] = "affine";
            out["alpha"] = f.alpha;
            out["beta"] = f.beta;
            break;
        case FunctionKind::Angle:
            out["kind"] = "angle";
            out["a"] = f.a;
            break;
        case FunctionKind::Smoother:
            out["kind"] = "smoother";
            out["a"] = f.a;
            out["r"] = f.r;
            break;
        case FunctionKind::SmootherInverse:
            out["kind"] = "smoother-inverse";
            out["a"] = f.a;
            out["r"] = f.r;
            break;
        case FunctionKind::Pwl: {
            out["kind"] = "pwl";
            json nodes = json::array();
            for (const auto& [t, y] : f.nodes) nodes.push_back(json::array({t, y}));
            out["nodes"] = std::move(nodes);
            break;
        }
    }
    return out;
}

ScalarFunction function_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("function JSON needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "power") return ScalarFunction::power(require_number(j, "p"));
        if (kind == "log1p") return ScalarFunction::log1p();
        if (kind == "clamp") return ScalarFunction::clamp(require_number(j, "a"));
        if (kind == "sqrt") return ScalarFunction::sqrt();
        if (kind == "affine")
            return ScalarFunction::affine(require_number(j, "alpha"),
                                          require_number(j, "beta"));
        if (kind == "angle") return ScalarFunction::angle(require_number(j, "a"));
        if (kind == "smoother")
            return ScalarFunction::smoother(require_number(j, "a"),
                                            require_number(j, "r"));
        if (kind == "smoother-inverse")
            return ScalarFunction::smoother_inverse(require_number(j, "a"),
                                                    require_number(j, "r"));
        if (kind == "pwl") {
            if (!j.contains("nodes") || !j["nodes"].is_array())
                throw ParseError("pwl needs a \"nodes\" array");
            std::vector<std::pair<double, double>> nodes;
            for (const json& node : j["nodes"]) {
                if (!node.is_array() || node.size() != 2 ||
                    !node[0].is_number() || !node[1].is_number())
                    throw ParseError("pwl nodes must be [t, y] pairs");
                nodes.emplace_back(node[0].get<double>(), node[1].get<double>());
            }
            return ScalarFunction::pwl(std::move(nodes));
        }
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid function parameters: ") + e.what());
    }
    throw ParseError("unknown function kind: " + kind);
}

json norm_spec_to_json(const NormSpec& s) {
    json out;
    switch (s.kind) {
        case NormKind::KyFan:
            out["kind"] = "ky_fan";
            out["k"] = s.k;
            break;
        case NormKind::Schatten:
            out["kind"] = "schatten";
            out["p"] = s.p;
            break;
        case NormKind::Operator: out["kind"] = "operator"; break;
        case NormKind::Trace: out["kind"] = "trace"; break;
        case NormKind::Frobenius: out["kind"] = "frobenius"; break;
    }
    return out;
}

NormSpec norm_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("norm JSON needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "ky_fan")
        return NormSpec::ky_fan(static_cast<int>(require_number(j, "k")));
    if (kind == "schatten") return NormSpec::schatten(require_number(j, "p"));
    if (kind == "operator") return NormSpec::op();
    if (kind == "trace") return NormSpec::trace();
    if (kind == "frobenius") return NormSpec::frobenius();
    throw ParseError("unknown norm kind: " + kind);
}

json instance_to_json(const Instance& inst) {
    json out;
    out["claim"] = inst.claim;
    out["f"] = function_to_json(inst.f);
    json terms = json::array();
    for (const InstanceTerm& t : inst.terms) {
        json term;
        if (t.a) term["A"] = matrix_to_json(t.a->matrix());
        if (t.z) term["Z"] = matrix_to_json(*t.z);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    if (inst.k) out["k"] = *inst.k;
    return out;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance JSON must be an object");
    Instance inst;
    if (j.contains("claim")) {
        if (!j["claim"].is_string())
            throw ParseError("instance \"claim\" must be a string");
        inst.claim = j["claim"].get<std::string>();
    }
    if (!j.contains("f")) throw ParseError("instance needs an \"f\" field");
    inst.f = function_from_json(j["f"]);
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        throw ParseError("instance needs a non-empty \"terms\" array");
    for (const json& term : j["terms"]) {
        if (!term.is_object()) throw ParseError("terms must be objects");
        InstanceTerm t;
        if (term.contains("A")) t.a = hermitian_from_json(term["A"]);
        if (term.contains("Z")) t.z = matrix_from_json(term["Z"]);
        if (!t.a && !t.z)
            throw ParseError("each term needs at least one of \"A\", \"Z\"");
        inst.terms.push_back(std::move(t));
    }
    if (j.contains("k")) {
        if (!j["k"].is_number_integer())
            throw ParseError("instance \"k\" must be an integer");
        inst.k = j["k"].get<int>();
    }
    inst.dim();  // validate consistency early
    return inst;
}

json certificate_to_json(const UnitaryCertificate& c) {
    json out;
    out["V"] = matrix_to_json(c.v);
    out["residual"] = c.unitarity_residual;
    out["margin"] = c.loewner_margin;
    return out;
}

json verdict_to_json(const Verdict& v) {
    json out;
    out["claim"] = v.claim;
    out["holds"] = v.holds;
    out["evaluated"] = v.evaluated;
    if (v.evaluated) {
        out["margin"] = v.margin;
        out["scale"] = v.scale;
        out["tolerance_used"] = v.tolerance_used;
        if (!v.per_k_margins.empty()) {
            out["per_k_margins"] = v.per_k_margins;
            out["binding_k"] = v.binding_k;
        }
    }
    out["hypotheses_ok"] = v.hypotheses_ok;
    json hyps = json::array();
    for (const HypothesisCheck& h : v.hypotheses) {
        json one;
        one["name"] = h.name;
        one["ok"] = h.ok;
        one["value"] = h.value;
        hyps.push_back(std::move(one));
    }
    out["hypotheses"] = std::move(hyps);
    if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
    if (!v.details.empty()) {
        json d;
        for (const auto& [k, val] : v.details) d[k] = val;
        out["details"] = std::move(d);
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace normlab
