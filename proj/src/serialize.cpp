#include "qreduce/serialize.hpp"

#include <stdexcept>

namespace qreduce {

Json to_json(const Matrix& m) { return Json(m.to_rows()); }

Json to_json(const FieldVector& v) { return Json(v.raw()); }

Json to_json(const ErrorProfile& p) {
    return Json{{"q", p.q()}, {"n", p.n()}, {"tau", p.tau()}, {"rho", p.rho()}, {"sets", p.sets()}};
}

Json to_json(const DecoderReport& r) {
    Json j{{"p_dec", r.p_dec},
           {"p_correct", r.p_correct},
           {"p_fail", r.p_fail},
           {"mode", r.mode == EvaluationMode::exact ? "exact" : "monte_carlo"}};
    if (r.mode == EvaluationMode::monte_carlo) {
        j["samples"] = r.samples;
        j["seed"] = r.seed;
        j["std_error"] = r.std_error;
        j["ci"] = {r.p_dec - r.ci_half_width, r.p_dec + r.ci_half_width};
    }
    return j;
}

Json to_json(const ReductionOutcome& o) {
    return Json{{"u", o.u.raw()},
                {"p_u", o.p_u},
                {"coset_mass", o.coset_mass},
                {"post_select_prob", o.post_select_prob},
                {"p_dec", o.p_dec},
                {"eta", o.eta},
                {"bound", o.bound},
                {"slack", o.slack},
                {"lemma_p_u", o.lemma_p_u},
                {"max_norm_drift", o.max_norm_drift},
                {"symmetrized", o.symmetrized}};
}

Json to_json(const BoundReport& r) {
    return Json{{"count", r.count}, {"mean_p_u", r.mean_p_u}, {"p_dec", r.p_dec}, {"eta", r.eta},
                {"bound", r.bound}, {"slack", r.slack},       {"passed", r.passed}};
}

Json to_json(const ThresholdRow& r) {
    Json j;
    if (!r.label.empty()) j["label"] = r.label;
    j["R"] = r.rate;
    j["rho"] = r.rho;
    j["tau_classical"] = r.classical;
    j["tau_bw"] = r.bw;
    j["tau_gs"] = r.gs;
    j["tau_kv"] = r.kv;
    if (r.kv_rho != r.rho) j["kv_rho"] = r.kv_rho;
    j["saturated"] = {{"bw", r.bw_saturated}, {"gs", r.gs_saturated}, {"kv", r.kv_saturated}};
    return j;
}

Json to_json(const OPIInstance& i) {
    return Json{{"q", i.q}, {"k", i.k}, {"tau", i.tau}, {"sets", i.sets}, {"x", i.x}, {"seed", i.seed}};
}

Json to_json(const OPISolution& s) { return Json{{"coeffs", s.coeffs}, {"count", s.count}}; }

Json to_json(const ICCInstance& icc) {
    std::vector<std::vector<Residue>> sets(icc.constraint.n());
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (Residue a = 0; a < icc.constraint.q(); ++a)
            if (icc.constraint.in_set(i, a)) sets[i].push_back(a);
    return Json{{"q", icc.code.q()},
                {"n", icc.code.n()},
                {"k", icc.code.k()},
                {"parity_check", to_json(icc.code.parity_check())},
                {"u", icc.u.raw()},
                {"constraint",
                 {{"sets", sets}, {"threshold", icc.constraint.threshold()},
                  {"required", icc.constraint.required_count()}}},
                {"decoding_code_k", icc.decoding_code.k()},
                {"dual_syndrome", icc.dual_syndrome.raw()}};
}

namespace {
template <class T>
T field(const Json& j, const char* name) {
    if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
    const auto it = j.find(name);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + name + "'");
    try {
        return it->template get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("field '") + name + "': " + e.what());
    }
}
}  // namespace

ErrorProfile profile_from_json(const Json& j) {
    const auto q = field<std::uint32_t>(j, "q");
    auto sets = field<std::vector<std::vector<Residue>>>(j, "sets");
    const auto tau = field<double>(j, "tau");
    if (j.contains("n")) {
        const auto n = field<std::size_t>(j, "n");
        if (sets.size() == 1 && n > 1) sets.assign(n, sets.front());
        if (sets.size() != n) throw std::invalid_argument("profile needs one set or n sets");
    }
    return ErrorProfile(q, std::move(sets), tau);
}

OPIInstance opi_instance_from_json(const Json& j) {
    OPIInstance inst;
    inst.q = field<std::uint32_t>(j, "q");
    inst.k = field<std::size_t>(j, "k");
    inst.tau = field<double>(j, "tau");
    inst.sets = field<std::vector<std::vector<Residue>>>(j, "sets");
    inst.x = field<std::vector<Residue>>(j, "x");
    inst.seed = j.contains("seed") ? field<std::uint64_t>(j, "seed") : 0;
    inst.validate();
    return inst;
}

OPISolution opi_solution_from_json(const Json& j) {
    OPISolution s;
    s.coeffs = field<std::vector<Residue>>(j, "coeffs");
    if (j.contains("count")) s.count = field<std::size_t>(j, "count");
    return s;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(source + ": JSON parse error at byte " + std::to_string(e.byte) + ": " +
                                    e.what());
    }
}

}  // namespace qreduce
