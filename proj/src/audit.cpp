#include "vbp/audit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vbp/aggregation.hpp"
#include "vbp/oracle.hpp"
#include "vbp/preference.hpp"
#include "vbp/witness.hpp"

namespace vbp::audit {
namespace {

using io::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json issues_to_json(const std::vector<ValidationIssue>& issues) {
    json out = json::array();
    for (const ValidationIssue& issue : issues) {
        json e;
        if (issue.agent == ValidationIssue::kProfileLevel)
            e["agent"] = nullptr;
        else
            e["agent"] = issue.agent;
        e["invariant"] = issue.invariant;
        e["message"] = issue.message;
        out.push_back(std::move(e));
    }
    return out;
}

json violation_to_json(const ConditionViolation& violation) {
    json out;
    if (const auto* fin = std::get_if<FiniteGapViolation>(&violation)) {
        out["type"] = "finite-gap";
        out["agent"] = fin->agent;
        out["piece"] = fin->piece;
        out["prior"] = io::serialize_prior(fin->at);
        out["gap"] = fin->gap;
        out["piece_gap"] = fin->piece_gap;
    } else {
        const auto& inf = std::get<InfiniteGapViolation>(violation);
        out["type"] = "domain-facet";
        out["agent"] = inf.agent;
        out["facet"] = {{"a", inf.facet.normal}, {"b", inf.facet.bound}};
        out["prior"] = io::serialize_prior(inf.at);
        out["slack"] = inf.slack;
    }
    return out;
}

// Social value of the act at the violating prior: E_p[u0(act)] (+ c0(p) on
// the dominated side); the pair restates the representation inequality.
std::pair<double, double> social_values_at(const Profile& profile, const Prior& at,
                                           const Act& f, const Act& g) {
    const std::vector<double> fv = f.values(profile.social.utility);
    const std::vector<double> gv = g.values(profile.social.utility);
    double lhs = profile.social.perception.evaluate(at);
    double rhs = 0.0;
    for (std::size_t s = 0; s < at.size(); ++s) {
        lhs += at[s] * fv[s];
        rhs += at[s] * gv[s];
    }
    return {lhs, rhs};
}

json sampled_violation_to_json(const Profile& profile, const oracle::SampledViolation& v) {
    const auto [lhs, rhs] = social_values_at(profile, v.at, v.f, v.g);
    json out;
    out["f"] = io::serialize_act(v.f);
    out["g"] = io::serialize_act(v.g);
    out["agent_margins"] = v.agent_margins;
    out["social_margin"] = v.social_margin;
    out["violating_prior"] = io::serialize_prior(v.at);
    out["social_value_f"] = lhs;
    out["social_value_g"] = rhs;
    out["injected"] = v.injected;
    return out;
}

} // namespace

Result run_validation(const Profile& profile) {
    const auto issues = validate_profile(profile);
    Result res;
    res.report["format_version"] = 1;
    res.report["valid"] = issues.empty();
    res.report["issues"] = issues_to_json(issues);
    std::ostringstream summary;
    if (issues.empty()) {
        summary << "profile valid: " << profile.num_agents() << " individuals, "
                << profile.num_states() << " states, outcome dimension " << profile.outcome_dim;
    } else {
        summary << issues.size() << " validation issue(s):";
        for (const auto& issue : issues) summary << "\n- " << issue.message;
    }
    res.report["summary"] = summary.str();
    res.exit_code = issues.empty() ? kExitClean : kExitValidation;
    return res;
}

Result run_audit(const Profile& profile, const Options& options) {
    Result res;
    json& r = res.report;
    r["format_version"] = 1;
    r["seed"] = options.seed;
    r["grid"] = options.grid;
    r["tolerances"] = {{"feasibility", kFeasTol}, {"decision", options.tolerance}, {"gap", lp::kGapTol}};
    std::vector<std::string> summary;
    std::vector<std::string> flags;

    const auto issues = validate_profile(profile);
    if (!issues.empty()) {
        r["validation"] = issues_to_json(issues);
        r["summary"] = "validation failed; audit not run";
        res.exit_code = kExitValidation;
        return res;
    }
    r["validation"] = "ok";

    try {
        const DiversityReport diversity = diversity_check(profile);
        r["diversity"] = {{"rank", diversity.rank}, {"independent", diversity.independent}};
        if (!diversity.independent) {
            flags.push_back("diversity-fails");
            summary.push_back("preference diversity fails (rank " + std::to_string(diversity.rank) +
                              " < n); downstream checks carry the non-unique flag");
        }

        const DecompositionResult decomp_result = decompose_utility(profile);
        const UtilitarianDecomposition* decomp = std::get_if<UtilitarianDecomposition>(&decomp_result);
        if (decomp) {
            r["decomposition"] = {{"status", "ok"},
                                  {"alpha", decomp->weights},
                                  {"beta", decomp->shift},
                                  {"residual", decomp->residual},
                                  {"unique", decomp->unique}};
            std::string alphas;
            for (double w : decomp->weights) alphas += (alphas.empty() ? "" : ", ") + fmt(w);
            summary.push_back("utilitarian decomposition: alpha = (" + alphas + "), beta = " +
                              fmt(decomp->shift));
        } else {
            const auto& no = std::get<NoDecomposition>(decomp_result);
            json nd = {{"status", "none"}, {"reason", no.reason}};
            if (no.agent) nd["agent"] = *no.agent;
            r["decomposition"] = std::move(nd);
            summary.push_back("no utilitarian decomposition: " + no.reason);
            if (no.reason == "negative weight")
                summary.push_back("negative weight already implies a Standard Pareto violation on constant acts");
        }

        bool condition_satisfied = false;
        bool witness_attached = false;
        if (decomp) {
            const auto violation = check_theorem1_condition(profile, *decomp, options.tolerance);
            condition_satisfied = !violation.has_value();
            if (violation) {
                json cond = violation_to_json(*violation);
                cond["verdict"] = "violated";
                r["theorem1_condition"] = std::move(cond);
                summary.push_back("aggregation condition violated (agent " +
                                  std::to_string(std::visit([](const auto& v) { return v.agent; }, *violation)) +
                                  ")");
            } else {
                r["theorem1_condition"] = {{"verdict", "satisfied"}};
                summary.push_back("aggregation condition c0 >= max_i alpha_i c_i satisfied");
            }

            const Corollary1Report cor1 = check_corollary1(profile, *decomp);
            r["corollary1"] = {{"holds", cor1.holds},
                               {"failing_agents", cor1.failing_agents},
                               {"common_zero_empty", cor1.common_zero_empty},
                               {"zero_weight_agents", cor1.must_be_ignored}};
            if (cor1.common_zero_empty)
                summary.push_back("no prior is most plausible for every individual; some weight must be zero");

            if (profile.social.perception.is_bewley()) {
                const bool holds = check_prop1(profile, *decomp);
                r["prop1"] = {{"applicable", true}, {"holds", holds}};
            } else {
                r["prop1"] = {{"applicable", false}, {"reason", "social preference is not Bewley"}};
            }
            bool agents_bewley = true;
            for (const Preference& a : profile.agents) agents_bewley &= a.perception.is_bewley();
            if (agents_bewley) {
                const bool holds = check_prop2(profile, *decomp);
                r["prop2"] = {{"applicable", true}, {"holds", holds}};
            } else {
                r["prop2"] = {{"applicable", false}, {"reason", "some individual is not Bewley"}};
            }
            r["prop3_liberalism"] = {{"holds", condition_satisfied}};

            if (violation) {
                if (diversity.independent) {
                    const DiversityWitness dw = diversity_witnesses(profile);
                    const SeparationCertificate sep = build_separation(profile, *decomp, *violation);
                    const ParetoWitness w = construct_witness(profile, *decomp, sep, dw);
                    json sep_json = {{"v", sep.v},
                                     {"lambda", sep.lambda},
                                     {"agent", sep.agent},
                                     {"strict_margin", sep.strict_margin}};
                    if (const auto* fp = std::get_if<FinitePieceProvenance>(&sep.provenance))
                        sep_json["provenance"] = {{"type", "finite-piece"}, {"piece", fp->piece}};
                    else {
                        const auto& df = std::get<DomainFacetProvenance>(sep.provenance);
                        sep_json["provenance"] = {{"type", "domain-facet"},
                                                  {"facet", {{"a", df.facet.normal}, {"b", df.facet.bound}}},
                                                  {"scale", df.scale}};
                    }
                    std::vector<double> agent_margins;
                    for (const auto& cert : w.agent_certificates) agent_margins.push_back(cert.margin);
                    r["witness"] = {{"f", io::serialize_act(w.f)},
                                    {"x", io::serialize_act(w.x)},
                                    {"agent_margins", agent_margins},
                                    {"social_margin", w.social_margin},
                                    {"violating_prior", io::serialize_prior(w.violating_prior)},
                                    {"separation", std::move(sep_json)}};
                    witness_attached = true;
                    summary.push_back("constructed Pareto witness: every individual weakly prefers f to x, "
                                      "society strictly prefers x (margin " + fmt(w.social_margin) + ")");
                } else {
                    r["witness"] = {{"available", false}, {"reason", "preference diversity fails"}};
                }
            } else if (diversity.independent) {
                // Liberalism corroboration on the private act families.
                const DiversityWitness dw = diversity_witnesses(profile);
                oracle::SampleOptions lib_opts;
                lib_opts.samples = std::max<std::size_t>(options.samples / 4, 100);
                lib_opts.seed = options.seed + 1;
                lib_opts.resolution = options.grid;
                const auto lib = oracle::sampled_liberalism_audit(profile, dw, lib_opts);
                json lv = json::array();
                for (const auto& v : lib) lv.push_back(sampled_violation_to_json(profile, v));
                r["liberalism_audit"] = {{"samples", lib_opts.samples},
                                         {"seed", lib_opts.seed},
                                         {"violations", std::move(lv)}};
                if (!lib.empty()) {
                    flags.push_back("internal-inconsistency");
                    summary.push_back("liberalism audit found a violation although the condition is satisfied");
                }
            }
        }

        // Standard Pareto sampled audit; bundled acts are injected as pairs.
        std::vector<std::pair<Act, Act>> injected;
        for (std::size_t a = 0; a < profile.acts.size(); ++a)
            for (std::size_t b = 0; b < profile.acts.size(); ++b)
                if (a != b) injected.emplace_back(profile.acts[a].act, profile.acts[b].act);
        oracle::SampleOptions sample_opts;
        sample_opts.samples = options.samples;
        sample_opts.seed = options.seed;
        sample_opts.resolution = options.grid;
        const auto violations = oracle::sampled_pareto_audit(profile, sample_opts, injected);
        json vj = json::array();
        for (const auto& v : violations) {
            vj.push_back(sampled_violation_to_json(profile, v));
            const auto [lhs, rhs] = social_values_at(profile, v.at, v.f, v.g);
            summary.push_back("Pareto violation: unanimously f >= g but social value of f at the "
                              "violating prior is " + fmt(lhs) + " < " + fmt(rhs) +
                              " = social value of g");
        }
        r["pareto_audit"] = {{"samples", sample_opts.samples},
                             {"seed", sample_opts.seed},
                             {"resolution", sample_opts.resolution},
                             {"violations", std::move(vj)}};

        if (decomp && condition_satisfied && !violations.empty()) {
            flags.push_back("converse-failure");
            summary.push_back("converse failure: the aggregation condition holds yet Standard Pareto fails");
        }
        if (decomp && !condition_satisfied && !witness_attached && diversity.independent)
            summary.push_back("no constructive witness available; converse may still fail");

        r["flags"] = flags;
        std::ostringstream text;
        for (std::size_t i = 0; i < summary.size(); ++i) text << (i ? "\n" : "") << summary[i];
        r["summary"] = text.str();

        if (decomp && !condition_satisfied)
            res.exit_code = kExitConditionViolation;
        else if (!violations.empty())
            res.exit_code = kExitOracleViolation;
        else
            res.exit_code = kExitClean;
    } catch (const VerificationFailed& e) {
        r["error"] = {{"type", "verification-failed"}, {"message", e.what()}};
        r["summary"] = std::string("internal verification failure: ") + e.what();
        res.exit_code = kExitInternalFailure;
    } catch (const lp::NumericalFailure& e) {
        r["error"] = {{"type", "numerical-failure"}, {"message", e.what()}};
        r["summary"] = std::string("numerical failure: ") + e.what();
        res.exit_code = kExitInternalFailure;
    }
    return res;
}

io::json dominance_report(const Profile& profile, std::size_t preference_index,
                          const std::string& f_name, const Act& f,
                          const std::string& g_name, const Act& g, double tolerance) {
    const Preference& pref = profile.preference(preference_index);
    const auto fg = dominance(pref.utility, pref.perception, f, g, tolerance);
    const auto gf = dominance(pref.utility, pref.perception, g, f, tolerance);

    ActRelation rel;
    if (fg.holds && gf.holds)
        rel = ActRelation::Indifferent;
    else if (fg.holds)
        rel = ActRelation::StrictlyPrefers;
    else if (gf.holds)
        rel = ActRelation::StrictlyDispreferred;
    else
        rel = ActRelation::Incomparable;

    json out;
    out["format_version"] = 1;
    out["preference"] = preference_index;
    out["f"] = f_name;
    out["g"] = g_name;
    out["forward"] = {{"margin", fg.margin}, {"holds", fg.holds}, {"argmin_prior", io::serialize_prior(fg.argmin)}};
    out["backward"] = {{"margin", gf.margin}, {"holds", gf.holds}, {"argmin_prior", io::serialize_prior(gf.argmin)}};
    out["relation"] = to_string(rel);
    std::ostringstream text;
    text << (preference_index == 0 ? "social preference" : "agent " + std::to_string(preference_index))
         << ": " << f_name << " " << to_string(rel) << " " << g_name << " (margins " << fmt(fg.margin)
         << " / " << fmt(gf.margin) << ")";
    out["summary"] = text.str();
    return out;
}

} // namespace vbp::audit
