#include "vbp/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace vbp::oracle {
namespace {

double binomial(std::size_t n, std::size_t k) {
    double v = 1.0;
    for (std::size_t j = 1; j <= k; ++j) v *= static_cast<double>(n - k + j) / j;
    return v;
}

void enumerate(std::size_t states, int remaining, int resolution, std::vector<double>& partial,
               std::vector<Prior>& out) {
    if (partial.size() + 1 == states) {
        partial.push_back(static_cast<double>(remaining) / resolution);
        out.emplace_back(partial);
        partial.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        partial.push_back(static_cast<double>(k) / resolution);
        enumerate(states, remaining - k, resolution, partial, out);
        partial.pop_back();
    }
}

} // namespace

std::vector<Prior> grid_priors(std::size_t states, int resolution) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
    if (states < 1) throw std::invalid_argument("empty state space");
    if (states > 6 && binomial(resolution + states - 1, states - 1) > 5e6)
        throw std::invalid_argument("grid too large for this state count; lower the resolution");
    std::vector<Prior> out;
    std::vector<double> partial;
    enumerate(states, resolution, resolution, partial, out);
    return out;
}

namespace {

// Grid with perception values precomputed per preference; the workhorse of
// the sampled audits.
struct GridEvaluator {
    std::vector<Prior> grid;
    std::vector<std::vector<double>> c_values; // [preference][grid point], kInf outside dom

    GridEvaluator(const Profile& profile, int resolution)
        : grid(grid_priors(profile.num_states(), resolution)) {
        c_values.resize(profile.num_agents() + 1);
        for (std::size_t i = 0; i <= profile.num_agents(); ++i) {
            c_values[i].reserve(grid.size());
            for (const Prior& p : grid) c_values[i].push_back(profile.preference(i).perception.evaluate(p));
        }
    }

    // Min of d.p + c(p) over the grid; early exit once `stop_below` is hit.
    // Second member is the index of the minimizing grid point (or npos when
    // no grid point lies in the domain).
    std::pair<double, std::size_t> margin(const std::vector<double>& d, std::size_t pref_index,
                                          double stop_below) const {
        double best = kInf;
        std::size_t best_at = static_cast<std::size_t>(-1);
        const auto& cv = c_values[pref_index];
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (cv[g] == kInf) continue;
            double v = cv[g];
            const auto& w = grid[g].weights();
            for (std::size_t s = 0; s < w.size(); ++s) v += d[s] * w[s];
            if (v < best) {
                best = v;
                best_at = g;
                if (best < stop_below) break;
            }
        }
        return {best, best_at};
    }
};

std::vector<double> value_diff(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) d[s] = a[s] - b[s];
    return d;
}

} // namespace

std::optional<double> grid_dominance_values(const std::vector<double>& f_values,
                                            const std::vector<double>& g_values,
                                            const PerceptionFunction& c, int resolution) {
    const std::vector<double> d = value_diff(f_values, g_values);
    double best = kInf;
    bool any = false;
    for (const Prior& p : grid_priors(f_values.size(), resolution)) {
        const double cv = c.evaluate(p);
        if (cv == kInf) continue;
        any = true;
        double v = cv;
        for (std::size_t s = 0; s < d.size(); ++s) v += d[s] * p[s];
        best = std::min(best, v);
    }
    if (!any) return std::nullopt;
    return best;
}

std::optional<double> grid_dominance(const AffineUtility& u, const PerceptionFunction& c,
                                     const Act& f, const Act& g, int resolution) {
    return grid_dominance_values(f.values(u), g.values(u), c, resolution);
}

namespace {

// Maps per-individual utility targets back to an outcome via the least-norm
// right inverse of the gradient matrix. Acts only matter through utilities,
// so any preimage will do.
class OutcomeLift {
public:
    explicit OutcomeLift(const Profile& profile) : profile_(&profile) {
        const std::size_t n = profile.num_agents();
        const std::size_t m = profile.outcome_dim;
        Eigen::MatrixXd g(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < m; ++k) g(i, k) = profile.agents[i].utility.gradient()[k];
        cod_.setThreshold(1e-9);
        cod_.compute(g);
    }

    std::vector<double> lift(const std::vector<double>& utility_targets) const {
        const std::size_t n = profile_->num_agents();
        Eigen::VectorXd rhs(n);
        for (std::size_t i = 0; i < n; ++i)
            rhs(i) = utility_targets[i] - profile_->agents[i].utility.intercept();
        const Eigen::VectorXd x = cod_.solve(rhs);
        return std::vector<double>(x.data(), x.data() + x.size());
    }

private:
    const Profile* profile_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

// LP re-verification of a candidate violation; nullopt when the grid hit
// does not survive the exact check.
std::optional<SampledViolation> verify_candidate(const Profile& profile, Act f, Act g,
                                                 bool injected) {
    SampledViolation violation;
    violation.injected = injected;
    for (const Preference& agent : profile.agents) {
        const auto cert = dominance(agent.utility, agent.perception, f, g);
        if (!cert.holds) return std::nullopt;
        violation.agent_margins.push_back(cert.margin);
    }
    const auto social = dominance(profile.social.utility, profile.social.perception, f, g);
    if (!(social.margin < -10.0 * kDecisionTol)) return std::nullopt;
    violation.social_margin = social.margin;
    violation.at = social.argmin;
    violation.f = std::move(f);
    violation.g = std::move(g);
    return violation;
}

bool unanimously_preferred_on_grid(const Profile& profile, const GridEvaluator& eval,
                                   const std::vector<std::vector<double>>& f_values,
                                   const std::vector<std::vector<double>>& g_values) {
    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        const std::vector<double> d = value_diff(f_values[i], g_values[i]);
        const auto [margin, at] = eval.margin(d, i + 1, -1e-9);
        if (at == static_cast<std::size_t>(-1)) return false; // domain missed by the grid
        if (margin < -1e-9) return false;
    }
    return true;
}

} // namespace

std::vector<SampledViolation> sampled_pareto_audit(
    const Profile& profile, const SampleOptions& options,
    const std::vector<std::pair<Act, Act>>& injected_pairs) {
    const std::size_t states = profile.num_states();
    const std::size_t n = profile.num_agents();
    GridEvaluator eval(profile, options.resolution);
    OutcomeLift lift(profile);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> box(-options.box, options.box);

    std::vector<SampledViolation> violations;
    auto consider = [&](const Act& f, const Act& g, bool injected) {
        std::vector<std::vector<double>> fv(n), gv(n);
        for (std::size_t i = 0; i < n; ++i) {
            fv[i] = f.values(profile.agents[i].utility);
            gv[i] = g.values(profile.agents[i].utility);
        }
        if (!unanimously_preferred_on_grid(profile, eval, fv, gv)) return;
        const std::vector<double> d0 = value_diff(f.values(profile.social.utility),
                                                  g.values(profile.social.utility));
        const auto [social, at] = eval.margin(d0, 0, -10.0 * kDecisionTol);
        if (at == static_cast<std::size_t>(-1) || social >= -10.0 * kDecisionTol) return;
        if (auto v = verify_candidate(profile, f, g, injected)) violations.push_back(std::move(*v));
    };

    for (const auto& [f, g] : injected_pairs) consider(f, g, /*injected=*/true);

    for (std::size_t sample = 0; sample < options.samples; ++sample) {
        const bool constant_pair = sample % 4 == 3;
        std::vector<std::vector<double>> f_outcomes(states), g_outcomes(states);
        if (constant_pair) {
            std::vector<double> ft(n), gt(n);
            for (std::size_t i = 0; i < n; ++i) { ft[i] = box(rng); gt[i] = box(rng); }
            const std::vector<double> fo = lift.lift(ft);
            const std::vector<double> go = lift.lift(gt);
            for (std::size_t s = 0; s < states; ++s) { f_outcomes[s] = fo; g_outcomes[s] = go; }
        } else {
            for (std::size_t s = 0; s < states; ++s) {
                std::vector<double> ft(n), gt(n);
                for (std::size_t i = 0; i < n; ++i) { ft[i] = box(rng); gt[i] = box(rng); }
                f_outcomes[s] = lift.lift(ft);
                g_outcomes[s] = lift.lift(gt);
            }
        }
        consider(Act(std::move(f_outcomes)), Act(std::move(g_outcomes)), /*injected=*/false);
    }
    return violations;
}

std::vector<SampledViolation> sampled_liberalism_audit(const Profile& profile,
                                                       const DiversityWitness& dw,
                                                       const SampleOptions& options) {
    const std::size_t states = profile.num_states();
    const std::size_t n = profile.num_agents();
    const std::size_t m = profile.outcome_dim;
    GridEvaluator eval(profile, options.resolution);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> box(-options.box, options.box);

    std::vector<SampledViolation> violations;
    for (std::size_t sample = 0; sample < options.samples; ++sample) {
        const std::size_t i = sample % n; // round-robin over private lines
        const std::vector<double>& delta = dw.directions[i];
        const double base = profile.agents[i].utility.intercept();

        auto act_on_line = [&]() {
            std::vector<std::vector<double>> outcomes(states);
            for (std::size_t s = 0; s < states; ++s) {
                const double step = box(rng) - base;
                outcomes[s].resize(m);
                for (std::size_t k = 0; k < m; ++k) outcomes[s][k] = step * delta[k];
            }
            return Act(std::move(outcomes));
        };
        const Act f = act_on_line();
        const Act g = act_on_line();

        const std::vector<double> di = value_diff(f.values(profile.agents[i].utility),
                                                  g.values(profile.agents[i].utility));
        const auto [margin_i, at_i] = eval.margin(di, i + 1, -1e-9);
        if (at_i == static_cast<std::size_t>(-1) || margin_i < -1e-9) continue;

        const std::vector<double> d0 = value_diff(f.values(profile.social.utility),
                                                  g.values(profile.social.utility));
        const auto [social, at] = eval.margin(d0, 0, -10.0 * kDecisionTol);
        if (at == static_cast<std::size_t>(-1) || social >= -10.0 * kDecisionTol) continue;

        // Exact re-check: f >=_i g and the social strict failure.
        const auto cert_i = dominance(profile.agents[i].utility, profile.agents[i].perception, f, g);
        if (!cert_i.holds) continue;
        const auto cert_0 = dominance(profile.social.utility, profile.social.perception, f, g);
        if (!(cert_0.margin < -10.0 * kDecisionTol)) continue;

        SampledViolation violation;
        violation.f = f;
        violation.g = g;
        violation.agent_margins.assign(n, 0.0);
        violation.agent_margins[i] = cert_i.margin;
        violation.social_margin = cert_0.margin;
        violation.at = cert_0.argmin;
        violations.push_back(std::move(violation));
    }
    return violations;
}

std::optional<IntransitiveTriple> find_intransitivity(const PerceptionFunction& c,
                                                      std::size_t states, std::size_t samples,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    for (std::size_t sample = 0; sample < samples; ++sample) {
        std::vector<double> f(states), g(states), h(states);
        for (std::size_t s = 0; s < states; ++s) { f[s] = box(rng); g[s] = box(rng); h[s] = box(rng); }
        if (f == g || g == h || f == h) continue;
        const auto fg = dominance_from_values(f, g, c);
        if (!fg.holds) continue;
        const auto gh = dominance_from_values(g, h, c);
        if (!gh.holds) continue;
        const auto fh = dominance_from_values(f, h, c);
        if (fh.holds) continue;
        return IntransitiveTriple{f, g, h, fg.margin, gh.margin, fh.margin};
    }
    return std::nullopt;
}

} // namespace vbp::oracle
