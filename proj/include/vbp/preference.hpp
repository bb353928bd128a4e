#ifndef VBP_PREFERENCE_HPP
#define VBP_PREFERENCE_HPP

#include <string>
#include <vector>

#include "vbp/profile.hpp"

namespace vbp {

struct DominanceCertificate {
    double margin = 0.0; // min over priors of E_p[u(f) - u(g)] + c(p)
    Prior argmin;
    bool holds = false; // margin >= -tol
};

enum class ActRelation { StrictlyPrefers, StrictlyDispreferred, Indifferent, Incomparable };

std::string to_string(ActRelation r);

/// Dominance margin computed directly from per-state utility differences
/// d(s) = u(f(s)) - u(g(s)). This is the Definition-style LP: minimize
/// d.p + t over the domain of c intersected with the simplex, t ranging
/// over the epigraph of c.
DominanceCertificate dominance_from_values(const std::vector<double>& f_values,
                                           const std::vector<double>& g_values,
                                           const PerceptionFunction& c,
                                           double tol = kDecisionTol);

DominanceCertificate dominance(const AffineUtility& u, const PerceptionFunction& c,
                               const Act& f, const Act& g, double tol = kDecisionTol);

ActRelation relation_from_values(const std::vector<double>& f_values,
                                 const std::vector<double>& g_values,
                                 const PerceptionFunction& c, double tol = kDecisionTol);

ActRelation relation(const AffineUtility& u, const PerceptionFunction& c,
                     const Act& f, const Act& g, double tol = kDecisionTol);

/// Statewise convex combination lambda*f + (1-lambda)*g, lambda in (0,1).
Act mixture(const Act& f, const Act& g, double lambda);

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace vbp

#endif
