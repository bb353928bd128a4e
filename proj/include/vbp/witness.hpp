#ifndef VBP_WITNESS_HPP
#define VBP_WITNESS_HPP

#include <variant>
#include <vector>

#include "vbp/aggregation.hpp"
#include "vbp/preference.hpp"
#include "vbp/profile.hpp"

namespace vbp {

/// Per-individual private directions: u_i gains one unit along delta^i while
/// every other individual's utility is constant. Anchored at the origin, so
/// x_low^i = 0 and x_high^i = delta^i.
struct DiversityWitness {
    std::vector<std::vector<double>> directions; // delta^i per individual
};

struct DiversityFails : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FinitePieceProvenance {
    std::size_t piece;
};
struct DomainFacetProvenance {
    HalfSpace facet;
    double scale; // M
};

/// Affine functional (v, lambda) with p.v + alpha_{i*} c_{i*}(p) >= lambda
/// for all p in dom c_{i*}, and lambda strictly above p*.v + c0(p*).
struct SeparationCertificate {
    std::vector<double> v;
    double lambda = 0.0;
    std::size_t agent = 0; // i*
    double strict_margin = 0.0; // lambda - (p*.v + c0(p*)) > 0
    Prior violating_prior;
    std::variant<FinitePieceProvenance, DomainFacetProvenance> provenance;
};

/// Acts (f, x) with every individual weakly preferring f to the constant act
/// x while society strictly ranks x above f at the violating prior.
struct ParetoWitness {
    Act f;
    Act x; // constant act
    std::vector<DominanceCertificate> agent_certificates; // all holds = true
    Prior violating_prior;
    double social_margin = 0.0; // LP margin of dominance(u0, c0, f, x); strictly negative
};

DiversityWitness diversity_witnesses(const Profile& profile);

SeparationCertificate build_separation(const Profile& profile,
                                       const UtilitarianDecomposition& decomp,
                                       const ConditionViolation& violation);

ParetoWitness construct_witness(const Profile& profile, const UtilitarianDecomposition& decomp,
                                const SeparationCertificate& sep, const DiversityWitness& dw);

} // namespace vbp

#endif
