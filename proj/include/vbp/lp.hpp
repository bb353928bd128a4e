#ifndef VBP_LP_HPP
#define VBP_LP_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbp::lp {

inline constexpr double kFeasTol = 1e-9;
inline constexpr double kGapTol = 1e-7;

enum class Relation { LessEq, Eq };

struct Row {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

/// Dense LP in the form: minimize c.x subject to rows (a.x <= b or a.x = b),
/// x_j >= lower_j unless the variable is marked free.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower;  // defaults to 0 for every variable
    std::vector<bool> free_var; // unbounded below (lower ignored)

    std::size_t num_vars() const { return objective.size(); }

    std::size_t add_variable(double cost, bool is_free = false, double lo = 0.0) {
        lower.resize(objective.size(), 0.0);
        free_var.resize(objective.size(), false);
        objective.push_back(cost);
        lower.push_back(lo);
        free_var.push_back(is_free);
        return objective.size() - 1;
    }

    void add_row(std::vector<double> coeffs, Relation rel, double rhs) {
        rows.push_back(Row{std::move(coeffs), rel, rhs});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> primal; // per variable, user space
    std::vector<double> dual;   // per row; for Infeasible this is the Farkas certificate
};

struct MalformedProgram : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when the post-solve certificate check fails; never swallowed.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-phase dense simplex with Bland's rule. Deterministic for fixed input.
/// Optimal outcomes are certified (primal/dual residuals, duality gap) before
/// being returned; Infeasible outcomes carry a verified Farkas certificate.
LpOutcome solve(const LinearProgram& lp);

} // namespace vbp::lp

#endif
