#include "vbp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vbp::lp {
namespace {

constexpr double kPivotTol = 1e-11;

struct Standardized {
    // Equality system A z = b with z >= 0, b >= 0, minimize c2.z + shift.
    std::size_t num_rows = 0;
    std::size_t num_cols = 0; // structural + slack columns (artificials appended after)
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> cost;
    double shift = 0.0;
    std::vector<double> row_sign;            // user row -> +/-1 applied during normalization
    std::vector<std::pair<int, int>> var_map; // user var -> (pos column, neg column or -1)
};

Standardized standardize(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    Standardized st;
    st.num_rows = lp.rows.size();
    st.var_map.resize(n);

    std::vector<double> lower(n, 0.0);
    std::vector<bool> is_free(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < lp.lower.size()) lower[j] = lp.lower[j];
        if (j < lp.free_var.size()) is_free[j] = lp.free_var[j];
    }

    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_free[j]) {
            st.var_map[j] = {static_cast<int>(col), static_cast<int>(col + 1)};
            col += 2;
        } else {
            st.var_map[j] = {static_cast<int>(col), -1};
            col += 1;
        }
    }
    const std::size_t slack_base = col;
    for (const Row& r : lp.rows)
        if (r.rel == Relation::LessEq) ++col;
    st.num_cols = col;

    st.a.assign(st.num_rows, std::vector<double>(st.num_cols, 0.0));
    st.b.assign(st.num_rows, 0.0);
    st.cost.assign(st.num_cols, 0.0);
    st.row_sign.assign(st.num_rows, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        st.cost[st.var_map[j].first] = lp.objective[j];
        if (st.var_map[j].second >= 0)
            st.cost[st.var_map[j].second] = -lp.objective[j];
        else
            st.shift += lp.objective[j] * lower[j];
    }

    std::size_t slack = slack_base;
    for (std::size_t r = 0; r < st.num_rows; ++r) {
        const Row& row = lp.rows[r];
        double rhs = row.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            st.a[r][st.var_map[j].first] = row.coeffs[j];
            if (st.var_map[j].second >= 0)
                st.a[r][st.var_map[j].second] = -row.coeffs[j];
            else
                rhs -= row.coeffs[j] * lower[j];
        }
        if (row.rel == Relation::LessEq) st.a[r][slack++] = 1.0;
        if (rhs < 0.0) {
            st.row_sign[r] = -1.0;
            rhs = -rhs;
            for (double& v : st.a[r]) v = -v;
        }
        st.b[r] = rhs;
    }
    return st;
}

// Canonical-form tableau simplex with Bland's rule. Columns past `num_cols`
// are the artificials; they are never allowed to re-enter the basis.
class Tableau {
public:
    explicit Tableau(const Standardized& st)
        : m_(st.num_rows), n_(st.num_cols), tab_(st.num_rows), rhs_(st.b), basis_(st.num_rows) {
        for (std::size_t i = 0; i < m_; ++i) {
            tab_[i].assign(n_ + m_, 0.0);
            std::copy(st.a[i].begin(), st.a[i].end(), tab_[i].begin());
            tab_[i][n_ + i] = 1.0;
            basis_[i] = n_ + i;
        }
    }

    std::size_t total_cols() const { return n_ + m_; }
    bool is_artificial(std::size_t j) const { return j >= n_; }

    double reduced_cost(const std::vector<double>& cost, std::size_t j) const {
        double r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * tab_[i][j];
        return r;
    }

    double objective(const std::vector<double>& cost) const {
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * rhs_[i];
        return v;
    }

    enum class StepResult { Optimal, Unbounded, Pivoted };

    StepResult step(const std::vector<double>& cost, bool allow_artificial_enter) {
        // Bland: entering = lowest-index column with negative reduced cost.
        std::size_t enter = total_cols();
        for (std::size_t j = 0; j < total_cols(); ++j) {
            if (is_artificial(j) && !allow_artificial_enter) continue;
            if (reduced_cost(cost, j) < -kPivotTol) { enter = j; break; }
        }
        if (enter == total_cols()) return StepResult::Optimal;

        std::size_t leave = m_;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
            if (tab_[i][enter] <= kPivotTol) continue;
            const double ratio = rhs_[i] / tab_[i][enter];
            if (ratio < best_ratio - kPivotTol ||
                (ratio < best_ratio + kPivotTol && (leave == m_ || basis_[i] < basis_[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == m_) return StepResult::Unbounded;
        pivot(leave, enter);
        return StepResult::Pivoted;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double piv = tab_[row][col];
        for (double& v : tab_[row]) v /= piv;
        rhs_[row] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double factor = tab_[i][col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < total_cols(); ++j) tab_[i][j] -= factor * tab_[row][j];
            rhs_[i] -= factor * rhs_[row];
        }
        basis_[row] = col;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(tab_[i][j]) > 1e-8) { pivot(i, j); break; }
            }
            // A row that stays artificial-basic is linearly dependent; it is
            // inert (zero on all structural columns) and can be left in place.
        }
    }

    std::vector<double> primal() const {
        std::vector<double> z(total_cols(), 0.0);
        for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = rhs_[i];
        return z;
    }

    // Simplex multipliers, read off the artificial columns (B^{-1} e_i).
    std::vector<double> multipliers(const std::vector<double>& cost) const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) y[i] = cost[n_ + i] - reduced_cost(cost, n_ + i);
        return y;
    }

private:
    std::size_t m_, n_;
    std::vector<std::vector<double>> tab_;
    std::vector<double> rhs_;
    std::vector<std::size_t> basis_;
};

void run_simplex(Tableau& tab, const std::vector<double>& cost, bool phase_one, LpStatus& status) {
    const std::size_t cap = 20000 + 200 * tab.total_cols();
    for (std::size_t iter = 0; iter < cap; ++iter) {
        const auto res = tab.step(cost, /*allow_artificial_enter=*/false);
        if (res == Tableau::StepResult::Optimal) { status = LpStatus::Optimal; return; }
        if (res == Tableau::StepResult::Unbounded) {
            if (phase_one) throw NumericalFailure("phase-1 simplex reported unbounded");
            status = LpStatus::Unbounded;
            return;
        }
    }
    throw NumericalFailure("simplex iteration cap exceeded");
}

void check_well_formed(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(lp.objective.begin(), lp.objective.end(), finite))
        throw MalformedProgram("non-finite objective coefficient");
    if (!lp.lower.empty() && lp.lower.size() != n)
        throw MalformedProgram("lower-bound vector width mismatch");
    if (!lp.free_var.empty() && lp.free_var.size() != n)
        throw MalformedProgram("free-variable vector width mismatch");
    if (!std::all_of(lp.lower.begin(), lp.lower.end(), finite))
        throw MalformedProgram("non-finite lower bound");
    for (const Row& r : lp.rows) {
        if (r.coeffs.size() != n) throw MalformedProgram("constraint row width mismatch");
        if (!std::all_of(r.coeffs.begin(), r.coeffs.end(), finite) || !finite(r.rhs))
            throw MalformedProgram("non-finite constraint coefficient");
    }
}

double lower_of(const LinearProgram& lp, std::size_t j) {
    return j < lp.lower.size() ? lp.lower[j] : 0.0;
}

bool free_of(const LinearProgram& lp, std::size_t j) {
    return j < lp.free_var.size() && lp.free_var[j];
}

double row_value(const Row& r, const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) v += r.coeffs[j] * x[j];
    return v;
}

double problem_scale(const LinearProgram& lp) {
    double s = 1.0;
    for (const Row& r : lp.rows) {
        s = std::max(s, std::abs(r.rhs));
        for (double v : r.coeffs) s = std::max(s, std::abs(v));
    }
    return s;
}

void verify_optimal(const LinearProgram& lp, const std::vector<double>& x,
                    const std::vector<double>& y, double value) {
    const double scale = problem_scale(lp);
    const double feas = kFeasTol * scale * 10.0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const double resid = row_value(lp.rows[r], x) - lp.rows[r].rhs;
        if (lp.rows[r].rel == Relation::Eq ? std::abs(resid) > feas : resid > feas)
            throw NumericalFailure("primal feasibility residual exceeds tolerance");
        if (lp.rows[r].rel == Relation::LessEq && y[r] > feas)
            throw NumericalFailure("dual sign condition violated on inequality row");
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (!free_of(lp, j) && x[j] < lower_of(lp, j) - feas)
            throw NumericalFailure("primal lower bound violated");

    double dual_value = 0.0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) dual_value += y[r] * lp.rows[r].rhs;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        double reduced = lp.objective[j];
        for (std::size_t r = 0; r < lp.rows.size(); ++r) reduced -= y[r] * lp.rows[r].coeffs[j];
        if (free_of(lp, j)) {
            if (std::abs(reduced) > feas)
                throw NumericalFailure("dual feasibility violated on free variable");
        } else {
            if (reduced < -feas) throw NumericalFailure("dual feasibility violated");
            dual_value += reduced * lower_of(lp, j);
        }
    }
    if (std::abs(value - dual_value) > kGapTol * (1.0 + std::abs(value)))
        throw NumericalFailure("duality gap exceeds tolerance");
}

void verify_farkas(const LinearProgram& lp, const std::vector<double>& y) {
    const double scale = problem_scale(lp);
    const double feas = kFeasTol * scale * 10.0;
    double witness_value = 0.0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        if (lp.rows[r].rel == Relation::LessEq && y[r] > feas)
            throw NumericalFailure("Farkas sign condition violated");
        witness_value += y[r] * lp.rows[r].rhs;
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        double q = 0.0;
        for (std::size_t r = 0; r < lp.rows.size(); ++r) q += y[r] * lp.rows[r].coeffs[j];
        if (free_of(lp, j)) {
            if (std::abs(q) > feas) throw NumericalFailure("Farkas certificate not orthogonal to free variable");
        } else {
            if (q > feas) throw NumericalFailure("Farkas certificate sign violated");
            witness_value += (-q) * lower_of(lp, j);
        }
    }
    if (witness_value <= feas) throw NumericalFailure("Farkas certificate not separating");
}

} // namespace

LpOutcome solve(const LinearProgram& lp) {
    check_well_formed(lp);
    const Standardized st = standardize(lp);
    Tableau tab(st);

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1_cost(st.num_cols + st.num_rows, 0.0);
    for (std::size_t i = 0; i < st.num_rows; ++i) phase1_cost[st.num_cols + i] = 1.0;
    LpStatus status;
    run_simplex(tab, phase1_cost, /*phase_one=*/true, status);

    const double infeas = tab.objective(phase1_cost);
    const double scale = problem_scale(lp);
    if (infeas > kFeasTol * scale * 10.0) {
        const std::vector<double> mult = tab.multipliers(phase1_cost);
        LpOutcome out;
        out.status = LpStatus::Infeasible;
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.dual.resize(lp.rows.size());
        for (std::size_t r = 0; r < lp.rows.size(); ++r) out.dual[r] = st.row_sign[r] * mult[r];
        verify_farkas(lp, out.dual);
        return out;
    }

    tab.drive_out_artificials();

    // Phase 2 with the real objective.
    std::vector<double> phase2_cost(st.num_cols + st.num_rows, 0.0);
    std::copy(st.cost.begin(), st.cost.end(), phase2_cost.begin());
    run_simplex(tab, phase2_cost, /*phase_one=*/false, status);
    if (status == LpStatus::Unbounded) {
        LpOutcome out;
        out.status = LpStatus::Unbounded;
        out.value = -std::numeric_limits<double>::infinity();
        return out;
    }

    const std::vector<double> z = tab.primal();
    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.primal.resize(lp.num_vars());
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const auto [pos, neg] = st.var_map[j];
        if (neg >= 0)
            out.primal[j] = z[pos] - z[neg];
        else
            out.primal[j] = lower_of(lp, j) + z[pos];
    }
    double value = 0.0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) value += lp.objective[j] * out.primal[j];
    out.value = value;

    const std::vector<double> mult = tab.multipliers(phase2_cost);
    out.dual.resize(lp.rows.size());
    for (std::size_t r = 0; r < lp.rows.size(); ++r) out.dual[r] = st.row_sign[r] * mult[r];
    verify_optimal(lp, out.primal, out.dual, out.value);
    return out;
}

} // namespace vbp::lp
