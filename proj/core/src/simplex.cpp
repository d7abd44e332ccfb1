#include "boxlab/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxlab {

namespace {

/// Dense rational tableau in canonical form. Pricing uses Dantzig's rule and
/// falls back to Bland's rule while pivots stay degenerate, which is enough
/// to rule out cycling; exactness makes every tie and every zero decidable.
class Tableau {
  public:
    Tableau(int rows, int cols) : m_(rows), n_(cols), rhs_(rows), cost_(cols), basis_(rows) {
        rows_.assign(m_, std::vector<Rational>(n_, Rational(0)));
        eligible_.assign(n_, true);
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<Rational> cost_;  // reduced costs (minimization: optimal when all >= 0)
    std::vector<int> basis_;
    std::vector<bool> eligible_;  // columns allowed to enter
    int m_, n_;
    long pivots_ = 0;

    void pivot(int row, int col) {
        std::vector<Rational>& prow = rows_[row];
        const Rational inv = 1 / prow[col];
        if (inv != 1) {
            for (Rational& v : prow)
                if (v != 0) v *= inv;
            rhs_[row] *= inv;
        }
        prow[col] = 1;

        // Nonzero pattern of the pivot row, reused for every elimination.
        static thread_local std::vector<int> support;
        support.clear();
        for (int j = 0; j < n_; ++j)
            if (prow[j] != 0) support.push_back(j);

        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            Rational& f = rows_[i][col];
            if (f == 0) continue;
            const Rational factor = f;
            for (int j : support) rows_[i][j] -= factor * prow[j];
            rows_[i][col] = 0;
            rhs_[i] -= factor * rhs_[row];
        }
        Rational& cf = cost_[col];
        if (cf != 0) {
            const Rational factor = cf;
            for (int j : support) cost_[j] -= factor * prow[j];
            cost_[col] = 0;
        }
        basis_[row] = col;
        ++pivots_;
    }

    /// Runs the primal simplex to optimality. Returns false on unboundedness.
    bool solve() {
        int degenerate_streak = 0;
        for (;;) {
            const bool bland = degenerate_streak > 64;
            int col = -1;
            if (bland) {
                for (int j = 0; j < n_; ++j)
                    if (eligible_[j] && cost_[j] < 0) {
                        col = j;
                        break;
                    }
            } else {
                const Rational* best = nullptr;
                for (int j = 0; j < n_; ++j)
                    if (eligible_[j] && cost_[j] < 0 && (!best || cost_[j] < *best)) {
                        best = &cost_[j];
                        col = j;
                    }
            }
            if (col < 0) return true;

            int row = -1;
            for (int i = 0; i < m_; ++i) {
                if (rows_[i][col] <= 0) continue;
                if (row < 0) {
                    row = i;
                    continue;
                }
                const int cmp = (rhs_[i] * rows_[row][col]).compare(rhs_[row] * rows_[i][col]);
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[row])) row = i;
            }
            if (row < 0) return false;

            degenerate_streak = rhs_[row] == 0 ? degenerate_streak + 1 : 0;
            pivot(row, col);
        }
    }
};

}  // namespace

LpResult simplex_max_leq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                         const std::vector<Rational>& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (const Rational& v : b)
        if (v < 0) throw std::invalid_argument("simplex_max_leq requires b >= 0");

    Tableau t(m, n + m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("simplex: row arity mismatch");
        for (int j = 0; j < n; ++j) t.rows_[i][j] = A[i][j];
        t.rows_[i][n + i] = 1;
        t.rhs_[i] = b[i];
        t.basis_[i] = n + i;
    }
    for (int j = 0; j < n; ++j) t.cost_[j] = -c[j];  // maximize c == minimize -c

    LpResult result;
    if (!t.solve()) {
        result.status = LpStatus::unbounded;
        result.pivot_count = t.pivots_;
        return result;
    }
    result.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (t.basis_[i] < n) result.x[t.basis_[i]] = t.rhs_[i];
    for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    result.pivot_count = t.pivots_;
    return result;
}

LpResult simplex_min_eq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                        const std::vector<Rational>& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());

    Tableau t(m, n + m);  // artificial column per row
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("simplex: row arity mismatch");
        const bool flip = b[i] < 0;
        for (int j = 0; j < n; ++j) t.rows_[i][j] = flip ? -A[i][j] : A[i][j];
        t.rhs_[i] = flip ? -b[i] : b[i];
        t.rows_[i][n + i] = 1;
        t.basis_[i] = n + i;
    }
    // Phase 1: minimize the artificial sum; reduced costs 0 - sum of rows.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) t.cost_[j] -= t.rows_[i][j];

    LpResult result;
    if (!t.solve()) throw std::logic_error("phase 1 cannot be unbounded");
    Rational artificial_mass = 0;
    for (int i = 0; i < m; ++i)
        if (t.basis_[i] >= n) artificial_mass += t.rhs_[i];
    if (artificial_mass != 0) {
        result.status = LpStatus::infeasible;
        result.pivot_count = t.pivots_;
        return result;
    }

    // Drive basic artificials out; a row with no structural pivot is redundant.
    std::vector<bool> drop(m, false);
    for (int i = 0; i < m; ++i) {
        if (t.basis_[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (t.rows_[i][j] != 0) {
                col = j;
                break;
            }
        if (col < 0)
            drop[i] = true;
        else
            t.pivot(i, col);
    }
    for (int j = n; j < n + m; ++j) t.eligible_[j] = false;

    // Phase 2 costs relative to the current basis.
    t.cost_.assign(n + m, Rational(0));
    for (int j = 0; j < n; ++j) t.cost_[j] = c[j];
    for (int i = 0; i < m; ++i) {
        if (drop[i]) continue;
        const int bj = t.basis_[i];
        if (bj >= n || c[bj] == 0) continue;
        const Rational factor = c[bj];
        for (int j = 0; j < n + m; ++j)
            if (t.rows_[i][j] != 0) t.cost_[j] -= factor * t.rows_[i][j];
    }
    if (int dropped = static_cast<int>(std::count(drop.begin(), drop.end(), true)); dropped > 0) {
        // Compact away redundant rows so the ratio test never sees them.
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        std::vector<int> basis;
        for (int i = 0; i < m; ++i) {
            if (drop[i]) continue;
            rows.push_back(std::move(t.rows_[i]));
            rhs.push_back(std::move(t.rhs_[i]));
            basis.push_back(t.basis_[i]);
        }
        t.rows_ = std::move(rows);
        t.rhs_ = std::move(rhs);
        t.basis_ = std::move(basis);
        t.m_ -= dropped;
    }

    if (!t.solve()) {
        result.status = LpStatus::unbounded;
        result.pivot_count = t.pivots_;
        return result;
    }
    result.x.assign(n, Rational(0));
    for (int i = 0; i < t.m_; ++i)
        if (t.basis_[i] < n) result.x[t.basis_[i]] = t.rhs_[i];
    for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    result.pivot_count = t.pivots_;
    return result;
}

}  // namespace boxlab
