#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "box.hpp"

namespace hardyamp {

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        default: return "unbounded";
    }
}

/// One linear constraint: a . x  rel  rhs, with rel in {'=', '<', '>'}
/// ('<' and '>' mean <= and >=).
struct LPRow {
    std::vector<double> a;
    char rel = '=';
    double rhs = 0.0;
};

/**
 * Dense linear program over nonnegative variables. Variables flagged in
 * fixedZero are pinned to exactly 0: their columns are barred from every
 * basis, so the fixing holds at the solution and at every simplex vertex.
 */
struct LPProblem {
    int nVars = 0;
    std::vector<LPRow> rows;
    std::vector<double> objective;
    bool maximize = true;
    std::vector<std::uint8_t> fixedZero;

    void require() const {
        if (nVars < 1) throw StructuralError("LPProblem: nVars < 1");
        if (objective.size() != static_cast<std::size_t>(nVars))
            throw StructuralError("LPProblem: objective size mismatch");
        if (!fixedZero.empty() && fixedZero.size() != static_cast<std::size_t>(nVars))
            throw StructuralError("LPProblem: fixedZero size mismatch");
        for (const LPRow& r : rows) {
            if (r.a.size() != static_cast<std::size_t>(nVars))
                throw StructuralError("LPProblem: row size mismatch");
            if (r.rel != '=' && r.rel != '<' && r.rel != '>')
                throw StructuralError("LPProblem: unknown row relation");
        }
    }
};

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;
    /// One multiplier per input row, oriented so that at an optimum
    /// value == sum(dual[i] * rows[i].rhs) exactly (tableau identity).
    std::vector<double> dual;
    /// Most negative reduced cost over free columns at termination; a valid
    /// dual certificate has this above -1e-7.
    double dualFeasResidual = 0.0;
    long iterations = 0;
};

namespace detail {

/**
 * Two-phase full-tableau simplex. Deterministic by construction: Dantzig
 * entering with lowest-index ties, lowest-basic-index ratio ties, switching
 * to Bland's rule after a fixed iteration budget to break degeneracy cycles.
 */
class SimplexTableau {
public:
    explicit SimplexTableau(const LPProblem& p) : prob_(p) { build(); }

    LPSolution run() {
        LPSolution out;
        if (nArt_ > 0) {
            setPhaseCosts(true);
            Termination t = iterate();
            if (t != Termination::Converged)
                throw SolverError("lp: phase 1 failed to converge");
            if (objective() > 1e-8) {
                out.status = LPStatus::Infeasible;
                out.iterations = iters_;
                return out;
            }
            driveOutArtificials();
        }
        setPhaseCosts(false);
        Termination t = iterate();
        if (t == Termination::IterationLimit) throw SolverError("lp: iteration limit");
        if (t == Termination::Unbounded) {
            out.status = LPStatus::Unbounded;
            out.iterations = iters_;
            return out;
        }

        out.status = LPStatus::Optimal;
        out.iterations = iters_;
        const double zMin = objective();
        out.value = prob_.maximize ? -zMin : zMin;
        out.x.assign(static_cast<std::size_t>(prob_.nVars), 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[ui(i)] < prob_.nVars)
                out.x[ui(basis_[ui(i)])] = std::max(rhs_[ui(i)], 0.0);
        out.dual.resize(ui(m_));
        for (int i = 0; i < m_; ++i) {
            double y = -d_[ui(unitCol_[ui(i)])];
            if (flip_[ui(i)]) y = -y;
            if (prob_.maximize) y = -y;
            out.dual[ui(i)] = y;
        }
        double worst = 0.0;
        for (int j = 0; j < prob_.nVars; ++j)
            if (!barred_[ui(j)]) worst = std::min(worst, d_[ui(j)]);
        out.dualFeasResidual = worst;
        return out;
    }

private:
    enum class Termination { Converged, Unbounded, IterationLimit };
    enum ColKind : std::uint8_t { Structural = 0, Slack = 1, Artificial = 2 };

    static std::size_t ui(int v) { return static_cast<std::size_t>(v); }
    double* row(int i) { return T_.data() + ui(i) * ui(cols_); }

    void build() {
        prob_.require();
        m_ = static_cast<int>(prob_.rows.size());
        flip_.assign(ui(m_), 0);

        int nSlack = 0;
        nArt_ = 0;
        std::vector<char> rel(ui(m_));
        for (int i = 0; i < m_; ++i) {
            char r = prob_.rows[ui(i)].rel;
            if (prob_.rows[ui(i)].rhs < 0) {
                flip_[ui(i)] = 1;
                r = (r == '<') ? '>' : (r == '>') ? '<' : '=';
            }
            rel[ui(i)] = r;
            if (r != '=') ++nSlack;
            if (r != '<') ++nArt_;
        }
        cols_ = prob_.nVars + nSlack + nArt_;
        T_.assign(ui(m_) * ui(cols_), 0.0);
        rhs_.assign(ui(m_), 0.0);
        basis_.assign(ui(m_), -1);
        unitCol_.assign(ui(m_), -1);
        kind_.assign(ui(cols_), Structural);
        barred_.assign(ui(cols_), 0);
        cost2_.assign(ui(cols_), 0.0);
        cost1_.assign(ui(cols_), 0.0);

        for (int j = 0; j < prob_.nVars; ++j) {
            cost2_[ui(j)] = prob_.maximize ? -prob_.objective[ui(j)] : prob_.objective[ui(j)];
            if (!prob_.fixedZero.empty() && prob_.fixedZero[ui(j)]) barred_[ui(j)] = 1;
        }

        int next = prob_.nVars;
        for (int i = 0; i < m_; ++i) {
            const LPRow& src = prob_.rows[ui(i)];
            const double sign = flip_[ui(i)] ? -1.0 : 1.0;
            double* t = row(i);
            for (int j = 0; j < prob_.nVars; ++j) t[ui(j)] = sign * src.a[ui(j)];
            rhs_[ui(i)] = sign * src.rhs;

            if (rel[ui(i)] == '<') {
                t[ui(next)] = 1.0;
                kind_[ui(next)] = Slack;
                basis_[ui(i)] = next;
                unitCol_[ui(i)] = next;
                ++next;
            } else if (rel[ui(i)] == '>') {
                t[ui(next)] = -1.0;
                kind_[ui(next)] = Slack;
                ++next;
            }
        }
        for (int i = 0; i < m_; ++i) {
            if (rel[ui(i)] != '<') {
                row(i)[ui(next)] = 1.0;
                kind_[ui(next)] = Artificial;
                barred_[ui(next)] = 1;  // artificials never re-enter a basis
                cost1_[ui(next)] = 1.0;
                basis_[ui(i)] = next;
                unitCol_[ui(i)] = next;
                ++next;
            }
        }
        d_.assign(ui(cols_), 0.0);
    }

    void setPhaseCosts(bool phase1) {
        cost_ = phase1 ? cost1_.data() : cost2_.data();
        refreshReducedCosts();
    }

    void refreshReducedCosts() {
        for (int j = 0; j < cols_; ++j) d_[ui(j)] = cost_[ui(j)];
        for (int i = 0; i < m_; ++i) {
            const double cb = cost_[ui(basis_[ui(i)])];
            if (cb == 0.0) continue;
            const double* t = row(i);
            for (int j = 0; j < cols_; ++j) d_[ui(j)] -= cb * t[ui(j)];
        }
        for (int i = 0; i < m_; ++i) d_[ui(basis_[ui(i)])] = 0.0;
    }

    double objective() const {
        double z = 0.0;
        for (int i = 0; i < m_; ++i) z += cost_[ui(basis_[ui(i)])] * rhs_[ui(i)];
        return z;
    }

    int chooseEntering(bool bland) const {
        int best = -1;
        double bestD = -kOptTol;
        for (int j = 0; j < cols_; ++j) {
            if (barred_[ui(j)]) continue;
            const double dj = d_[ui(j)];
            if (dj >= bestD) continue;
            if (bland) return j;
            bestD = dj;
            best = j;
        }
        return best;
    }

    int chooseLeaving(int enter) {
        int bestRow = -1;
        double bestRatio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m_; ++i) {
            const double a = row(i)[ui(enter)];
            if (a <= kPivTol) continue;
            const double ratio = rhs_[ui(i)] / a;
            if (ratio < bestRatio - 1e-12 ||
                (ratio < bestRatio + 1e-12 &&
                 (bestRow < 0 || basis_[ui(i)] < basis_[ui(bestRow)])))
            {
                bestRatio = ratio;
                bestRow = i;
            }
        }
        return bestRow;
    }

    void pivot(int pr, int pc) {
        double* p = row(pr);
        const double piv = p[ui(pc)];
        for (int j = 0; j < cols_; ++j) p[ui(j)] /= piv;
        rhs_[ui(pr)] /= piv;
        p[ui(pc)] = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == pr) continue;
            double* t = row(i);
            const double f = t[ui(pc)];
            if (f == 0.0) continue;
            for (int j = 0; j < cols_; ++j) t[ui(j)] -= f * p[ui(j)];
            t[ui(pc)] = 0.0;
            rhs_[ui(i)] -= f * rhs_[ui(pr)];
            if (rhs_[ui(i)] < 0 && rhs_[ui(i)] > -1e-11) rhs_[ui(i)] = 0.0;
        }
        const double f = d_[ui(pc)];
        if (f != 0.0) {
            for (int j = 0; j < cols_; ++j) d_[ui(j)] -= f * p[ui(j)];
            d_[ui(pc)] = 0.0;
        }
        basis_[ui(pr)] = pc;
    }

    Termination iterate() {
        const long blandAfter = 2000 + 20L * m_;
        long phaseIters = 0;
        while (true) {
            if (iters_ >= kHardCap) return Termination::IterationLimit;
            if (phaseIters > 0 && phaseIters % 256 == 0) refreshReducedCosts();
            const int enter = chooseEntering(phaseIters > blandAfter);
            if (enter < 0) {
                refreshReducedCosts();  // settle drift before declaring optimality
                const int confirm = chooseEntering(phaseIters > blandAfter);
                if (confirm < 0) return Termination::Converged;
                continue;
            }
            const int leave = chooseLeaving(enter);
            if (leave < 0) return Termination::Unbounded;
            pivot(leave, enter);
            ++iters_;
            ++phaseIters;
        }
    }

    void driveOutArtificials() {
        for (int i = 0; i < m_; ++i) {
            if (kind_[ui(basis_[ui(i)])] != Artificial) continue;
            const double* t = row(i);
            int col = -1;
            for (int j = 0; j < cols_; ++j) {
                if (kind_[ui(j)] == Artificial || barred_[ui(j)]) continue;
                if (std::abs(t[ui(j)]) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) pivot(i, col);  // degenerate: rhs is 0 here
            // otherwise the row is redundant; the artificial sits at level 0
        }
    }

    static constexpr double kOptTol = 1e-9;
    static constexpr double kPivTol = 1e-11;
    static constexpr long kHardCap = 200000;

    LPProblem prob_;
    int m_ = 0, cols_ = 0, nArt_ = 0;
    std::vector<double> T_, rhs_, d_, cost1_, cost2_;
    const double* cost_ = nullptr;
    std::vector<int> basis_, unitCol_;
    std::vector<char> flip_;
    std::vector<std::uint8_t> kind_, barred_;
    long iters_ = 0;
};

}  // namespace detail

inline LPSolution solve(const LPProblem& problem) { return detail::SimplexTableau(problem).run(); }

/**
 * Base LP over a scenario's no-signaling polytope: one variable per box cell,
 * normalization rows per input pair, marginal-equality rows against the
 * y=0 (respectively x=0) reference setting. Objective starts at zero.
 */
inline LPProblem ns_box_problem(const BellScenario& sc) {
    sc.require();
    LPProblem p;
    p.nVars = sc.cells();
    p.objective.assign(static_cast<std::size_t>(p.nVars), 0.0);
    p.fixedZero.assign(static_cast<std::size_t>(p.nVars), 0);

    auto zeroRow = [&] {
        LPRow r;
        r.a.assign(static_cast<std::size_t>(p.nVars), 0.0);
        return r;
    };
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y) {
            LPRow r = zeroRow();
            r.rel = '=';
            r.rhs = 1.0;
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) r.a[static_cast<std::size_t>(sc.index(x, y, a, b))] = 1.0;
            p.rows.push_back(std::move(r));
        }
    for (int x = 0; x < sc.nX; ++x)
        for (int a = 0; a < sc.nA; ++a)
            for (int y = 1; y < sc.nY; ++y) {
                LPRow r = zeroRow();
                for (int b = 0; b < sc.nB; ++b) {
                    r.a[static_cast<std::size_t>(sc.index(x, 0, a, b))] += 1.0;
                    r.a[static_cast<std::size_t>(sc.index(x, y, a, b))] -= 1.0;
                }
                p.rows.push_back(std::move(r));
            }
    for (int y = 0; y < sc.nY; ++y)
        for (int b = 0; b < sc.nB; ++b)
            for (int x = 1; x < sc.nX; ++x) {
                LPRow r = zeroRow();
                for (int a = 0; a < sc.nA; ++a) {
                    r.a[static_cast<std::size_t>(sc.index(0, y, a, b))] += 1.0;
                    r.a[static_cast<std::size_t>(sc.index(x, y, a, b))] -= 1.0;
                }
                p.rows.push_back(std::move(r));
            }
    return p;
}

/// Rebuild a box from an LP witness over box-cell variables, snapping the
/// solver's sub-1e-9 negative roundoff to exact zeros.
inline ConditionalBox witness_box(const BellScenario& sc, const LPSolution& sol) {
    if (sol.status != LPStatus::Optimal)
        throw SolverError("witness_box: no optimal solution to read a witness from");
    if (sol.x.size() != static_cast<std::size_t>(sc.cells()))
        throw StructuralError("witness_box: solution size does not match scenario");
    std::vector<double> p = sol.x;
    for (double& v : p)
        if (v < 0 && v > -1e-9) v = 0.0;
    return ConditionalBox(sc, std::move(p));
}

}  // namespace hardyamp
