#include "geo/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geo {

namespace {

constexpr std::size_t kMaxAtoms = 2000;

// Transportation simplex over the complete bipartite graph. The basis is a
// spanning tree with n + m - 1 cells; entering/leaving choices follow
// Bland's rule (first eligible in fixed scan order), which rules out
// cycling even on the degenerate bases that equal masses produce.
class TransportSimplex {
  public:
    TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                     std::vector<double> cost)
        : n_(supply.size()), m_(demand.size()), supply_(std::move(supply)),
          demand_(std::move(demand)), cost_(std::move(cost)) {}

    void solve() {
        northwest_corner();
        const double cmax = *std::max_element(cost_.begin(), cost_.end());
        const double tol = 1e-13 * (1.0 + cmax);
        const std::size_t max_pivots = 1000 * (n_ + m_) * (n_ + m_) + 10000;
        for (std::size_t pivot = 0;; ++pivot) {
            if (pivot > max_pivots) throw Error("transport solver failed to converge");
            compute_potentials();
            std::size_t enter_i = n_, enter_j = m_;
            for (std::size_t i = 0; i < n_ && enter_i == n_; ++i) {
                for (std::size_t j = 0; j < m_; ++j) {
                    if (basic_[i * m_ + j]) continue;
                    if (cost_[i * m_ + j] - u_[i] - v_[j] < -tol) {
                        enter_i = i;
                        enter_j = j;
                        break;
                    }
                }
            }
            if (enter_i == n_) break;
            pivot_on(enter_i, enter_j);
        }
    }

    double flow(std::size_t i, std::size_t j) const { return flow_[i * m_ + j]; }
    bool basic(std::size_t i, std::size_t j) const { return basic_[i * m_ + j]; }

  private:
    void northwest_corner() {
        flow_.assign(n_ * m_, 0.0);
        basic_.assign(n_ * m_, false);
        std::vector<double> a = supply_, b = demand_;
        std::size_t i = 0, j = 0;
        while (true) {
            basic_[i * m_ + j] = true;
            const double t = std::min(a[i], b[j]);
            flow_[i * m_ + j] = t;
            a[i] -= t;
            b[j] -= t;
            if (i == n_ - 1 && j == m_ - 1) break;
            // On exact ties advance one side only, keeping a zero basic cell
            // so the basis stays a spanning tree. Rounding residue from the
            // rebalancing stays inside the last row/column.
            if (i == n_ - 1)
                ++j;
            else if (j == m_ - 1)
                ++i;
            else if (a[i] <= b[j])
                ++i;
            else
                ++j;
        }
    }

    void compute_potentials() {
        std::vector<std::vector<std::size_t>> cols_of_row(n_), rows_of_col(m_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < m_; ++j)
                if (basic_[i * m_ + j]) {
                    cols_of_row[i].push_back(j);
                    rows_of_col[j].push_back(i);
                }
        u_.assign(n_, 0.0);
        v_.assign(m_, 0.0);
        std::vector<bool> u_set(n_, false), v_set(m_, false);
        u_set[0] = true;
        std::size_t fixed = 1;
        // BFS over the basis tree from row 0.
        std::vector<std::pair<bool, std::size_t>> queue{{true, 0}};  // (is_row, index)
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto [is_row, idx] = queue[head];
            if (is_row) {
                for (std::size_t j : cols_of_row[idx]) {
                    if (v_set[j]) continue;
                    v_[j] = cost_[idx * m_ + j] - u_[idx];
                    v_set[j] = true;
                    ++fixed;
                    queue.emplace_back(false, j);
                }
            } else {
                for (std::size_t i : rows_of_col[idx]) {
                    if (u_set[i]) continue;
                    u_[i] = cost_[i * m_ + idx] - v_[idx];
                    u_set[i] = true;
                    ++fixed;
                    queue.emplace_back(true, i);
                }
            }
        }
        if (fixed != n_ + m_) throw Error("transport basis is not a spanning tree");
    }

    // Locate the unique cycle created by the entering cell via DFS over the
    // basis tree, then shift flow around it.
    void pivot_on(std::size_t ei, std::size_t ej) {
        // Path from row ei to column ej through basic cells.
        std::vector<int> row_parent_col(n_, -1);  // column through which the row was reached
        std::vector<int> col_parent_row(m_, -1);
        std::vector<bool> row_seen(n_, false), col_seen(m_, false);
        row_seen[ei] = true;
        std::vector<std::size_t> row_stack{ei};
        std::vector<std::size_t> col_stack;
        bool found = false;
        while (!found && (!row_stack.empty() || !col_stack.empty())) {
            if (!row_stack.empty()) {
                const std::size_t i = row_stack.back();
                row_stack.pop_back();
                for (std::size_t j = 0; j < m_; ++j) {
                    if (!basic_[i * m_ + j] || col_seen[j]) continue;
                    col_seen[j] = true;
                    col_parent_row[j] = static_cast<int>(i);
                    if (j == ej) {
                        found = true;
                        break;
                    }
                    col_stack.push_back(j);
                }
            } else {
                const std::size_t j = col_stack.back();
                col_stack.pop_back();
                for (std::size_t i = 0; i < n_; ++i) {
                    if (!basic_[i * m_ + j] || row_seen[i]) continue;
                    row_seen[i] = true;
                    row_parent_col[i] = static_cast<int>(j);
                    row_stack.push_back(i);
                }
            }
        }
        if (!found) throw Error("transport pivot lost the basis tree");

        // Reconstruct the alternating cycle: (ei,ej) gets +theta, then
        // alternate - / + walking back to ei.
        std::vector<std::pair<std::size_t, std::size_t>> minus_cells, plus_cells;
        plus_cells.emplace_back(ei, ej);
        std::size_t j = ej;
        while (true) {
            const std::size_t i = static_cast<std::size_t>(col_parent_row[j]);
            minus_cells.emplace_back(i, j);
            if (i == ei) break;
            j = static_cast<std::size_t>(row_parent_col[i]);
            plus_cells.emplace_back(i, j);
        }

        double theta = std::numeric_limits<double>::infinity();
        std::size_t leave_idx = 0;
        for (std::size_t k = 0; k < minus_cells.size(); ++k) {
            const double f = flow_[minus_cells[k].first * m_ + minus_cells[k].second];
            const std::size_t cell = minus_cells[k].first * m_ + minus_cells[k].second;
            const std::size_t best = minus_cells[leave_idx].first * m_ + minus_cells[leave_idx].second;
            // Bland-style: smallest cell index among the blocking minimizers.
            if (f < theta || (f == theta && cell < best)) {
                theta = f;
                leave_idx = k;
            }
        }
        for (const auto& [i2, j2] : plus_cells) flow_[i2 * m_ + j2] += theta;
        for (const auto& [i2, j2] : minus_cells) flow_[i2 * m_ + j2] -= theta;
        const auto [li, lj] = minus_cells[leave_idx];
        basic_[li * m_ + lj] = false;
        flow_[li * m_ + lj] = 0.0;
        basic_[ei * m_ + ej] = true;
    }

    std::size_t n_, m_;
    std::vector<double> supply_, demand_, cost_;
    std::vector<double> flow_;
    std::vector<bool> basic_;
    std::vector<double> u_, v_;
};

struct Compacted {
    std::vector<Point> atoms;
    std::vector<double> masses;
    std::vector<std::size_t> original_index;
};

Compacted drop_zero_atoms(const DiscreteMeasure& m) {
    Compacted c;
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        if (m.masses[i] > 0.0) {
            c.atoms.push_back(m.atoms[i]);
            c.masses.push_back(m.masses[i]);
            c.original_index.push_back(i);
        }
    }
    return c;
}

// Deterministic measure ordering so wasserstein1(mu, nu) and
// wasserstein1(nu, mu) run the identical computation.
bool measure_precedes(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        if (lex_less(a.atoms[i], b.atoms[i])) return true;
        if (lex_less(b.atoms[i], a.atoms[i])) return false;
        if (a.masses[i] != b.masses[i]) return a.masses[i] < b.masses[i];
    }
    return false;
}

}  // namespace

TransportPlan wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    mu.validate();
    nu.validate();
    if (measure_precedes(nu, mu)) {
        TransportPlan swapped = wasserstein1(nu, mu);
        for (Flow& f : swapped.flows) std::swap(f.from, f.to);
        std::sort(swapped.flows.begin(), swapped.flows.end(), [](const Flow& a, const Flow& b) {
            return a.from != b.from ? a.from < b.from : a.to < b.to;
        });
        return swapped;
    }

    const double ta = mu.total(), tb = nu.total();
    const double scale = std::max({ta, tb, 1e-300});
    if (std::abs(ta - tb) > 1e-9 * scale) throw Error("unbalanced measure totals");

    Compacted a = drop_zero_atoms(mu);
    Compacted b = drop_zero_atoms(nu);
    if (a.atoms.empty() || b.atoms.empty()) throw Error("cannot transport a zero measure");
    if (a.atoms.size() > kMaxAtoms || b.atoms.size() > kMaxAtoms)
        throw Error("transport instance too large (over 2000 atoms)");

    // Rebalance the (tolerated) rounding gap so the simplex sees an exactly
    // balanced instance.
    const double fix = ta / tb;
    for (double& w : b.masses) w *= fix;

    const std::size_t n = a.atoms.size(), m = b.atoms.size();
    std::vector<double> cost(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) cost[i * m + j] = distance(a.atoms[i], b.atoms[j]);

    TransportSimplex simplex(a.masses, b.masses, cost);
    simplex.solve();

    TransportPlan plan;
    double total_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double f = simplex.flow(i, j);
            if (f > 0.0) {
                plan.flows.push_back({a.original_index[i], b.original_index[j], f});
                total_cost += f * cost[i * m + j];
            }
        }
    }
    plan.cost = total_cost;
    return plan;
}

}  // namespace geo
