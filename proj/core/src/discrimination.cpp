#include "boxlab/discrimination.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "boxlab/parallel.hpp"

namespace boxlab {

namespace {

void require_compatible(const BoxTable& a, const BoxTable& b, const char* who) {
    if (!a.layout().compatible_with(b.layout()))
        throw ContractViolation(std::string(who) + ": boxes are not compatible");
}

Rational max_of(const std::vector<Rational>& values) {
    Rational best = values.front();
    for (const Rational& v : values) best = std::max(best, v);
    return best;
}

}  // namespace

BoundReport theorem1_bound(const DiscriminationScenario& scenario, const VertexSet& model,
                           LocalModelKind model_tag) {
    const int n = static_cast<int>(scenario.members.size());
    if (n == 0 || static_cast<int>(scenario.betas.size()) != n)
        throw ContractViolation("theorem1_bound: scenario arity mismatch");
    for (const Rational& beta : scenario.betas)
        if (beta < Rational(1, 2) || beta > 1) throw ContractViolation("theorem1_bound: beta outside [1/2,1]");
    for (const ScenarioMember& m : scenario.members)
        if (m.alpha < Rational(1, 2) || m.alpha > 1)
            throw ContractViolation("theorem1_bound: alpha outside [1/2,1]");

    std::vector<BInMember> members;
    for (int i = 0; i < n; ++i)
        members.push_back({scenario.members[i].weight, scenario.members[i].label, scenario.members[i].alpha,
                           scenario.betas[i]});
    const BoxTable b_in = build_b_in(members);
    const Rational cost = nonlocal_cost(b_in, model).p;

    const Rational beta_max = max_of(scenario.betas);
    BoundReport report;
    report.cost_used = cost;
    report.bound = (cost + 3) / 4 + beta_max - 1;
    report.formula = BoundFormula::theorem1;
    report.model = model_tag;
    const bool common_beta =
        std::all_of(scenario.betas.begin(), scenario.betas.end(),
                    [&](const Rational& b) { return b == scenario.betas.front(); });
    if (common_beta && scenario.betas.front() > Rational(1, 2))
        report.ps_bound = report.bound / (2 * scenario.betas.front() - 1);
    return report;
}

BoundReport corollary_alpha_bound(const std::vector<std::pair<Rational, MaxNonlocalLabel>>& members,
                                  const Rational& alpha, const VertexSet& model, LocalModelKind model_tag) {
    if (alpha == Rational(1, 2)) throw ContractViolation("corollary_alpha_bound: undefined at alpha = 1/2");
    if (alpha <= Rational(1, 2) || alpha > 1)
        throw ContractViolation("corollary_alpha_bound: alpha must lie in (1/2, 1]");

    std::vector<BInMember> b_in_members;
    for (const auto& [w, label] : members) b_in_members.push_back({w, label, alpha, alpha});
    const BoxTable b_in = build_b_in(b_in_members);
    const Rational cost = nonlocal_cost(b_in, model).p;

    BoundReport report;
    report.cost_used = cost;
    report.bound = (cost - 1 + 4 * alpha) / (4 * (2 * alpha - 1));
    report.ps_bound = report.bound;
    report.formula = BoundFormula::corollary_alpha;
    report.model = model_tag;
    return report;
}

SweepResult universal_bound_sweep(int k, const Rational& alpha, const VertexSet& model,
                                  LocalModelKind model_tag, int threads) {
    if (k < 2 || k > 8) throw ContractViolation("universal_bound_sweep: k must be in 2..8");

    std::vector<std::vector<MaxNonlocalLabel>> subsets;
    for (unsigned mask = 0; mask < 256; ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<MaxNonlocalLabel> labels;
        for (int idx = 0; idx < 8; ++idx)
            if (mask & (1u << idx)) labels.push_back(MaxNonlocalLabel::from_index(idx));
        subsets.push_back(std::move(labels));
    }
    std::sort(subsets.begin(), subsets.end(),
              [](const auto& a, const auto& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); });

    SweepResult result;
    result.k = k;
    result.alpha = alpha;
    result.model = model_tag;
    result.rows.resize(subsets.size());

    parallel_for(static_cast<std::int64_t>(subsets.size()), threads, [&](std::int64_t row) {
        const auto& labels = subsets[row];
        std::vector<BInMember> members;
        const Rational w(1, k);
        for (const MaxNonlocalLabel& label : labels) members.push_back({w, label, alpha, Rational(1)});
        const BoxTable b_in = build_b_in(members);
        const Rational cost = nonlocal_cost(b_in, model).p;
        result.rows[row] = {labels, cost, (cost + 3) / 4};
    });

    result.min_bound = result.rows.front().bound;
    result.max_bound = result.rows.front().bound;
    for (const SweepRow& row : result.rows) {
        result.min_bound = std::min(result.min_bound, row.bound);
        result.max_bound = std::max(result.max_bound, row.bound);
    }
    return result;
}

// ---------------------------------------------------------------------------

HelstromResult helstrom_lower_bound(const BoxTable& x1, const BoxTable& x2) {
    require_compatible(x1, x2, "helstrom_lower_bound");
    const auto& in_cards = x1.layout().input_cards();
    HelstromResult result;
    Rational best(-1);
    for (std::int64_t in = 0; in < x1.input_space_size(); ++in) {
        Rational l1 = 0;
        for (std::int64_t out = 0; out < x1.output_space_size(); ++out) l1 += abs(x1.at(in, out) - x2.at(in, out));
        if (l1 > best) {
            best = l1;
            result.best_measurement = unrank(in, in_cards);
            result.maximizers.clear();
        }
        if (l1 == best) result.maximizers.push_back(unrank(in, in_cards));
    }
    result.bound = Rational(1, 2) + best / 4;
    return result;
}

ComparingOperation comparing_from_helstrom(const BoxTable& x1, const BoxTable& x2,
                                           const std::vector<int>& measurement) {
    require_compatible(x1, x2, "comparing_from_helstrom");
    const SystemLayout& layout = x1.layout();
    if (layout.site_count() != 2 || layout.sites()[0].size() != 1 || layout.sites()[1].size() != 1)
        throw LayoutError("comparing_from_helstrom: expected one subsystem per side");
    const std::int64_t in = rank_tuple(measurement, layout.input_cards());

    ComparingOperation op;
    op.measurement = measurement;
    op.partition.resize(2);
    const int out_b = layout.subsystem(1).output_card;
    for (std::int64_t out = 0; out < x1.output_space_size(); ++out) {
        const int a = static_cast<int>(out / out_b);
        const int b = static_cast<int>(out % out_b);
        const int cls = x1.at(in, out) > x2.at(in, out) ? 0 : 1;
        op.partition[cls].emplace_back(a, b);
    }
    return op;
}

Rational comparing_success(const ComparingOperation& op, const Ensemble& ensemble) {
    if (ensemble.members.size() != op.partition.size())
        throw ContractViolation("comparing_success: one partition class per hypothesis required");
    Rational success = 0;
    for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
        const auto& [weight, box] = ensemble.members[i];
        const BoxTable flags = comparing_apply(op, box);
        // mass of the diagonal flag pair (i,i)
        success += weight * flags.at(std::array<int, 2>{0, 0},
                                     std::array<int, 2>{static_cast<int>(i), static_cast<int>(i)});
    }
    return success;
}

std::optional<DistinguishStrategy> perfect_distinguish_search(const BoxTable& e1, const BoxTable& e2) {
    require_compatible(e1, e2, "perfect_distinguish_search");
    for (std::int64_t in = 0; in < e1.input_space_size(); ++in) {
        bool disjoint = true;
        for (std::int64_t out = 0; out < e1.output_space_size() && disjoint; ++out)
            if (e1.at(in, out) > 0 && e2.at(in, out) > 0) disjoint = false;
        if (!disjoint) continue;
        DistinguishStrategy strategy;
        strategy.measurement = unrank(in, e1.layout().input_cards());
        strategy.outcome_sets.resize(2);
        for (std::int64_t out = 0; out < e1.output_space_size(); ++out)
            strategy.outcome_sets[e1.at(in, out) > 0 ? 0 : 1].push_back(out);
        strategy.success_probability = 1;
        return strategy;
    }
    return std::nullopt;
}

std::optional<ConclusiveResult> conclusive_distinguish(const BoxTable& x, const BoxTable& y) {
    require_compatible(x, y, "conclusive_distinguish");
    std::optional<ConclusiveResult> best;
    for (std::int64_t in = 0; in < x.input_space_size(); ++in) {
        Rational mass = 0;
        std::vector<std::int64_t> outcomes;
        for (std::int64_t out = 0; out < x.output_space_size(); ++out) {
            if (y.at(in, out) != 0) continue;
            outcomes.push_back(out);
            mass += x.at(in, out);
        }
        if (mass > 0 && (!best || mass > best->probability))
            best = ConclusiveResult{unrank(in, x.layout().input_cards()), std::move(outcomes), mass};
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

/// Rank of a dense rational matrix by Gaussian elimination.
int rational_rank(std::vector<std::vector<Rational>>& m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m.front().size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const Rational inv = 1 / m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

bool is_extremal(const BoxTable& box) {
    require_valid(box);
    if (!is_fully_nonsignaling(box)) throw ContractViolation("is_extremal: box must be fully non-signaling");

    std::vector<std::int64_t> support;
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(box.entries().size()); ++c)
        if (box.entries()[c] != 0) support.push_back(c);
    std::vector<int> col_of(box.entries().size(), -1);
    for (std::size_t i = 0; i < support.size(); ++i) col_of[support[i]] = static_cast<int>(i);

    // Homogeneous equalities: row sums (normalization direction) and the
    // no-signaling family, restricted to the support coordinates.
    std::vector<std::vector<Rational>> rows;
    const std::int64_t out_size = box.output_space_size();
    for (std::int64_t in = 0; in < box.input_space_size(); ++in) {
        std::vector<Rational> row(support.size(), Rational(0));
        for (std::int64_t out = 0; out < out_size; ++out)
            if (int c = col_of[in * out_size + out]; c >= 0) row[c] = 1;
        rows.push_back(std::move(row));
    }
    for (const SparseRow& eq : ns_equalities(box.layout())) {
        std::vector<Rational> row(support.size(), Rational(0));
        for (const auto& [coord, sign] : eq.terms)
            if (int c = col_of[coord]; c >= 0) row[c] += sign;
        rows.push_back(std::move(row));
    }
    return rational_rank(rows) == static_cast<int>(support.size());
}

bool support_containment(const BoxTable& e1, const BoxTable& e2) {
    require_compatible(e1, e2, "support_containment");
    for (std::size_t c = 0; c < e1.entries().size(); ++c)
        if (e1.entries()[c] > 0 && e2.entries()[c] == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

Rational theorem1_q_formula(const std::vector<std::vector<Rational>>& p_joint,
                            const std::vector<Rational>& betas,
                            const std::vector<MaxNonlocalLabel>& labels) {
    const int n = static_cast<int>(p_joint.size());
    if (static_cast<int>(betas.size()) != n || static_cast<int>(labels.size()) != n)
        throw ContractViolation("theorem1_q_formula: arity mismatch");
    const MaxNonlocalLabel id{0, 0, 0}, flip{0, 0, 1};
    Rational q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& p = p_joint[i][j];
            if (p == 0) continue;
            if (i == j) {
                q += p * betas[i];
                continue;
            }
            const MaxNonlocalLabel image = o_image_label(labels[j], labels[i]);
            if (image == id)
                q += p * betas[i];
            else if (image == flip)
                q += p * (1 - betas[i]);
            else
                q += p / 2;
        }
    return q;
}

Rational theorem1_aim_rhs(const std::vector<std::vector<Rational>>& p_joint,
                          const std::vector<Rational>& betas) {
    const Rational beta_max = max_of(betas);
    Rational lhs = 0;
    for (std::size_t i = 0; i < p_joint.size(); ++i) lhs += p_joint[i][i] * (betas[i] + beta_max - 1);
    return lhs + (1 - beta_max);
}

}  // namespace boxlab
