#pragma once

#include <optional>

#include "boxlab/cost.hpp"
#include "boxlab/transforms.hpp"

namespace boxlab {

/// Ensemble of isotropic boxes to discriminate, plus the flag parameters
/// beta_i of the correlated copies.
struct ScenarioMember {
    Rational weight;
    MaxNonlocalLabel label;  // f(i)
    Rational alpha;
};

struct DiscriminationScenario {
    std::vector<ScenarioMember> members;
    std::vector<Rational> betas;
};

enum class BoundFormula { theorem1, corollary_alpha, corollary_maxflags };

struct BoundReport {
    Rational bound;      // headline value: the inequality right-hand side, or
                         // the implied p_s bound for the corollaries
    Rational cost_used;  // C(B_in) the bound derives from
    std::optional<Rational> ps_bound;  // success bound when all betas share a value > 1/2
    BoundFormula formula;
    LocalModelKind model;
};

/// sum_i p(i,i)(beta_i + max beta - 1) <= (C(B_in)+3)/4 + max beta - 1.
/// Builds B_in, solves the cost LP, reports the right-hand side.
BoundReport theorem1_bound(const DiscriminationScenario& scenario, const VertexSet& model,
                           LocalModelKind model_tag);

/// Common alpha = beta: p_s <= (C(B_in) - 1 + 4 alpha) / (4 (2 alpha - 1)).
BoundReport corollary_alpha_bound(const std::vector<std::pair<Rational, MaxNonlocalLabel>>& members,
                                  const Rational& alpha, const VertexSet& model, LocalModelKind model_tag);

// ---------------------------------------------------------------------------
// Universal bound sweeps

struct SweepRow {
    std::vector<MaxNonlocalLabel> labels;
    Rational cost;
    Rational bound;  // (C+3)/4
};

struct SweepResult {
    int k = 0;
    Rational alpha;
    LocalModelKind model;
    std::vector<SweepRow> rows;   // every C(8,k) subset, lexicographic
    Rational min_bound;           // the paper's aggregation
    Rational max_bound;           // bound valid for every k-ensemble
};

/// Equal-weight ensembles of k distinct B^alpha_rst with beta = 1 flags.
SweepResult universal_bound_sweep(int k, const Rational& alpha, const VertexSet& model,
                                  LocalModelKind model_tag, int threads = 1);

// ---------------------------------------------------------------------------
// Distinguishers

struct HelstromResult {
    Rational bound;  // 1/2 + max_xy L1/4
    std::vector<int> best_measurement;             // lexicographically smallest maximizer
    std::vector<std::vector<int>> maximizers;       // all inputs attaining the max
};

HelstromResult helstrom_lower_bound(const BoxTable& x1, const BoxTable& x2);

/// The comparing operation induced by a Helstrom measurement: guess x1 on
/// outcomes with strictly larger x1-probability, x2 otherwise.
ComparingOperation comparing_from_helstrom(const BoxTable& x1, const BoxTable& x2,
                                           const std::vector<int>& measurement);

/// Success probability of a comparing operation on a two-box equal-structure
/// ensemble: sum_i p_i * mass of class I_i under box i.
Rational comparing_success(const ComparingOperation& op, const Ensemble& ensemble);

struct DistinguishStrategy {
    std::vector<int> measurement;
    std::vector<std::vector<std::int64_t>> outcome_sets;  // per hypothesis, joint output indices
    Rational success_probability;
};

/// Joint input where the two conditional rows have disjoint supports; the
/// induced two-class partition succeeds with probability one.
std::optional<DistinguishStrategy> perfect_distinguish_search(const BoxTable& e1, const BoxTable& e2);

struct ConclusiveResult {
    std::vector<int> measurement;
    std::vector<std::int64_t> outcomes;  // joint output indices
    Rational probability;                // x-mass of the y-null outcome set
};

/// Best measurement whose y-impossible outcomes carry positive x-mass.
std::optional<ConclusiveResult> conclusive_distinguish(const BoxTable& x, const BoxTable& y);

// ---------------------------------------------------------------------------
// Extremality

/// Vertex test for the fully-non-signaling polytope: the homogeneous equality
/// system (normalization + no-signaling) restricted to the support
/// coordinates must have full column rank.
bool is_extremal(const BoxTable& box);

/// supp(e1) within supp(e2)?
bool support_containment(const BoxTable& e1, const BoxTable& e2);

// ---------------------------------------------------------------------------
// Theorem-1 bookkeeping

/// The coefficient of B_000 in the twirled, rotated output, evaluated from
/// the joint flag distribution by label arithmetic (diagonal keeps beta_i,
/// off-diagonal contributes beta_i, 1-beta_i or 1/2 by the image label).
Rational theorem1_q_formula(const std::vector<std::vector<Rational>>& p_joint,
                            const std::vector<Rational>& betas,
                            const std::vector<MaxNonlocalLabel>& labels);

/// Lower bound sum_i p(i,i)(beta_i + max beta - 1) + (1 - max beta) that the
/// pipeline's q must dominate.
Rational theorem1_aim_rhs(const std::vector<std::vector<Rational>>& p_joint,
                          const std::vector<Rational>& betas);

}  // namespace boxlab
