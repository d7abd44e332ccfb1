#pragma once

#include <utility>
#include <vector>

#include "boxlab/catalog.hpp"

namespace boxlab {

/// Local reversible relabeling of a one-subsystem-per-side binary box.
/// Alice may flip her input and flip her output by a constant or by her own
/// (post-relabeling) input; symmetrically for Bob.
struct Relabeling2x2 {
    int flip_x = 0, flip_y = 0;
    int a_const = 0, a_from_x = 0;  // a -> a xor a_const xor a_from_x * x
    int b_const = 0, b_from_y = 0;  // b -> b xor b_const xor b_from_y * y
};

BoxTable apply_relabeling(const Relabeling2x2& rel, const BoxTable& box);

/// The eight relabelings averaged by the twirl, indexed by (delta,gamma,theta).
Relabeling2x2 twirl_element(int delta, int gamma, int theta);

/// Uniform average over the eight twirl relabelings. Projects every valid
/// 2x2 box onto the line spanned by B_000 and B_001; B_000 and B_001 are
/// fixed points and B_rst with rs != 00 maps to the uniform box.
BoxTable twirl(const BoxTable& box);

/// Rotation O_j taking B_{r's't'} to B_{(r xor r'),(s xor s'),(r's xor s'r xor t xor t')}
/// for f(j) = rst: a y-flip^r, x-flip^s and b-flip^(t xor rs) combination.
/// (The b-flip exponent carries the extra rs so the composite reproduces the
/// label arithmetic above; x/y flips alone would land on the t-negated box
/// when r = s = 1.)
Relabeling2x2 o_rotation(MaxNonlocalLabel j_label);
BoxTable apply_o(MaxNonlocalLabel j_label, const BoxTable& box);

/// Label arithmetic of O_j on the maximally nonlocal family:
/// o_image_label(j,i) = label of O_j(B_{f(i)}).
MaxNonlocalLabel o_image_label(MaxNonlocalLabel j, MaxNonlocalLabel i);

// ---------------------------------------------------------------------------
// Control rotations

/// Flag alphabet plus the map j -> f(j) selecting which O_j each flag value
/// controls.
struct ControlRotation {
    int flag_alphabet = 0;
    std::vector<MaxNonlocalLabel> labels;  // size flag_alphabet

    static ControlRotation identity_map(int alphabet);
};

/// Applies O_j to the 2x2 target conditioned on the flag pair, Alice flipping
/// her target input on her flag value and Bob flipping his input/output on
/// his. Expects layout [[target(2,2), flag(1,n)], [target(2,2), flag(1,n)]]
/// with identical-flag (diagonal) support and input-independent flag
/// statistics; throws ContractViolation otherwise.
BoxTable control_o(const BoxTable& composite, const ControlRotation& rotation);

// ---------------------------------------------------------------------------
// Comparing operations

/// Measure a fixed input pair, exchange outcomes, map each class I_k of the
/// outcome partition to the identical flag pair (k,k), trace out the results.
struct ComparingOperation {
    std::vector<int> measurement;                          // {i, j}
    std::vector<std::vector<std::pair<int, int>>> partition;  // I_k over (a,b)
};

/// Partition sanity for a given pair of output cardinalities: disjoint classes
/// covering the full product set. Throws ContractViolation otherwise.
void check_partition(const ComparingOperation& op, int out_a, int out_b);

/// Apply to a one-subsystem-per-side bipartite box; output on flag sites
/// [[E],[F]] with weight of (k,k) equal to the I_k mass.
BoxTable comparing_apply(const ComparingOperation& op, const BoxTable& box);

/// Lambda (x) I: act on one subsystem per site (indices within each site),
/// leave the rest untouched. Output sites: untouched subsystems in original
/// order with the flag appended, so acted pair (0,0) on [[A,C],[B,D]] yields
/// [[C,E],[D,F]].
BoxTable comparing_apply_tensored(const ComparingOperation& op, const BoxTable& box,
                                  std::pair<int, int> acted_subsystems);

// ---------------------------------------------------------------------------
// Theorem-1 post-processing pipeline

/// Output box after discrimination: sum_ij p(i,j) F(j)(x)F(j)(x)B_i^{beta_i}
/// on layout [[C,E],[D,F]].
BoxTable build_b_out(const std::vector<std::vector<Rational>>& p_joint, const std::vector<Rational>& betas,
                     const std::vector<MaxNonlocalLabel>& labels);

struct PipelineResult {
    Rational q;        // B'_out = q B_000 + (1-q) B_001
    BoxTable iso_box;  // the 2x2 result itself
};

/// control-O_j, trace out the flags, twirl; decomposes the resulting
/// isotropic box exactly.
PipelineResult theorem1_pipeline(const BoxTable& b_out, const ControlRotation& rotation);

}  // namespace boxlab
