#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "boxlab/discrimination.hpp"

namespace boxlab {

/// Hidden-variable decomposition of an LR_ns box: weights plus per-lambda
/// side boxes, each a fully non-signaling single-site box.
struct LrnsWitness {
    std::vector<Rational> weights;
    std::vector<BoxTable> alice_sides;
    std::vector<BoxTable> bob_sides;
};

/// The mixture of side products the witness claims to reconstruct.
BoxTable witness_box(const LrnsWitness& witness);

/// An operation family under certification: how to apply it to a table, and,
/// when the family admits one, the constructive witness transformation used
/// by the locality-preservation check. Operations without a witness
/// transformer are checked through the cost LP (C(image) = 0).
struct OperationUnderTest {
    std::string name;
    std::function<BoxTable(const BoxTable&)> apply;
    std::function<std::optional<LrnsWitness>(const LrnsWitness&)> transform_witness;
    int flag_classes = 0;  // nonzero when the op claims the Def-5 output form
};

OperationUnderTest make_comparing_op(const ComparingOperation& op);
/// Lambda (x) I on a two-subsystem-per-site composite, acting on the pair (0,0).
OperationUnderTest make_comparing_tensored_op(const ComparingOperation& op);
OperationUnderTest make_control_o_op(const ControlRotation& rotation);
OperationUnderTest make_twirl_op();
OperationUnderTest make_trace_out_op(std::vector<int> subsystems);
/// Exchanges the first subsystem of each site. Locality-preserving alone but
/// not completely so; with bystanders it moves nonlocality across the cut.
OperationUnderTest make_swap_op();
/// Negative control: Bob's flag copies Alice's input. Valid and linear but
/// signaling.
OperationUnderTest make_signaling_control_op();
/// Negative control: comparing-style op emitting mismatched flag pairs.
OperationUnderTest make_asymmetric_flag_op(const ComparingOperation& op);

// ---------------------------------------------------------------------------
// Corpora

/// Random mixtures of model vertices; weights are multiples of 1/64.
std::vector<BoxTable> random_mixture_corpus(const VertexSet& model, int count, int max_components,
                                            std::mt19937_64& rng);

/// Random Def-5 output boxes sum p(i,j) F(j)F(j)B_i^{beta_i} with the given
/// flag alphabet and random labels, weights and betas.
std::vector<BoxTable> random_out_box_corpus(int count, int alphabet, std::mt19937_64& rng,
                                            std::vector<ControlRotation>* rotations = nullptr);

/// Random explicit LR_ns witnesses over products of the given side boxes.
std::vector<LrnsWitness> random_lrns_witnesses(const std::vector<BoxTable>& alice_pool,
                                               const std::vector<BoxTable>& bob_pool, int count,
                                               int max_components, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Checks

struct CheckReport {
    std::string check;
    std::string op;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> failure_notes;

    bool ok() const { return failures == 0; }
};

CheckReport check_validity(const OperationUnderTest& op, const std::vector<BoxTable>& corpus);

CheckReport check_linearity(const OperationUnderTest& op, const std::vector<BoxTable>& corpus,
                            std::mt19937_64& rng);

/// Images must pass the exhaustive-cut full-non-signaling check.
CheckReport check_ns_preservation(const OperationUnderTest& op, const std::vector<BoxTable>& corpus);

/// Witness mode: transform each witness and require exact reconstruction of
/// the image with fully-NS sides. LP mode (no transformer, or cross_check):
/// C(image) = 0 under the deterministic local model of the image layout.
CheckReport check_locality_preservation(const OperationUnderTest& op,
                                        const std::vector<LrnsWitness>& witnesses,
                                        bool lp_cross_check = false);

/// Def-5 form: image is exactly a mixture of identical flag pairs.
CheckReport check_discriminating_form(const OperationUnderTest& op, const Ensemble& ensemble);

}  // namespace boxlab
