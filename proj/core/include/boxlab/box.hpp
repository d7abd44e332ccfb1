#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boxlab/layout.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

class ContractViolation : public std::runtime_error {
  public:
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Conditional probability table over a layout: for every joint input a
/// distribution over joint outputs. Immutable after construction; all
/// operations below are pure and return fresh tables.
class BoxTable {
  public:
    BoxTable(SystemLayout layout, std::vector<Rational> entries);

    const SystemLayout& layout() const { return layout_; }
    std::int64_t input_space_size() const { return layout_.input_space_size(); }
    std::int64_t output_space_size() const { return layout_.output_space_size(); }

    const Rational& at(std::int64_t input_index, std::int64_t output_index) const {
        return entries_[input_index * layout_.output_space_size() + output_index];
    }
    const Rational& at(std::span<const int> inputs, std::span<const int> outputs) const;
    const std::vector<Rational>& entries() const { return entries_; }

    friend bool operator==(const BoxTable& a, const BoxTable& b) {
        return a.layout_ == b.layout_ && a.entries_ == b.entries_;
    }
    /// Lexicographic order on (layout shape, entries); the canonical form
    /// used for vertex deduplication.
    friend bool operator<(const BoxTable& a, const BoxTable& b);

  private:
    SystemLayout layout_;
    std::vector<Rational> entries_;
};

struct Ensemble {
    std::vector<std::pair<Rational, BoxTable>> members;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    enum class Kind { negativity, normalization };
    Kind kind;
    std::int64_t input_index;
    std::int64_t output_index;  // -1 for normalization violations
    Rational value;             // offending entry, or the row sum
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

/// Exact validity: every entry >= 0 and every input row sums to exactly 1.
ValidationReport validate_box(const BoxTable& table);
void require_valid(const BoxTable& table);  // throws ContractViolation

// ---------------------------------------------------------------------------
// Non-signaling

struct NsViolationWitness {
    Bipartition cut;
    /// Group whose marginal changed: indices of `cut.left` or `cut.right`.
    std::vector<int> group;
    std::vector<int> input_a;  // full joint input assignments differing only
    std::vector<int> input_b;  // outside `group`
    std::vector<int> group_output;
    Rational marginal_a;
    Rational marginal_b;
};

/// Def-1 check for one cut: both marginal families must be input-independent.
bool is_nonsignaling(const BoxTable& box, const Bipartition& cut,
                     NsViolationWitness* witness = nullptr);

enum class NsCheckMode {
    single_cuts,  // the n single-subsystem cuts; implies all group cuts
    exhaustive,   // every nontrivial bipartition (debug / audit)
};

bool is_fully_nonsignaling(const BoxTable& box, NsCheckMode mode = NsCheckMode::single_cuts,
                           NsViolationWitness* witness = nullptr);

// ---------------------------------------------------------------------------
// Algebra

constexpr int kNewSite = -1;

/// Product of two boxes. `site_assignment[s]` places site `s` of `b2` onto
/// that site of `b1` (subsystems appended after b1's) or, with kNewSite,
/// appends it as a fresh site. Defaults to all-new-sites.
BoxTable tensor(const BoxTable& b1, const BoxTable& b2, const std::vector<int>& site_assignment = {});

/// Convex combination of compatible boxes, entrywise exact.
BoxTable mix(const Ensemble& ensemble);

/// Marginal on the remaining subsystems: traced inputs fixed, traced outputs
/// summed. Requires the marginal to be independent of the fixed input choice
/// (guaranteed by full non-signaling); throws ContractViolation otherwise.
BoxTable trace_out(const BoxTable& box, const std::vector<int>& subsystems);

/// One conditional row of the table.
struct OutcomeDistribution {
    std::vector<int> output_cards;
    std::vector<Rational> probs;
};

OutcomeDistribution measure(const BoxTable& box, std::span<const int> inputs);

/// Unnormalized L1 distance sum_o |p(o) - q(o)|.
Rational variational_distance(const OutcomeDistribution& p, const OutcomeDistribution& q);

}  // namespace boxlab
