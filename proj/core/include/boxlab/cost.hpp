#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boxlab/catalog.hpp"
#include "boxlab/simplex.hpp"

namespace boxlab {

/// Sparse +-1 rows over table coordinates (input_index * out_size + output_index).
struct SparseRow {
    std::vector<std::pair<std::int64_t, int>> terms;
};

/// Homogeneous no-signaling equalities a table must satisfy. Single mode
/// emits the per-subsystem input-change conditions, which generate the full
/// family; exhaustive mode emits every bipartition condition for audits.
std::vector<SparseRow> ns_equalities(const SystemLayout& layout,
                                     NsCheckMode mode = NsCheckMode::single_cuts);

// ---------------------------------------------------------------------------

enum class LocalModelKind { det16, det256, lrns576 };

VertexSet make_local_model(LocalModelKind kind);
std::string local_model_name(LocalModelKind kind);

/// Witness of an optimal decomposition target = Y + sum_m lambda_m V_m with
/// Y the unnormalized non-signaling part of weight p.
struct CostCertificate {
    Rational p;
    std::vector<Rational> y;             // table-coordinate order
    std::map<int, Rational> lambda;      // vertex index -> weight, nonzeros only
    long pivot_count = 0;
};

/// Non-locality cost: minimal p with target = p X + (1-p) L over X
/// non-signaling and L in the convex hull of the model vertices. Exact
/// rational simplex; the certificate passes verify_certificate.
CostCertificate nonlocal_cost(const BoxTable& target, const VertexSet& model);

/// Exact re-check of every certificate invariant, independent of the solver:
/// Y >= 0 and non-signaling, rows of Y sum to p, lambda a subdistribution of
/// mass 1-p, and the decomposition reproduces the target entrywise.
bool verify_certificate(const BoxTable& target, const CostCertificate& cert, const VertexSet& model,
                        NsCheckMode mode = NsCheckMode::single_cuts, std::string* why = nullptr);

/// 4*alpha - 3 on (3/4, 1], zero on the local region [0, 3/4].
Rational isotropic_cost_closed_form(const Rational& alpha);

/// CHSH value <00>+<01>+<10>-<11> with <ij> = P(a=b|ij) - P(a!=b|ij).
Rational chsh_gamma(const BoxTable& box);

}  // namespace boxlab
