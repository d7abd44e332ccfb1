#include "boxlab/cost.hpp"

#include <array>

namespace boxlab {

namespace {

std::vector<int> subset_cards(const std::vector<int>& cards, const std::vector<int>& indices) {
    std::vector<int> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(cards[i]);
    return out;
}

std::int64_t product(const std::vector<int>& cards) {
    std::int64_t p = 1;
    for (int c : cards) p *= c;
    return p;
}

/// Rows demanding that the `group` output marginal is independent of the
/// complement's inputs (the complement input is compared against its base-0
/// assignment one change at a time is enough, but we emit all pairs against
/// base for simplicity; they are linearly redundant, not wrong).
void marginal_independence_rows(const SystemLayout& layout, const std::vector<int>& group,
                                const std::vector<int>& complement, std::vector<SparseRow>& rows) {
    const auto& in_cards = layout.input_cards();
    const auto& out_cards = layout.output_cards();
    const std::vector<int> g_in = subset_cards(in_cards, group);
    const std::vector<int> g_out = subset_cards(out_cards, group);
    const std::vector<int> c_in = subset_cards(in_cards, complement);
    const std::vector<int> c_out = subset_cards(out_cards, complement);
    const std::int64_t out_size = layout.output_space_size();

    std::vector<int> full_in(in_cards.size()), full_out(out_cards.size());
    auto coord_sum = [&](const std::vector<int>& g_in_digits, std::int64_t ci,
                         const std::vector<int>& g_out_digits, int sign, SparseRow& row) {
        const std::vector<int> c_in_digits = unrank(ci, c_in);
        for (std::size_t k = 0; k < group.size(); ++k) full_in[group[k]] = g_in_digits[k];
        for (std::size_t k = 0; k < complement.size(); ++k) full_in[complement[k]] = c_in_digits[k];
        const std::int64_t in_idx = rank_tuple(full_in, in_cards);
        for (std::size_t k = 0; k < group.size(); ++k) full_out[group[k]] = g_out_digits[k];
        for (std::int64_t co = 0; co < product(c_out); ++co) {
            const std::vector<int> c_out_digits = unrank(co, c_out);
            for (std::size_t k = 0; k < complement.size(); ++k) full_out[complement[k]] = c_out_digits[k];
            row.terms.emplace_back(in_idx * out_size + rank_tuple(full_out, out_cards), sign);
        }
    };

    for (std::int64_t gi = 0; gi < product(g_in); ++gi) {
        const std::vector<int> g_in_digits = unrank(gi, g_in);
        for (std::int64_t go = 0; go < product(g_out); ++go) {
            const std::vector<int> g_out_digits = unrank(go, g_out);
            for (std::int64_t ci = 1; ci < product(c_in); ++ci) {
                SparseRow row;
                coord_sum(g_in_digits, 0, g_out_digits, +1, row);
                coord_sum(g_in_digits, ci, g_out_digits, -1, row);
                rows.push_back(std::move(row));
            }
        }
    }
}

}  // namespace

std::vector<SparseRow> ns_equalities(const SystemLayout& layout, NsCheckMode mode) {
    const int n = layout.subsystem_count();
    std::vector<SparseRow> rows;
    if (mode == NsCheckMode::single_cuts) {
        for (const Bipartition& cut : single_subsystem_cuts(n))
            marginal_independence_rows(layout, cut.right, cut.left, rows);
    } else {
        for (const Bipartition& cut : all_bipartitions(n)) {
            marginal_independence_rows(layout, cut.left, cut.right, rows);
            marginal_independence_rows(layout, cut.right, cut.left, rows);
        }
    }
    return rows;
}

VertexSet make_local_model(LocalModelKind kind) {
    switch (kind) {
        case LocalModelKind::det16:
            return local_deterministic_vertices(SystemLayout::bipartite_2x2());
        case LocalModelKind::det256:
            return local_deterministic_vertices(abcd_layout());
        case LocalModelKind::lrns576:
            return lrns_product_vertices();
    }
    throw std::logic_error("unknown model kind");
}

std::string local_model_name(LocalModelKind kind) {
    switch (kind) {
        case LocalModelKind::det16:
            return "det16";
        case LocalModelKind::det256:
            return "det256";
        case LocalModelKind::lrns576:
            return "lrns576";
    }
    return "?";
}

CostCertificate nonlocal_cost(const BoxTable& target, const VertexSet& model) {
    if (!(target.layout() == model.layout)) throw ContractViolation("nonlocal_cost: model layout mismatch");
    require_valid(target);
    if (!is_fully_nonsignaling(target)) throw ContractViolation("nonlocal_cost: target must be fully non-signaling");

    // C(P) = 1 - max sum(lambda) with sum_m lambda_m V_m <= P entrywise.
    // The NS part Y := P - sum lambda V inherits every no-signaling equality
    // from P and the vertices, so only the inequalities constrain the LP.
    const std::int64_t cells = static_cast<std::int64_t>(target.entries().size());

    // Coordinates where P vanishes force lambda_m = 0 for every vertex
    // supported there; both the rows and those columns drop out.
    std::vector<std::int64_t> live_coords;
    for (std::int64_t cidx = 0; cidx < cells; ++cidx)
        if (target.entries()[cidx] != 0) live_coords.push_back(cidx);

    std::vector<int> survivors;
    for (int m = 0; m < static_cast<int>(model.vertices.size()); ++m) {
        const auto& v = model.vertices[m].entries();
        bool ok = true;
        for (std::int64_t cidx = 0; cidx < cells && ok; ++cidx)
            if (v[cidx] != 0 && target.entries()[cidx] == 0) ok = false;
        if (ok) survivors.push_back(m);
    }

    CostCertificate cert;
    cert.y = target.entries();
    if (!survivors.empty()) {
        std::vector<std::vector<Rational>> A(live_coords.size(),
                                             std::vector<Rational>(survivors.size(), Rational(0)));
        std::vector<Rational> b(live_coords.size());
        for (std::size_t r = 0; r < live_coords.size(); ++r) {
            b[r] = target.entries()[live_coords[r]];
            for (std::size_t m = 0; m < survivors.size(); ++m)
                A[r][m] = model.vertices[survivors[m]].entries()[live_coords[r]];
        }
        const std::vector<Rational> ones(survivors.size(), Rational(1));
        LpResult lp = simplex_max_leq(A, b, ones);
        if (lp.status != LpStatus::optimal) throw std::logic_error("cost LP must have an optimum");
        cert.pivot_count = lp.pivot_count;
        for (std::size_t m = 0; m < survivors.size(); ++m) {
            if (lp.x[m] == 0) continue;
            cert.lambda[survivors[m]] = lp.x[m];
            const auto& v = model.vertices[survivors[m]].entries();
            for (std::int64_t cidx = 0; cidx < cells; ++cidx)
                if (v[cidx] != 0) cert.y[cidx] -= lp.x[m] * v[cidx];
        }
        cert.p = 1 - lp.objective;
    } else {
        cert.p = 1;
    }
    return cert;
}

bool verify_certificate(const BoxTable& target, const CostCertificate& cert, const VertexSet& model,
                        NsCheckMode mode, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    const std::int64_t cells = static_cast<std::int64_t>(target.entries().size());
    if (!(target.layout() == model.layout)) return fail("model layout mismatch");
    if (static_cast<std::int64_t>(cert.y.size()) != cells) return fail("Y size mismatch");

    for (const Rational& v : cert.y)
        if (v < 0) return fail("Y has a negative entry");

    for (const SparseRow& row : ns_equalities(target.layout(), mode)) {
        Rational sum = 0;
        for (const auto& [coord, sign] : row.terms) sum += sign * cert.y[coord];
        if (sum != 0) return fail("Y violates a no-signaling equality");
    }

    const std::int64_t out_size = target.output_space_size();
    for (std::int64_t in = 0; in < target.input_space_size(); ++in) {
        Rational row_sum = 0;
        for (std::int64_t out = 0; out < out_size; ++out) row_sum += cert.y[in * out_size + out];
        if (row_sum != cert.p) return fail("an input row of Y does not sum to p");
    }

    Rational lambda_sum = 0;
    for (const auto& [index, weight] : cert.lambda) {
        if (index < 0 || index >= static_cast<int>(model.vertices.size())) return fail("lambda index out of range");
        if (weight < 0) return fail("negative lambda weight");
        lambda_sum += weight;
    }
    if (lambda_sum != 1 - cert.p) return fail("lambda mass is not 1-p");

    for (std::int64_t cidx = 0; cidx < cells; ++cidx) {
        Rational reconstructed = cert.y[cidx];
        for (const auto& [index, weight] : cert.lambda)
            reconstructed += weight * model.vertices[index].entries()[cidx];
        if (reconstructed != target.entries()[cidx]) return fail("decomposition does not reproduce the target");
    }
    return true;
}

Rational isotropic_cost_closed_form(const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw ContractViolation("isotropic cost: alpha outside [0,1]");
    if (alpha <= Rational(3, 4)) return 0;
    return 4 * alpha - 3;
}

Rational chsh_gamma(const BoxTable& box) {
    if (!(box.layout() == SystemLayout::bipartite_2x2()))
        throw LayoutError("chsh_gamma: expected one binary subsystem per side");
    auto correlator = [&](int x, int y) {
        Rational e = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const Rational& p = box.at(std::array{x, y}, std::array{a, b});
                e += (a == b) ? p : -p;
            }
        return e;
    };
    return correlator(0, 0) + correlator(0, 1) + correlator(1, 0) - correlator(1, 1);
}

}  // namespace boxlab
