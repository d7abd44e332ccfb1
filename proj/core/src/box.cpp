#include "boxlab/box.hpp"

#include <algorithm>
#include <set>

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

}  // namespace

BoxTable::BoxTable(SystemLayout layout, std::vector<Rational> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    const auto expected = layout_.input_space_size() * layout_.output_space_size();
    if (static_cast<std::int64_t>(entries_.size()) != expected)
        throw ContractViolation("malformed table: " + std::to_string(entries_.size()) + " entries for " +
                                std::to_string(expected) + " cells");
}

const Rational& BoxTable::at(std::span<const int> inputs, std::span<const int> outputs) const {
    return at(rank_tuple(inputs, layout_.input_cards()), rank_tuple(outputs, layout_.output_cards()));
}

bool operator<(const BoxTable& a, const BoxTable& b) {
    const auto& sa = a.layout_.sites();
    const auto& sb = b.layout_.sites();
    auto spec_tuple = [](const SubsystemSpec& s) { return std::pair<int, int>(s.input_card, s.output_card); };
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i].size() != sb[i].size()) return sa[i].size() < sb[i].size();
        for (std::size_t j = 0; j < sa[i].size(); ++j)
            if (spec_tuple(sa[i][j]) != spec_tuple(sb[i][j])) return spec_tuple(sa[i][j]) < spec_tuple(sb[i][j]);
    }
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                        b.entries_.end());
}

ValidationReport validate_box(const BoxTable& table) {
    ValidationReport report;
    const std::int64_t out_size = table.output_space_size();
    for (std::int64_t in = 0; in < table.input_space_size(); ++in) {
        Rational row_sum = 0;
        for (std::int64_t out = 0; out < out_size; ++out) {
            const Rational& p = table.at(in, out);
            if (p < 0) {
                report.ok = false;
                report.violations.push_back({Violation::Kind::negativity, in, out, p});
            }
            row_sum += p;
        }
        if (row_sum != 1) {
            report.ok = false;
            report.violations.push_back({Violation::Kind::normalization, in, -1, row_sum});
        }
    }
    return report;
}

void require_valid(const BoxTable& table) {
    if (!validate_box(table).ok) throw ContractViolation("box fails exact validity");
}

// ---------------------------------------------------------------------------

namespace {

/// Marginal vector over `group` outputs for one full input assignment.
std::vector<Rational> group_marginal(const BoxTable& box, const std::vector<int>& group,
                                     const std::vector<int>& full_input) {
    const auto& out_cards = box.layout().output_cards();
    const std::vector<int> g_cards = subset_cards(out_cards, group);
    std::vector<Rational> marginal(product(g_cards), Rational(0));
    const std::int64_t in_idx = rank_tuple(full_input, box.layout().input_cards());
    for (std::int64_t out = 0; out < box.output_space_size(); ++out) {
        const std::vector<int> digits = unrank(out, out_cards);
        std::vector<int> g_digits;
        g_digits.reserve(group.size());
        for (int g : group) g_digits.push_back(digits[g]);
        marginal[rank_tuple(g_digits, g_cards)] += box.at(in_idx, out);
    }
    return marginal;
}

/// Checks that the `group` marginal is independent of the complement's inputs.
bool group_marginal_independent(const BoxTable& box, const Bipartition& cut, const std::vector<int>& group,
                                const std::vector<int>& complement, NsViolationWitness* witness) {
    const auto& in_cards = box.layout().input_cards();
    const std::vector<int> g_in_cards = subset_cards(in_cards, group);
    const std::vector<int> c_in_cards = subset_cards(in_cards, complement);

    for (std::int64_t gi = 0; gi < product(g_in_cards); ++gi) {
        const std::vector<int> g_in = unrank(gi, g_in_cards);
        std::vector<Rational> baseline;
        std::vector<int> baseline_input;
        for (std::int64_t ci = 0; ci < product(c_in_cards); ++ci) {
            const std::vector<int> c_in = unrank(ci, c_in_cards);
            std::vector<int> full(in_cards.size(), 0);
            for (std::size_t k = 0; k < group.size(); ++k) full[group[k]] = g_in[k];
            for (std::size_t k = 0; k < complement.size(); ++k) full[complement[k]] = c_in[k];
            std::vector<Rational> marginal = group_marginal(box, group, full);
            if (ci == 0) {
                baseline = std::move(marginal);
                baseline_input = std::move(full);
                continue;
            }
            for (std::size_t m = 0; m < marginal.size(); ++m) {
                if (marginal[m] == baseline[m]) continue;
                if (witness) {
                    witness->cut = cut;
                    witness->group = group;
                    witness->input_a = baseline_input;
                    witness->input_b = full;
                    witness->group_output =
                        unrank(static_cast<std::int64_t>(m), subset_cards(box.layout().output_cards(), group));
                    witness->marginal_a = baseline[m];
                    witness->marginal_b = marginal[m];
                }
                return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_nonsignaling(const BoxTable& box, const Bipartition& cut, NsViolationWitness* witness) {
    return group_marginal_independent(box, cut, cut.left, cut.right, witness) &&
           group_marginal_independent(box, cut, cut.right, cut.left, witness);
}

bool is_fully_nonsignaling(const BoxTable& box, NsCheckMode mode, NsViolationWitness* witness) {
    const int n = box.layout().subsystem_count();
    const auto cuts = mode == NsCheckMode::exhaustive ? all_bipartitions(n) : single_subsystem_cuts(n);
    for (const Bipartition& cut : cuts)
        if (!is_nonsignaling(box, cut, witness)) return false;
    return true;
}

// ---------------------------------------------------------------------------

BoxTable tensor(const BoxTable& b1, const BoxTable& b2, const std::vector<int>& site_assignment) {
    std::vector<int> assignment = site_assignment;
    if (assignment.empty()) assignment.assign(b2.layout().site_count(), kNewSite);
    if (static_cast<int>(assignment.size()) != b2.layout().site_count())
        throw LayoutError("site assignment arity mismatch");
    for (int t : assignment)
        if (t != kNewSite && (t < 0 || t >= b1.layout().site_count()))
            throw LayoutError("site assignment target out of range");

    // Result subsystem order: per site, b1's subsystems then assigned b2 sites
    // in b2 order; unassigned b2 sites become fresh sites at the end.
    struct Source {
        int box;  // 0 or 1
        int global;
    };
    std::vector<std::vector<SubsystemSpec>> sites;
    std::vector<Source> sources;

    auto push_site_of = [&](const BoxTable& box, int box_id, int site, std::vector<SubsystemSpec>& dst) {
        const auto& specs = box.layout().sites()[site];
        for (int k = 0; k < static_cast<int>(specs.size()); ++k) {
            dst.push_back(specs[k]);
            sources.push_back({box_id, box.layout().global_index(site, k)});
        }
    };

    for (int s1 = 0; s1 < b1.layout().site_count(); ++s1) {
        std::vector<SubsystemSpec> site;
        push_site_of(b1, 0, s1, site);
        for (int s2 = 0; s2 < b2.layout().site_count(); ++s2)
            if (assignment[s2] == s1) push_site_of(b2, 1, s2, site);
        sites.push_back(std::move(site));
    }
    for (int s2 = 0; s2 < b2.layout().site_count(); ++s2) {
        if (assignment[s2] != kNewSite) continue;
        std::vector<SubsystemSpec> site;
        push_site_of(b2, 1, s2, site);
        sites.push_back(std::move(site));
    }

    SystemLayout layout{std::move(sites)};
    const int n1 = b1.layout().subsystem_count();
    const int n2 = b2.layout().subsystem_count();

    std::vector<Rational> entries;
    entries.reserve(layout.input_space_size() * layout.output_space_size());
    std::vector<int> in1(n1), in2(n2), out1(n1), out2(n2);
    for (std::int64_t in = 0; in < layout.input_space_size(); ++in) {
        const std::vector<int> in_digits = unrank(in, layout.input_cards());
        for (std::size_t g = 0; g < sources.size(); ++g)
            (sources[g].box == 0 ? in1[sources[g].global] : in2[sources[g].global]) = in_digits[g];
        const std::int64_t i1 = rank_tuple(in1, b1.layout().input_cards());
        const std::int64_t i2 = rank_tuple(in2, b2.layout().input_cards());
        for (std::int64_t out = 0; out < layout.output_space_size(); ++out) {
            const std::vector<int> out_digits = unrank(out, layout.output_cards());
            for (std::size_t g = 0; g < sources.size(); ++g)
                (sources[g].box == 0 ? out1[sources[g].global] : out2[sources[g].global]) = out_digits[g];
            entries.push_back(b1.at(i1, rank_tuple(out1, b1.layout().output_cards())) *
                              b2.at(i2, rank_tuple(out2, b2.layout().output_cards())));
        }
    }
    return BoxTable{std::move(layout), std::move(entries)};
}

BoxTable mix(const Ensemble& ensemble) {
    if (ensemble.members.empty()) throw ContractViolation("empty ensemble");
    Rational total = 0;
    const SystemLayout& layout = ensemble.members.front().second.layout();
    for (const auto& [w, box] : ensemble.members) {
        if (w < 0) throw ContractViolation("negative ensemble weight");
        if (!box.layout().compatible_with(layout)) throw ContractViolation("incompatible ensemble members");
        total += w;
    }
    if (total != 1) throw ContractViolation("ensemble weights must sum to 1");

    std::vector<Rational> entries(layout.input_space_size() * layout.output_space_size(), Rational(0));
    for (const auto& [w, box] : ensemble.members)
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += w * box.entries()[i];
    return BoxTable{layout, std::move(entries)};
}

BoxTable trace_out(const BoxTable& box, const std::vector<int>& subsystems) {
    const int n = box.layout().subsystem_count();
    std::vector<int> traced = subsystems;
    std::sort(traced.begin(), traced.end());
    traced.erase(std::unique(traced.begin(), traced.end()), traced.end());
    for (int t : traced)
        if (t < 0 || t >= n) throw LayoutError("trace_out: subsystem index out of range");
    if (static_cast<int>(traced.size()) == n) throw LayoutError("trace_out: at least one subsystem must remain");
    if (traced.empty()) return box;

    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(traced.begin(), traced.end(), i)) kept.push_back(i);

    std::vector<std::vector<SubsystemSpec>> sites;
    for (int s = 0; s < box.layout().site_count(); ++s) {
        std::vector<SubsystemSpec> site;
        for (int k = 0; k < static_cast<int>(box.layout().sites()[s].size()); ++k) {
            int g = box.layout().global_index(s, k);
            if (!std::binary_search(traced.begin(), traced.end(), g)) site.push_back(box.layout().sites()[s][k]);
        }
        if (!site.empty()) sites.push_back(std::move(site));
    }
    SystemLayout layout{std::move(sites)};

    const std::vector<int> traced_in_cards = subset_cards(box.layout().input_cards(), traced);
    const std::vector<int> kept_in_cards = subset_cards(box.layout().input_cards(), kept);
    const std::vector<int> kept_out_cards = subset_cards(box.layout().output_cards(), kept);

    auto marginal_for = [&](const std::vector<int>& traced_in) {
        std::vector<Rational> entries(layout.input_space_size() * layout.output_space_size(), Rational(0));
        std::vector<int> full_in(n), full_out(n);
        for (std::size_t k = 0; k < traced.size(); ++k) full_in[traced[k]] = traced_in[k];
        for (std::int64_t ki = 0; ki < layout.input_space_size(); ++ki) {
            const std::vector<int> kept_in = unrank(ki, kept_in_cards);
            for (std::size_t k = 0; k < kept.size(); ++k) full_in[kept[k]] = kept_in[k];
            const std::int64_t in_idx = rank_tuple(full_in, box.layout().input_cards());
            for (std::int64_t out = 0; out < box.output_space_size(); ++out) {
                const std::vector<int> out_digits = unrank(out, box.layout().output_cards());
                std::vector<int> kept_out;
                kept_out.reserve(kept.size());
                for (int k : kept) kept_out.push_back(out_digits[k]);
                entries[ki * layout.output_space_size() + rank_tuple(kept_out, kept_out_cards)] +=
                    box.at(in_idx, out);
            }
        }
        return entries;
    };

    std::vector<Rational> result = marginal_for(std::vector<int>(traced.size(), 0));
    for (std::int64_t ti = 1; ti < product(traced_in_cards); ++ti) {
        if (marginal_for(unrank(ti, traced_in_cards)) != result)
            throw ContractViolation("trace_out: marginal depends on traced inputs (box signals)");
    }
    return BoxTable{std::move(layout), std::move(result)};
}

OutcomeDistribution measure(const BoxTable& box, std::span<const int> inputs) {
    const std::int64_t in_idx = rank_tuple(inputs, box.layout().input_cards());
    OutcomeDistribution dist;
    dist.output_cards = box.layout().output_cards();
    dist.probs.reserve(box.output_space_size());
    for (std::int64_t out = 0; out < box.output_space_size(); ++out) dist.probs.push_back(box.at(in_idx, out));
    return dist;
}

Rational variational_distance(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.output_cards != q.output_cards) throw ContractViolation("variational_distance: outcome space mismatch");
    Rational d = 0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) d += abs(p.probs[i] - q.probs[i]);
    return d;
}

}  // namespace boxlab
