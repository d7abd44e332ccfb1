#include "boxlab/layout.hpp"

#include <algorithm>

namespace boxlab {

SystemLayout::SystemLayout(std::vector<std::vector<SubsystemSpec>> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw LayoutError("layout needs at least one site");
    for (int s = 0; s < static_cast<int>(sites_.size()); ++s) {
        if (sites_[s].empty()) throw LayoutError("site " + std::to_string(s) + " has no subsystems");
        for (const SubsystemSpec& spec : sites_[s]) {
            if (spec.input_card < 1 || spec.output_card < 1)
                throw LayoutError("subsystem cardinalities must be >= 1");
            flat_.push_back(spec);
            site_of_.push_back(s);
            in_cards_.push_back(spec.input_card);
            out_cards_.push_back(spec.output_card);
            in_size_ *= spec.input_card;
            out_size_ *= spec.output_card;
        }
    }
}

int SystemLayout::global_index(int site, int k) const {
    int g = 0;
    for (int s = 0; s < site; ++s) g += static_cast<int>(sites_.at(s).size());
    if (k < 0 || k >= static_cast<int>(sites_.at(site).size()))
        throw LayoutError("subsystem index out of range");
    return g + k;
}

SystemLayout SystemLayout::bipartite_2x2() {
    return SystemLayout{{{SubsystemSpec{2, 2}}, {SubsystemSpec{2, 2}}}};
}

SystemLayout SystemLayout::single(SubsystemSpec spec) { return SystemLayout{{{spec}}}; }

std::vector<int> unrank(std::int64_t index, const std::vector<int>& cards) {
    std::vector<int> tuple(cards.size());
    for (int i = static_cast<int>(cards.size()) - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(index % cards[i]);
        index /= cards[i];
    }
    return tuple;
}

std::int64_t rank_tuple(std::span<const int> tuple, const std::vector<int>& cards) {
    if (tuple.size() != cards.size()) throw LayoutError("tuple arity mismatch");
    std::int64_t r = 0;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= cards[i]) throw LayoutError("tuple value out of range");
        r = r * cards[i] + tuple[i];
    }
    return r;
}

Bipartition Bipartition::of_left(std::vector<int> left, int subsystem_count) {
    std::sort(left.begin(), left.end());
    Bipartition cut;
    cut.left = std::move(left);
    for (int i = 0; i < subsystem_count; ++i)
        if (!std::binary_search(cut.left.begin(), cut.left.end(), i)) cut.right.push_back(i);
    if (cut.left.empty() || cut.right.empty()) throw LayoutError("bipartition groups must be nonempty");
    return cut;
}

std::vector<Bipartition> all_bipartitions(int n) {
    std::vector<Bipartition> cuts;
    // Fix subsystem 0 on the left to enumerate each unordered cut once.
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> left{0};
        for (int i = 1; i < n; ++i)
            if (mask & (1u << (i - 1))) left.push_back(i);
        if (static_cast<int>(left.size()) == n) continue;
        cuts.push_back(Bipartition::of_left(std::move(left), n));
    }
    return cuts;
}

std::vector<Bipartition> single_subsystem_cuts(int n) {
    std::vector<Bipartition> cuts;
    if (n < 2) return cuts;  // a single subsystem has no cut
    for (int i = 0; i < n; ++i) cuts.push_back(Bipartition::of_left({i}, n));
    return cuts;
}

}  // namespace boxlab
