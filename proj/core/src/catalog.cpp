#include "boxlab/catalog.hpp"

#include <iostream>
#include <set>

namespace boxlab {

MaxNonlocalLabel MaxNonlocalLabel::from_index(int idx) {
    if (idx < 0 || idx > 7) throw LayoutError("label index out of range");
    return {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
}

MaxNonlocalLabel MaxNonlocalLabel::from_string(std::string_view bits) {
    if (bits.size() != 3 || bits.find_first_not_of("01") != std::string_view::npos)
        throw ParseError("label must be three bits, got '" + std::string(bits) + "'");
    return {bits[0] - '0', bits[1] - '0', bits[2] - '0'};
}

BoxTable b_rst(MaxNonlocalLabel label) {
    SystemLayout layout = SystemLayout::bipartite_2x2();
    std::vector<Rational> entries;
    entries.reserve(16);
    const Rational half(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int parity = (x & y) ^ (label.r & x) ^ (label.s & y) ^ label.t;
                    entries.push_back((a ^ b) == parity ? half : Rational(0));
                }
    return BoxTable{std::move(layout), std::move(entries)};
}

BoxTable isotropic(const IsotropicSpec& spec) {
    if (spec.alpha < 0 || spec.alpha > 1) throw ContractViolation("isotropic: alpha outside [0,1]");
    if (spec.alpha < Rational(1, 2))
        std::cerr << "boxlab: warning: isotropic alpha " << spec.alpha << " outside [1/2,1]\n";
    MaxNonlocalLabel flipped = spec.label;
    flipped.t ^= 1;
    return mix({{{spec.alpha, b_rst(spec.label)}, {1 - spec.alpha, b_rst(flipped)}}});
}

BoxTable flag_box(int j, int alphabet) {
    if (alphabet < 1 || j < 0 || j >= alphabet) throw LayoutError("flag index out of range");
    std::vector<Rational> entries(alphabet, Rational(0));
    entries[j] = 1;
    return BoxTable{SystemLayout::single({1, alphabet}), std::move(entries)};
}

BoxTable flag_pair(int j, int alphabet) { return tensor(flag_box(j, alphabet), flag_box(j, alphabet)); }

Rational alpha_q_approx(int decimal_digits) {
    if (decimal_digits < 1 || decimal_digits > 1000) throw ContractViolation("unreasonable precision request");
    Integer scale = 1;
    for (int i = 0; i < decimal_digits; ++i) scale *= 10;
    const Integer root = sqrt(Integer(2) * scale * scale);  // floor(sqrt(2)*10^d)
    return Rational(2 * scale + root, 4 * scale);
}

// ---------------------------------------------------------------------------

VertexSet local_deterministic_vertices(const SystemLayout& layout) {
    const int n = layout.subsystem_count();
    // Strategy of subsystem g: a function in -> out, encoded in base out_card.
    std::vector<std::int64_t> fn_counts(n);
    std::int64_t total = 1;
    for (int g = 0; g < n; ++g) {
        std::int64_t c = 1;
        for (int i = 0; i < layout.subsystem(g).input_card; ++i) c *= layout.subsystem(g).output_card;
        fn_counts[g] = c;
        total *= c;
    }

    VertexSet set{layout, {}, VertexKind::local_deterministic};
    set.vertices.reserve(total);
    std::vector<std::int64_t> fn(n);
    for (std::int64_t v = 0; v < total; ++v) {
        std::int64_t rest = v;
        for (int g = n - 1; g >= 0; --g) {
            fn[g] = rest % fn_counts[g];
            rest /= fn_counts[g];
        }
        std::vector<Rational> entries;
        entries.reserve(layout.input_space_size() * layout.output_space_size());
        for (std::int64_t in = 0; in < layout.input_space_size(); ++in) {
            const std::vector<int> in_digits = unrank(in, layout.input_cards());
            std::vector<int> expected(n);
            for (int g = 0; g < n; ++g) {
                std::int64_t f = fn[g];
                for (int i = layout.subsystem(g).input_card - 1; i > in_digits[g]; --i)
                    f /= layout.subsystem(g).output_card;
                expected[g] = static_cast<int>(f % layout.subsystem(g).output_card);
            }
            const std::int64_t expected_out = rank_tuple(expected, layout.output_cards());
            for (std::int64_t out = 0; out < layout.output_space_size(); ++out)
                entries.push_back(out == expected_out ? Rational(1) : Rational(0));
        }
        set.vertices.emplace_back(layout, std::move(entries));
    }
    return set;
}

VertexSet ns_extremal_vertices_2x2() {
    VertexSet set{SystemLayout::bipartite_2x2(), {}, VertexKind::ns_extremal};
    set.vertices = local_deterministic_vertices(set.layout).vertices;
    for (int idx = 0; idx < 8; ++idx) set.vertices.push_back(b_rst(MaxNonlocalLabel::from_index(idx)));
    return set;
}

SystemLayout abcd_layout() {
    const SubsystemSpec bin{2, 2};
    return SystemLayout{{{bin, bin}, {bin, bin}}};
}

namespace {

/// Same subsystems in the same order, regrouped into sites of given sizes.
BoxTable regroup_sites(const BoxTable& box, const std::vector<int>& subsystems_per_site) {
    std::vector<std::vector<SubsystemSpec>> sites;
    int g = 0;
    for (int count : subsystems_per_site) {
        std::vector<SubsystemSpec> site;
        for (int k = 0; k < count; ++k) site.push_back(box.layout().subsystem(g++));
        sites.push_back(std::move(site));
    }
    if (g != box.layout().subsystem_count()) throw LayoutError("regroup does not cover all subsystems");
    return BoxTable{SystemLayout{std::move(sites)}, box.entries()};
}

}  // namespace

VertexSet lrns_product_vertices() {
    const VertexSet side_2x2 = ns_extremal_vertices_2x2();
    std::vector<BoxTable> sides;  // one site holding both subsystems
    sides.reserve(side_2x2.vertices.size());
    for (const BoxTable& v : side_2x2.vertices) sides.push_back(regroup_sites(v, {2}));

    VertexSet set{abcd_layout(), {}, VertexKind::lrns_product};
    set.vertices.reserve(sides.size() * sides.size());
    for (const BoxTable& alice : sides)
        for (const BoxTable& bob : sides) set.vertices.push_back(tensor(alice, bob));
    return set;
}

BoxTable build_b_in(const std::vector<BInMember>& members) {
    if (members.empty()) throw ContractViolation("build_b_in: empty member list");
    Rational total = 0;
    std::set<int> labels;
    for (const BInMember& m : members) {
        if (m.weight < 0) throw ContractViolation("build_b_in: negative weight");
        total += m.weight;
        if (!labels.insert(m.label.index()).second)
            throw ContractViolation("build_b_in: duplicate label " + m.label.str());
    }
    if (total != 1) throw ContractViolation("build_b_in: weights must sum to 1");

    Ensemble ensemble;
    for (const BInMember& m : members) {
        BoxTable ab = isotropic({m.label, m.alpha});
        BoxTable cd = isotropic({m.label, m.beta});
        ensemble.members.emplace_back(m.weight, tensor(ab, cd, {0, 1}));
    }
    return mix(ensemble);
}

}  // namespace boxlab
