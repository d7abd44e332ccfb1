#include "boxlab/transforms.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace boxlab {

namespace {

void require_2x2(const BoxTable& box, const char* who) {
    if (!(box.layout() == SystemLayout::bipartite_2x2()))
        throw LayoutError(std::string(who) + ": expected one binary subsystem per side");
}

}  // namespace

BoxTable apply_relabeling(const Relabeling2x2& rel, const BoxTable& box) {
    require_2x2(box, "apply_relabeling");
    std::vector<Rational> entries(16);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int xs = x ^ rel.flip_x;
                    const int ys = y ^ rel.flip_y;
                    const int as = a ^ rel.a_const ^ (rel.a_from_x & x);
                    const int bs = b ^ rel.b_const ^ (rel.b_from_y & y);
                    entries[((x * 2 + y) * 2 + a) * 2 + b] =
                        box.at(std::array{xs, ys}, std::array{as, bs});
                }
    return BoxTable{box.layout(), std::move(entries)};
}

Relabeling2x2 twirl_element(int delta, int gamma, int theta) {
    // Def-6 substitutions x->x+delta, y->y+gamma, a->a+gamma x+delta gamma+theta,
    // b->b+delta y+theta. Whether "gamma x" means the pre- or post-flip x only
    // shifts the element by an output flip of delta*gamma, which the uniform
    // theta average absorbs; the twirl itself is identical either way. We read
    // x,y as the relabeled box's inputs.
    Relabeling2x2 rel;
    rel.flip_x = delta;
    rel.flip_y = gamma;
    rel.a_from_x = gamma;
    rel.a_const = (delta & gamma) ^ theta;
    rel.b_from_y = delta;
    rel.b_const = theta;
    return rel;
}

BoxTable twirl(const BoxTable& box) {
    require_2x2(box, "twirl");
    Ensemble avg;
    const Rational w(1, 8);
    for (int delta = 0; delta < 2; ++delta)
        for (int gamma = 0; gamma < 2; ++gamma)
            for (int theta = 0; theta < 2; ++theta)
                avg.members.emplace_back(w, apply_relabeling(twirl_element(delta, gamma, theta), box));
    return mix(avg);
}

Relabeling2x2 o_rotation(MaxNonlocalLabel j) {
    Relabeling2x2 rel;
    rel.flip_x = j.s;
    rel.flip_y = j.r;
    rel.b_const = j.t ^ (j.r & j.s);
    return rel;
}

BoxTable apply_o(MaxNonlocalLabel j, const BoxTable& box) { return apply_relabeling(o_rotation(j), box); }

MaxNonlocalLabel o_image_label(MaxNonlocalLabel j, MaxNonlocalLabel i) {
    return {j.r ^ i.r, j.s ^ i.s, (i.r & j.s) ^ (i.s & j.r) ^ j.t ^ i.t};
}

// ---------------------------------------------------------------------------

ControlRotation ControlRotation::identity_map(int alphabet) {
    if (alphabet < 1 || alphabet > 8) throw ContractViolation("identity flag map needs alphabet in 1..8");
    ControlRotation rot;
    rot.flag_alphabet = alphabet;
    for (int j = 0; j < alphabet; ++j) rot.labels.push_back(MaxNonlocalLabel::from_index(j));
    return rot;
}

namespace {

void require_out_box_shape(const BoxTable& box, const ControlRotation& rot) {
    const auto& sites = box.layout().sites();
    const SubsystemSpec target{2, 2};
    const SubsystemSpec flag{1, rot.flag_alphabet};
    if (sites.size() != 2 || sites[0] != std::vector<SubsystemSpec>{target, flag} ||
        sites[1] != std::vector<SubsystemSpec>{target, flag})
        throw LayoutError("control_o: expected [[target(2,2), flag], [target(2,2), flag]]");
    if (static_cast<int>(rot.labels.size()) != rot.flag_alphabet)
        throw ContractViolation("control_o: rotation label map arity mismatch");

    // Def-5 output form: the two flags always agree, and their joint
    // statistics do not depend on the target inputs.
    const int n = rot.flag_alphabet;
    std::vector<Rational> flag_mass;  // per (u,v): diagonal masses
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            std::vector<Rational> diag(n, Rational(0));
            for (int e = 0; e < n; ++e)
                for (int f = 0; f < n; ++f)
                    for (int c = 0; c < 2; ++c)
                        for (int d = 0; d < 2; ++d) {
                            const Rational& p = box.at(std::array{u, 0, v, 0}, std::array{c, e, d, f});
                            if (e != f) {
                                if (p != 0)
                                    throw ContractViolation(
                                        "control_o: Alice and Bob flags differ with positive probability");
                            } else {
                                diag[e] += p;
                            }
                        }
            if (flag_mass.empty())
                flag_mass = diag;
            else if (flag_mass != diag)
                throw ContractViolation("control_o: flag statistics depend on target inputs");
        }
}

}  // namespace

BoxTable control_o(const BoxTable& composite, const ControlRotation& rotation) {
    require_out_box_shape(composite, rotation);
    const int n = rotation.flag_alphabet;
    const auto& in_cards = composite.layout().input_cards();
    const auto& out_cards = composite.layout().output_cards();

    std::vector<Rational> entries(composite.entries().size(), Rational(0));
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            for (int c = 0; c < 2; ++c)
                for (int e = 0; e < n; ++e)
                    for (int d = 0; d < 2; ++d)
                        for (int f = 0; f < n; ++f) {
                            const Relabeling2x2 alice_rot = o_rotation(rotation.labels[e]);
                            const Relabeling2x2 bob_rot = o_rotation(rotation.labels[f]);
                            const int us = u ^ alice_rot.flip_x;
                            const int vs = v ^ bob_rot.flip_y;
                            const int ds = d ^ bob_rot.b_const ^ (bob_rot.b_from_y & v);
                            const std::int64_t in = rank_tuple(std::array{u, 0, v, 0}, in_cards);
                            const std::int64_t src_in = rank_tuple(std::array{us, 0, vs, 0}, in_cards);
                            const std::int64_t out = rank_tuple(std::array{c, e, d, f}, out_cards);
                            const std::int64_t src_out = rank_tuple(std::array{c, e, ds, f}, out_cards);
                            entries[in * composite.output_space_size() + out] =
                                composite.at(src_in, src_out);
                        }
    return BoxTable{composite.layout(), std::move(entries)};
}

// ---------------------------------------------------------------------------

void check_partition(const ComparingOperation& op, int out_a, int out_b) {
    std::set<std::pair<int, int>> seen;
    for (const auto& cls : op.partition)
        for (const auto& [a, b] : cls) {
            if (a < 0 || a >= out_a || b < 0 || b >= out_b)
                throw ContractViolation("comparing operation: outcome pair out of range");
            if (!seen.insert({a, b}).second)
                throw ContractViolation("comparing operation: partition classes overlap");
        }
    if (static_cast<int>(seen.size()) != out_a * out_b)
        throw ContractViolation("comparing operation: partition does not cover the outcome set");
}

BoxTable comparing_apply_tensored(const ComparingOperation& op, const BoxTable& box,
                                  std::pair<int, int> acted_subsystems) {
    const SystemLayout& layout = box.layout();
    if (layout.site_count() != 2) throw LayoutError("comparing operation: expected a bipartite box");
    const int ga = layout.global_index(0, acted_subsystems.first);
    const int gb = layout.global_index(1, acted_subsystems.second);
    if (op.measurement.size() != 2) throw ContractViolation("comparing operation: measurement must be a pair");
    const int mi = op.measurement[0];
    const int mj = op.measurement[1];
    if (mi < 0 || mi >= layout.subsystem(ga).input_card || mj < 0 || mj >= layout.subsystem(gb).input_card)
        throw ContractViolation("comparing operation: measurement out of range");
    check_partition(op, layout.subsystem(ga).output_card, layout.subsystem(gb).output_card);

    const int flags = static_cast<int>(op.partition.size());
    const int n = layout.subsystem_count();

    // Output sites: untouched subsystems in order, flag appended per site.
    std::vector<std::vector<SubsystemSpec>> sites(2);
    std::vector<int> untouched;  // global indices, layout order
    for (int s = 0; s < 2; ++s) {
        for (int k = 0; k < static_cast<int>(layout.sites()[s].size()); ++k) {
            const int g = layout.global_index(s, k);
            if (g == ga || g == gb) continue;
            sites[s].push_back(layout.sites()[s][k]);
            untouched.push_back(g);
        }
        sites[s].push_back({1, flags});
    }
    // Per-site order of the result: [untouched..., flag]; globally the flag of
    // site 0 sits between the two untouched groups.
    std::vector<int> site0_untouched, site1_untouched;
    for (int g : untouched) (layout.site_of(g) == 0 ? site0_untouched : site1_untouched).push_back(g);

    SystemLayout out_layout{std::move(sites)};
    std::vector<Rational> entries(out_layout.input_space_size() * out_layout.output_space_size(),
                                  Rational(0));

    const auto& in_cards = layout.input_cards();
    const auto& out_cards = layout.output_cards();
    std::vector<int> src_in(n), src_out(n);
    src_in[ga] = mi;
    src_in[gb] = mj;

    for (std::int64_t in = 0; in < out_layout.input_space_size(); ++in) {
        const std::vector<int> in_digits = unrank(in, out_layout.input_cards());
        // result input order: site0 untouched..., flag(unary), site1 untouched..., flag
        {
            std::size_t pos = 0;
            for (int g : site0_untouched) src_in[g] = in_digits[pos++];
            ++pos;  // Alice flag input, unary
            for (int g : site1_untouched) src_in[g] = in_digits[pos++];
        }
        const std::int64_t src_in_idx = rank_tuple(src_in, in_cards);
        for (std::int64_t out = 0; out < out_layout.output_space_size(); ++out) {
            const std::vector<int> out_digits = unrank(out, out_layout.output_cards());
            std::size_t pos = 0;
            for (int g : site0_untouched) src_out[g] = out_digits[pos++];
            const int e = out_digits[pos++];
            for (int g : site1_untouched) src_out[g] = out_digits[pos++];
            const int f = out_digits[pos++];
            if (e != f) continue;
            Rational total = 0;
            for (const auto& [a, b] : op.partition[e]) {
                src_out[ga] = a;
                src_out[gb] = b;
                total += box.at(src_in_idx, rank_tuple(src_out, out_cards));
            }
            entries[in * out_layout.output_space_size() + out] = total;
        }
    }
    return BoxTable{std::move(out_layout), std::move(entries)};
}

BoxTable comparing_apply(const ComparingOperation& op, const BoxTable& box) {
    const SystemLayout& layout = box.layout();
    if (layout.site_count() != 2 || layout.sites()[0].size() != 1 || layout.sites()[1].size() != 1)
        throw LayoutError("comparing_apply: expected one subsystem per side");
    return comparing_apply_tensored(op, box, {0, 0});
}

// ---------------------------------------------------------------------------

BoxTable build_b_out(const std::vector<std::vector<Rational>>& p_joint, const std::vector<Rational>& betas,
                     const std::vector<MaxNonlocalLabel>& labels) {
    const int n = static_cast<int>(p_joint.size());
    if (n == 0 || static_cast<int>(betas.size()) != n || static_cast<int>(labels.size()) != n)
        throw ContractViolation("build_b_out: arity mismatch");
    Ensemble ensemble;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(p_joint[i].size()) != n) throw ContractViolation("build_b_out: p matrix not square");
        const BoxTable target = isotropic({labels[i], betas[i]});
        for (int j = 0; j < n; ++j) {
            if (p_joint[i][j] == 0) continue;
            ensemble.members.emplace_back(p_joint[i][j], tensor(target, flag_pair(j, n), {0, 1}));
        }
    }
    return mix(ensemble);
}

PipelineResult theorem1_pipeline(const BoxTable& b_out, const ControlRotation& rotation) {
    const BoxTable rotated = control_o(b_out, rotation);
    const BoxTable traced = trace_out(rotated, {rotated.layout().global_index(0, 1),
                                                rotated.layout().global_index(1, 1)});
    BoxTable iso = twirl(traced);

    // Exact decomposition q B_000 + (1-q) B_001.
    const Rational q = 2 * iso.at(std::array{0, 0}, std::array{0, 0});
    const BoxTable b000 = pr_box();
    const BoxTable b001 = anti_pr_box();
    for (std::size_t i = 0; i < iso.entries().size(); ++i)
        if (iso.entries()[i] != q * b000.entries()[i] + (1 - q) * b001.entries()[i])
            throw ContractViolation("theorem1_pipeline: result not on the isotropic line");
    return {q, std::move(iso)};
}

}  // namespace boxlab
