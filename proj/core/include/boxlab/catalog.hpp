#pragma once

#include <string>
#include <vector>

#include "boxlab/box.hpp"

namespace boxlab {

/// Index rst of the eight maximally nonlocal boxes B_rst.
struct MaxNonlocalLabel {
    int r = 0, s = 0, t = 0;

    int index() const { return (r << 2) | (s << 1) | t; }
    std::string str() const { return {char('0' + r), char('0' + s), char('0' + t)}; }

    static MaxNonlocalLabel from_index(int idx);
    static MaxNonlocalLabel from_string(std::string_view bits);

    friend bool operator==(const MaxNonlocalLabel&, const MaxNonlocalLabel&) = default;
    friend bool operator<(const MaxNonlocalLabel& a, const MaxNonlocalLabel& b) {
        return a.index() < b.index();
    }
};

struct IsotropicSpec {
    MaxNonlocalLabel label;
    Rational alpha;
};

/// B_rst: support 1/2 where a xor b = xy xor rx xor sy xor t.
BoxTable b_rst(MaxNonlocalLabel label);

inline BoxTable pr_box() { return b_rst({0, 0, 0}); }
inline BoxTable anti_pr_box() { return b_rst({0, 0, 1}); }

/// alpha B_rst + (1-alpha) B_{rs,not t}. Valid for alpha in [0,1]; values
/// outside [1/2,1] print a warning (the discrimination bounds assume [1/2,1]).
BoxTable isotropic(const IsotropicSpec& spec);

/// Deterministic flag box F(j): unary input, output distribution delta_{j,e}.
BoxTable flag_box(int j, int alphabet);

/// F(j) on Alice tensored with F(j) on Bob, layout [[E],[F]].
BoxTable flag_pair(int j, int alphabet);

/// Rational approximation of (2+sqrt(2))/4 with error below 10^-digits,
/// computed as (2*10^d + floor(sqrt(2)*10^d)) / (4*10^d).
Rational alpha_q_approx(int decimal_digits = 9);

// ---------------------------------------------------------------------------
// Vertex models

enum class VertexKind { local_deterministic, ns_extremal, lrns_product };

struct VertexSet {
    SystemLayout layout;
    std::vector<BoxTable> vertices;
    VertexKind kind;
};

/// All products of per-subsystem deterministic strategies (each subsystem's
/// output a function of its own input only); count = prod out^in.
VertexSet local_deterministic_vertices(const SystemLayout& layout);

/// The 24 vertices of the one-subsystem-per-side 2x2 non-signaling polytope:
/// 16 local deterministic plus the 8 boxes B_rst.
VertexSet ns_extremal_vertices_2x2();

/// Layout of the four-subsystem scenario: sites [[A,C],[B,D]], all binary.
SystemLayout abcd_layout();

/// The 576 products of per-side 2x2 NS-polytope vertices on the ABCD layout
/// (each side's two subsystems form a 2x2 scenario of their own).
VertexSet lrns_product_vertices();

// ---------------------------------------------------------------------------
// Correlated input boxes

struct BInMember {
    Rational weight;
    MaxNonlocalLabel label;
    Rational alpha;
    Rational beta;
};

/// B_in = sum_i w_i B_i^{alpha_i} (x) B_i^{beta_i} on sites A,C | B,D.
/// Weights must form a distribution and labels must be pairwise distinct.
BoxTable build_b_in(const std::vector<BInMember>& members);

}  // namespace boxlab
