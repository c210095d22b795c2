#pragma once

#include <array>
#include <map>
#include <vector>

#include "vstate/contour.hpp"
#include "vstate/exactnum.hpp"

namespace vstate {

// Fourier-multiplier representation of the linearized functional at the
// annulus, dispersion relation, kernel/co-kernel bases, projections, and the
// inverse linearization used by the reduction. Multipliers are indexed by
// the absolute frequency n (the two-fold space uses M_{2n}), which removes
// the paper's M_n / M_{2n} ambiguity.

// 2x2 multiplier block M_n(lambda) = [[n lambda - 1 - n b^2, b^{n+1}],
//                                     [-b^n, b(n lambda - n + 1)]].
struct Mult2 {
    int n = 1;
    std::array<std::array<double, 2>, 2> m{};
};

Mult2 multiplier(int n, double lambda, double b);
double det(const Mult2& m);

// Same block with lambda fixed symbolically at lambda_{2p} = (1+b^2)/2.
// reduce_p > 0 keeps entries reduced modulo the b_{2p} relation.
struct Mult2Sym {
    int n = 1;
    std::array<std::array<BRat, 2>, 2> m;
};

Mult2Sym multiplier_sym(int n, int reduce_p);
BRat det_sym(const Mult2Sym& m, int reduce_p);

// Theorem-A dispersion relation
//   Delta_m(lambda, b) = ((1-lambda) + b^2 + m(b^2-lambda)) (m(1-lambda) - lambda) + b^{2m+2}.
// Note det M_{m+1}(lambda) = b * Delta_m(lambda, b); the mode degenerate at
// lambda_{2p} together with frequency 2p is Delta_{2p-1}.
double dispersion(int m, double lambda, double b);

// Delta_m((1+b^2)/2, b) as an exact rational function of b.
BRat dispersion_at_lambda2p(int m);

// Element of the two-fold perturbation space X_2 in block coordinates:
// blocks[n] is the R^2 (or CoefExpr^2) coefficient of w-bar^{2n-1}.
struct XElem {
    std::map<int, std::array<CoefExpr, 2>> blocks;

    bool is_zero() const { return blocks.empty(); }
    void add(int n, int component, const CoefExpr& c);  // component in {1,2}
    CoefExpr coeff(int n, int component) const;
    std::array<LaurentPoly, 2> to_laurent() const;
    std::string str() const;
};

XElem operator+(const XElem& x, const XElem& y);
XElem operator-(const XElem& x, const XElem& y);
XElem operator*(const XElem& x, const CoefExpr& c);

// Kernel directions x1 = (b,1) w-bar, x2 = (b,-1) w-bar^{2p-1} and
// x_a = x1 + a x2 (symbolic in a).
XElem kernel_x1(int p, int reduce_p);
XElem kernel_x2(int p, int reduce_p);
XElem kernel_xa(int p, int reduce_p);

// Kernel identities: M_2(lambda_{2p}) (b,1)^T and M_{2p}(lambda_{2p}) (b,-1)^T
// vanish modulo the relation; exposed for tests.
bool kernel_equations_hold(int p);

// Exact projection onto the co-kernel in sqrt(2)-scaled coordinates:
//   q1_scaled = <B_2, (1,-1)>          ( = sqrt(2) x the coefficient along y1)
//   q2_scaled = -<B_{2p}, (1,1)>       ( = sqrt(2) x the coefficient along y2)
// remainder = input - Q(input) lies in the complement space (beta-parts only
// at the kernel frequencies).
struct ProjectionSym {
    CoefExpr q1_scaled, q2_scaled;
    YElement remainder;
};

ProjectionSym project_scaled(const YElement& k, int p);

// Numeric projection of the two kernel-frequency blocks, unit-vector
// normalized exactly as specified: q1 = <B_2,(1,-1)>/sqrt(2),
// q2 = -<B_{2p},(1,1)>/sqrt(2).
struct ProjectionNum {
    double q1 = 0.0, q2 = 0.0;
    std::array<double, 2> remainder_block1{};  // replaces B_2
    std::array<double, 2> remainder_blockp{};  // replaces B_{2p}
};

ProjectionNum project_blocks(const std::array<double, 2>& B1, const std::array<double, 2>& Bp);

// Solve (Id - Q) dG(lambda_{2p}, 0) h = k for h in the complement space.
// k must have zero components along y1 and y2 (exact check). The e_2 part
// (1,1) beta_1 maps to alpha_1 = -beta_1 / b^2, the e_{2p} part (1,-1) beta_2
// to alpha_2 = beta_2 / b^{2p}, every block n not in {1, p} through
// M_{2n}^{-1}. Throws SingularBlock if a det M_{2n} vanishes mod relation.
XElem invert_linearization(const YElement& k, int p, int reduce_p);

// Numeric counterpart on plain block arrays: B[n-1] is the e_{2n}
// coefficient pair, n = 1..N; returns X-space blocks (coefficients of
// w-bar^{2n-1}).
std::vector<std::array<double, 2>> invert_linearization_num(
    const std::vector<std::array<double, 2>>& B, int p, double b);

// Apply the annulus linearization blockwise: X blocks -> Y blocks, at
// arbitrary lambda. Used as a cross-check against the spectral module.
std::vector<std::array<double, 2>> apply_linearization_num(
    const std::vector<std::array<double, 2>>& A, double lambda, double b);

}  // namespace vstate
