#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "vstate/exactnum.hpp"

namespace vstate {

// Exact residue-calculus evaluation of the circle integrals behind every
// derivative computation, including the perturbative expansion of the
// Cauchy operator to arbitrary mixed order. Everything here is pure and
// immutable; independent multi-indices may be evaluated concurrently.

// Polynomial in the kernel-mixing parameter a with BRat coefficients.
// reduce_p > 0 keeps every coefficient reduced modulo the b_{2p} relation
// (values then live in the quotient ring at b_{2p}); reduce_p = 0 keeps
// plain rational-function semantics. Mixed-context arithmetic is a bug and
// asserts, except that an exact zero is compatible with any context.
struct CoefExpr {
    int reduce_p = 0;
    std::vector<BRat> coef;  // coef[k] multiplies a^k; trailing zeros trimmed

    CoefExpr() = default;
    static CoefExpr zero(int reduce_p = 0);
    static CoefExpr constant(BRat value, int reduce_p = 0);
    static CoefExpr a_power(int k, BRat value, int reduce_p = 0);

    bool is_zero() const { return coef.empty(); }
    int a_degree() const { return static_cast<int>(coef.size()) - 1; }
    BRat a_coeff(int k) const;

    double eval(double b, double a) const;
    RatIv eval_iv(const AlgRoot& root, const Rat& a, int precision_bits) const;
    std::string str() const;

    void normalize();
};

bool operator==(const CoefExpr& x, const CoefExpr& y);
CoefExpr operator+(const CoefExpr& x, const CoefExpr& y);
CoefExpr operator-(const CoefExpr& x, const CoefExpr& y);
CoefExpr operator-(const CoefExpr& x);
CoefExpr operator*(const CoefExpr& x, const CoefExpr& y);
CoefExpr operator*(const CoefExpr& x, const BRat& c);
CoefExpr operator*(const CoefExpr& x, const Rat& c);
CoefExpr operator/(const CoefExpr& x, const BRat& c);

// Finite Laurent polynomial sum_k c_k w^k on |w|=1 (w-bar == w^{-1}).
// Coefficients are real CoefExpr; intermediate objects need not represent
// real boundary functions.
struct LaurentPoly {
    std::map<int, CoefExpr> terms;  // exponent -> coefficient, no zeros stored

    static LaurentPoly monomial(int exponent, CoefExpr c);
    bool is_zero() const { return terms.empty(); }
    CoefExpr coeff(int exponent) const;
    void add_term(int exponent, const CoefExpr& c);

    LaurentPoly conj() const;        // w^k -> w^{-k}
    LaurentPoly derivative() const;  // d/dw
    std::string str() const;
};

bool operator==(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly operator*(const LaurentPoly& x, const CoefExpr& c);

// Which closed form applies to (1/2
// pi i) contour integrals of tau^{k1} tau-bar^{k2} / D^{k3}:
//   SELF            D = 1 - tau   (source curve = target curve)
//   OUTER_AT_INNER  D = b - tau   (outer-curve integral at an inner point)
//   INNER_AT_OUTER  D = 1 - b tau (inner-curve integral at an outer point)
enum class CanonicalForm { SELF, OUTER_AT_INNER, INNER_AT_OUTER };

// (1/2 pi i) oint tau^{k1} tau-bar^{k2} / D^{k3} d tau as an exact rational
// function of b. Results are 0 whenever the factorial argument of the closed
// form goes negative. The SELF form counts the pole on the circle as
// enclosed; sums over a valid scheme are independent of that convention and
// expand_cauchy verifies the cancellation.
BRat canonical_integral(int k1, int k2, int k3, CanonicalForm form);

// Same value as a function of the net exponent q = k1 - k2 (q may be
// negative).
BRat canonical_net(int q, int k3, CanonicalForm form);

struct IntegralTerm {
    CoefExpr coefficient;
    int k1 = 0, k2 = 0, k3 = 1;
    CanonicalForm form = CanonicalForm::SELF;
};

CoefExpr integrate_rational(const std::vector<IntegralTerm>& terms);

// A boundary perturbation scheme: base radii b_1 = 1, b_2 = b plus a finite
// list of two-component direction fields, each a LaurentPoly pair (component
// 1 = outer curve, component 2 = inner curve). Directions for the two-fold
// space are supported on exponents -(2n-1).
struct PerturbationScheme {
    int p = 2;
    std::vector<std::array<LaurentPoly, 2>> directions;
};

using MultiIndex = std::vector<int>;  // one order per direction

// Exact mixed partial derivative of the Cauchy operator,
//   d^|order| I_source(phi_target(t, w)) / prod dt_l^{order_l}  at t = 0,
// computed by a truncated geometric-series expansion of the kernel, change
// of variables tau -> w sigma, and the canonical closed forms. Throws
// PoleOnCircle if the source=target circle-pole residues fail to cancel.
LaurentPoly expand_cauchy(const PerturbationScheme& scheme, int source, int target,
                          const MultiIndex& order);

// Two-component element of the image space: comp[j] maps the absolute
// frequency n to the coefficient of e_n = Im(w-bar^n).
struct YElement {
    std::array<std::map<int, CoefExpr>, 2> comp;

    bool is_zero() const { return comp[0].empty() && comp[1].empty(); }
    CoefExpr coeff(int component, int n) const;  // component in {1,2}
    void add(int component, int n, const CoefExpr& c);
    std::string str() const;
};

YElement operator+(const YElement& x, const YElement& y);
YElement operator-(const YElement& x, const YElement& y);
YElement operator*(const YElement& x, const CoefExpr& c);

// Exact mixed derivative of the full nonlinear functional,
//   d_lambda^{lambda_order} d^{order} G(lambda_{2p}, sum_l t_l d_l) at t=0,
// with lambda fixed symbolically at lambda_{2p} = (1+b^2)/2. G is affine in
// lambda, so lambda_order <= 1 covers all nonzero cases.
YElement derivative_G(const PerturbationScheme& scheme, int lambda_order, const MultiIndex& order);

}  // namespace vstate
