#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "vstate/errors.hpp"

namespace vstate {

// Exact arithmetic over rational functions of the annulus ratio b, reduction
// modulo the defining relation of b_{2p}, and certified numeric evaluation at
// the root. All values are immutable after construction and all operations
// are pure, so concurrent use on shared inputs is safe.

// Arbitrary-precision rational. GMP's canonical form matches the required
// invariants: gcd(|num|, den) = 1 and den > 0.
using Rat = mpq_class;

Rat rat(long num, long den = 1);
Rat rat_from_string(const std::string& s);  // "num/den" or "num"
Rat pow2(long k);                           // 2^k, k may be negative

// Closed interval [lo, hi] with exact rational endpoints. Arithmetic is
// exact, so enclosures are certified without rounding-mode tricks.
struct RatIv {
    Rat lo, hi;

    RatIv() : lo(0), hi(0) {}
    RatIv(Rat point) : lo(point), hi(point) {}
    RatIv(Rat l, Rat h);

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_positive() const { return lo > 0; }
    bool is_negative() const { return hi < 0; }
    double mid_double() const { return mid().get_d(); }
};

RatIv operator+(const RatIv& x, const RatIv& y);
RatIv operator-(const RatIv& x, const RatIv& y);
RatIv operator*(const RatIv& x, const RatIv& y);
RatIv operator/(const RatIv& x, const RatIv& y);  // throws DenominatorVanishes if 0 in y

// Polynomial in b over Q, dense coefficients by ascending degree. The zero
// polynomial is the empty vector; otherwise the leading coefficient is
// nonzero.
struct BPoly {
    std::vector<Rat> coeffs;

    BPoly() = default;
    explicit BPoly(Rat constant);
    static BPoly monomial(int degree, Rat coeff = Rat(1));
    static BPoly from_coeffs(std::vector<Rat> coeffs);

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rat coeff(int k) const;
    Rat leading() const;
    bool is_one() const;

    void trim();
    std::string str() const;  // human-readable, for diagnostics
};

bool operator==(const BPoly& x, const BPoly& y);
BPoly operator+(const BPoly& x, const BPoly& y);
BPoly operator-(const BPoly& x, const BPoly& y);
BPoly operator-(const BPoly& x);
BPoly operator*(const BPoly& x, const BPoly& y);
BPoly operator*(const BPoly& x, const Rat& c);

// Quotient and remainder of exact division over Q; y must be nonzero.
struct BPolyDiv {
    BPoly quot, rem;
};
BPolyDiv divmod(const BPoly& x, const BPoly& y);

// Monic gcd over Q (Euclid with content normalization).
BPoly poly_gcd(BPoly x, BPoly y);

RatIv eval_iv(const BPoly& q, const RatIv& x);  // interval Horner
double eval_double(const BPoly& q, double x);

// Rational function of b. den is monic and gcd(num, den) = 1.
struct BRat {
    BPoly num, den;

    BRat();  // zero
    BRat(BPoly n, BPoly d);
    explicit BRat(Rat constant);
    static BRat b_power(int k);  // b^k, k may be negative

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return den.is_one() && num.degree() <= 0; }
    std::string str() const;

  private:
    void normalize();
};

bool operator==(const BRat& x, const BRat& y);
BRat operator+(const BRat& x, const BRat& y);
BRat operator-(const BRat& x, const BRat& y);
BRat operator-(const BRat& x);
BRat operator*(const BRat& x, const BRat& y);
BRat operator/(const BRat& x, const BRat& y);
BRat operator*(const BRat& x, const Rat& c);

double eval_double(const BRat& x, double b);

// The algebraic relation of b_{2p}: b^{2p} + p b^2 - (p-1) = 0, p >= 2.
BPoly relation_poly(int p);

// Polynomial remainder of q modulo the relation, i.e. repeated substitution
// b^{2p} -> (p-1) - p b^2. Result has degree < 2p; idempotent.
BPoly bpoly_reduce(const BPoly& q, int p);

// Reduce numerator and denominator of x modulo the relation. The result is
// equal to x at b_{2p} (not as a rational function elsewhere); degree stays
// below 2p on both sides. Throws DenominatorVanishes if den = 0 mod relation.
BRat reduce_brat(const BRat& x, int p);

// Certified bracketing of the unique root of the relation in (0,1).
struct AlgRoot {
    int p = 0;
    BPoly relation;
    RatIv interval;  // relation(lo) < 0 < relation(hi), width <= 2^-precision_bits
    int precision_bits = 0;

    double b_double() const { return interval.mid_double(); }
};

// Exact-rational bisection; the bracket is certified by construction.
AlgRoot find_b2p(int p, int precision_bits);

// Pure refinement: returns a root object with at least the requested width.
AlgRoot refine(const AlgRoot& root, int precision_bits);

// Enclosing interval for x(b_{2p}) of width <= 2^(-precision_bits+4); refines
// a private copy of the root as needed. Throws DenominatorVanishes if den(x)
// straddles 0 after maximal refinement.
RatIv eval_brat(const BRat& x, const AlgRoot& root, int precision_bits);

// True iff bpoly_reduce(num(x), p) == 0: a sufficient condition for
// x(b_{2p}) = 0. When the reduction is nonzero the value is also evaluated
// numerically; disagreement (enclosure still contains 0 at 1024 bits) throws
// Inconclusive rather than silently accepting either verdict.
bool is_zero_mod_relation(const BRat& x, int p);

// Enclosure of sqrt(s) for s >= 0, by rational bisection.
RatIv sqrt_iv(const Rat& s, int precision_bits);

}  // namespace vstate
