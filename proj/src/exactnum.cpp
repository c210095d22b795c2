#include "vstate/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vstate {

Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

Rat pow2(long k) {
    mpz_class one = 1;
    if (k >= 0) return Rat(one << k);
    Rat q(one, one << (-k));
    q.canonicalize();
    return q;
}

RatIv::RatIv(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) std::swap(lo, hi);
}

RatIv operator+(const RatIv& x, const RatIv& y) { return RatIv(x.lo + y.lo, x.hi + y.hi); }
RatIv operator-(const RatIv& x, const RatIv& y) { return RatIv(x.lo - y.hi, x.hi - y.lo); }

RatIv operator*(const RatIv& x, const RatIv& y) {
    Rat a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
    return RatIv(std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d)));
}

RatIv operator/(const RatIv& x, const RatIv& y) {
    if (y.contains_zero()) throw DenominatorVanishes("interval division by interval containing 0");
    return x * RatIv(Rat(1) / y.hi, Rat(1) / y.lo);
}

BPoly::BPoly(Rat constant) {
    if (constant != 0) coeffs.push_back(std::move(constant));
}

BPoly BPoly::monomial(int degree, Rat coeff) {
    BPoly q;
    if (coeff == 0) return q;
    q.coeffs.assign(degree + 1, Rat(0));
    q.coeffs[degree] = std::move(coeff);
    return q;
}

BPoly BPoly::from_coeffs(std::vector<Rat> coeffs) {
    BPoly q;
    q.coeffs = std::move(coeffs);
    q.trim();
    return q;
}

Rat BPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return Rat(0);
    return coeffs[k];
}

Rat BPoly::leading() const { return coeffs.empty() ? Rat(0) : coeffs.back(); }

bool BPoly::is_one() const { return coeffs.size() == 1 && coeffs[0] == 1; }

void BPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::string BPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        if (coeffs[k] == 0) continue;
        if (!first) out << " + ";
        out << coeffs[k].get_str();
        if (k > 0) out << "*b^" << k;
        first = false;
    }
    return out.str();
}

bool operator==(const BPoly& x, const BPoly& y) { return x.coeffs == y.coeffs; }

BPoly operator+(const BPoly& x, const BPoly& y) {
    std::vector<Rat> c(std::max(x.coeffs.size(), y.coeffs.size()), Rat(0));
    for (size_t i = 0; i < x.coeffs.size(); ++i) c[i] += x.coeffs[i];
    for (size_t i = 0; i < y.coeffs.size(); ++i) c[i] += y.coeffs[i];
    return BPoly::from_coeffs(std::move(c));
}

BPoly operator-(const BPoly& x, const BPoly& y) { return x + (-y); }

BPoly operator-(const BPoly& x) {
    BPoly q = x;
    for (auto& c : q.coeffs) c = -c;
    return q;
}

BPoly operator*(const BPoly& x, const BPoly& y) {
    if (x.is_zero() || y.is_zero()) return BPoly();
    std::vector<Rat> c(x.coeffs.size() + y.coeffs.size() - 1, Rat(0));
    for (size_t i = 0; i < x.coeffs.size(); ++i) {
        if (x.coeffs[i] == 0) continue;
        for (size_t j = 0; j < y.coeffs.size(); ++j) c[i + j] += x.coeffs[i] * y.coeffs[j];
    }
    return BPoly::from_coeffs(std::move(c));
}

BPoly operator*(const BPoly& x, const Rat& c) {
    if (c == 0) return BPoly();
    BPoly q = x;
    for (auto& v : q.coeffs) v *= c;
    return q;
}

BPolyDiv divmod(const BPoly& x, const BPoly& y) {
    if (y.is_zero()) throw DenominatorVanishes("polynomial division by zero");
    BPolyDiv result;
    result.rem = x;
    if (x.degree() < y.degree()) return result;
    std::vector<Rat> quot(x.degree() - y.degree() + 1, Rat(0));
    while (!result.rem.is_zero() && result.rem.degree() >= y.degree()) {
        int shift = result.rem.degree() - y.degree();
        Rat factor = result.rem.leading() / y.leading();
        quot[shift] = factor;
        result.rem = result.rem - BPoly::monomial(shift, factor) * y;
    }
    result.quot = BPoly::from_coeffs(std::move(quot));
    return result;
}

namespace {

// Scale to a primitive integer polynomial; keeps Euclid's coefficients small.
BPoly make_primitive(BPoly q) {
    if (q.is_zero()) return q;
    mpz_class den_lcm = 1;
    for (const auto& c : q.coeffs) {
        mpz_class d = c.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    mpz_class num_gcd = 0;
    for (auto& c : q.coeffs) {
        c *= Rat(den_lcm);
        c.canonicalize();
        num_gcd = gcd(num_gcd, c.get_num());
    }
    if (num_gcd > 1) {
        Rat inv(mpz_class(1), num_gcd);
        inv.canonicalize();
        for (auto& c : q.coeffs) c *= inv;
    }
    return q;
}

}  // namespace

BPoly poly_gcd(BPoly x, BPoly y) {
    x = make_primitive(std::move(x));
    y = make_primitive(std::move(y));
    while (!y.is_zero()) {
        BPoly r = make_primitive(divmod(x, y).rem);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    Rat inv = Rat(1) / x.leading();
    return x * inv;
}

RatIv eval_iv(const BPoly& q, const RatIv& x) {
    RatIv acc(Rat(0));
    for (int k = q.degree(); k >= 0; --k) acc = acc * x + RatIv(q.coeffs[k]);
    return acc;
}

double eval_double(const BPoly& q, double x) {
    double acc = 0.0;
    for (int k = q.degree(); k >= 0; --k) acc = acc * x + q.coeffs[k].get_d();
    return acc;
}

BRat::BRat() : num(), den(Rat(1)) {}

BRat::BRat(Rat constant) : num(std::move(constant)), den(Rat(1)) {}

BRat::BRat(BPoly n, BPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

BRat BRat::b_power(int k) {
    if (k >= 0) return BRat(BPoly::monomial(k), BPoly(Rat(1)));
    return BRat(BPoly(Rat(1)), BPoly::monomial(-k));
}

void BRat::normalize() {
    if (den.is_zero()) throw DenominatorVanishes("BRat with zero denominator");
    if (num.is_zero()) {
        den = BPoly(Rat(1));
        return;
    }
    BPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).quot;
        den = divmod(den, g).quot;
    }
    Rat lead = den.leading();
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num = num * inv;
        den = den * inv;
    }
}

std::string BRat::str() const {
    if (den.is_one()) return num.str();
    return "(" + num.str() + ") / (" + den.str() + ")";
}

bool operator==(const BRat& x, const BRat& y) { return x.num == y.num && x.den == y.den; }

BRat operator+(const BRat& x, const BRat& y) { return BRat(x.num * y.den + y.num * x.den, x.den * y.den); }
BRat operator-(const BRat& x, const BRat& y) { return BRat(x.num * y.den - y.num * x.den, x.den * y.den); }
BRat operator-(const BRat& x) { return BRat(-x.num, x.den); }
BRat operator*(const BRat& x, const BRat& y) { return BRat(x.num * y.num, x.den * y.den); }

BRat operator/(const BRat& x, const BRat& y) {
    if (y.is_zero()) throw DenominatorVanishes("BRat division by zero");
    return BRat(x.num * y.den, x.den * y.num);
}

BRat operator*(const BRat& x, const Rat& c) { return BRat(x.num * c, x.den); }

double eval_double(const BRat& x, double b) { return eval_double(x.num, b) / eval_double(x.den, b); }

BPoly relation_poly(int p) {
    BPoly q = BPoly::monomial(2 * p);
    q = q + BPoly::monomial(2, Rat(p));
    q = q + BPoly(Rat(1 - p));
    return q;
}

BPoly bpoly_reduce(const BPoly& q, int p) { return divmod(q, relation_poly(p)).rem; }

BRat reduce_brat(const BRat& x, int p) {
    BPoly n = bpoly_reduce(x.num, p);
    BPoly d = bpoly_reduce(x.den, p);
    if (d.is_zero()) throw DenominatorVanishes("denominator divisible by the b_{2p} relation");
    return BRat(std::move(n), std::move(d));
}

AlgRoot find_b2p(int p, int precision_bits) {
    if (p < 2) throw std::invalid_argument("find_b2p requires p >= 2");
    if (precision_bits < 16) throw std::invalid_argument("find_b2p requires precision_bits >= 16");
    AlgRoot root;
    root.p = p;
    root.relation = relation_poly(p);
    root.precision_bits = precision_bits;
    // relation(0) = -(p-1) < 0 and relation(1) = 2 > 0.
    Rat lo(0), hi(1);
    Rat target = pow2(-precision_bits);
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        RatIv value = eval_iv(root.relation, RatIv(mid));
        Rat v = value.lo;
        if (v == 0) {
            // A rational midpoint hit a root exactly; step off it while
            // preserving the sign change.
            Rat mid2 = lo + (hi - lo) * rat(3, 8);
            if (eval_iv(root.relation, RatIv(mid2)).lo == 0) mid2 = lo + (hi - lo) * rat(5, 8);
            v = eval_iv(root.relation, RatIv(mid2)).lo;
            mid = mid2;
        }
        if (v < 0)
            lo = mid;
        else
            hi = mid;
    }
    root.interval = RatIv(lo, hi);
    return root;
}

AlgRoot refine(const AlgRoot& root, int precision_bits) {
    if (precision_bits <= root.precision_bits) return root;
    AlgRoot out = root;
    Rat lo = root.interval.lo, hi = root.interval.hi;
    Rat target = pow2(-precision_bits);
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        Rat v = eval_iv(root.relation, RatIv(mid)).lo;
        if (v == 0) {
            Rat mid2 = lo + (hi - lo) * rat(3, 8);
            if (eval_iv(root.relation, RatIv(mid2)).lo == 0) mid2 = lo + (hi - lo) * rat(5, 8);
            v = eval_iv(root.relation, RatIv(mid2)).lo;
            mid = mid2;
        }
        if (v < 0)
            lo = mid;
        else
            hi = mid;
    }
    out.interval = RatIv(lo, hi);
    out.precision_bits = precision_bits;
    return out;
}

RatIv eval_brat(const BRat& x, const AlgRoot& root, int precision_bits) {
    Rat target = pow2(-precision_bits + 4);
    AlgRoot local = root;
    const int max_bits = std::max(16 * precision_bits, 4096);
    while (true) {
        RatIv den_iv = eval_iv(x.den, local.interval);
        if (!den_iv.contains_zero()) {
            RatIv value = eval_iv(x.num, local.interval) / den_iv;
            if (value.width() <= target) return value;
        } else if (local.precision_bits >= max_bits) {
            throw DenominatorVanishes("denominator enclosure straddles 0 at maximal refinement");
        }
        if (local.precision_bits >= max_bits && !den_iv.contains_zero()) {
            // Width is interval-arithmetic slack, not root uncertainty; a
            // tighter bracket cannot exist past max_bits.
            return eval_iv(x.num, local.interval) / den_iv;
        }
        local = refine(local, std::min(2 * local.precision_bits, max_bits));
    }
}

bool is_zero_mod_relation(const BRat& x, int p) {
    if (bpoly_reduce(x.den, p).is_zero())
        throw DenominatorVanishes("is_zero_mod_relation: denominator divisible by the relation");
    BPoly r = bpoly_reduce(x.num, p);
    if (r.is_zero()) return true;
    AlgRoot root = find_b2p(p, 256);
    RatIv value = eval_iv(r, root.interval);
    if (!value.contains_zero()) return false;
    root = refine(root, 1024);
    value = eval_iv(r, root.interval);
    if (!value.contains_zero()) return false;
    throw Inconclusive("nonzero residue mod relation but numeric enclosure contains 0");
}

RatIv sqrt_iv(const Rat& s, int precision_bits) {
    if (s < 0) throw std::domain_error("sqrt_iv of negative rational");
    if (s == 0) return RatIv(Rat(0));
    Rat lo(0), hi = std::max(Rat(1), s);
    Rat target = pow2(-precision_bits);
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        if (mid * mid <= s)
            lo = mid;
        else
            hi = mid;
    }
    return RatIv(lo, hi);
}

}  // namespace vstate
