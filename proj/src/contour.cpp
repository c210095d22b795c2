#include "vstate/contour.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace vstate {

namespace {

int merge_ctx(int px, int py) {
    if (px == py) return px;
    if (px == 0) return py;
    if (py == 0) return px;
    throw std::logic_error("CoefExpr reduction contexts differ");
}

BRat reduce_ctx(const BRat& x, int reduce_p) { return reduce_p > 0 ? reduce_brat(x, reduce_p) : x; }

// Generalized binomial C(v, r) for integer v and r >= 0.
Rat binomial(long v, int r) {
    Rat out(1);
    for (int t = 0; t < r; ++t) out *= rat(v - t, t + 1);
    return out;
}

Rat factorial(int n) {
    Rat out(1);
    for (int k = 2; k <= n; ++k) out *= k;
    return out;
}

}  // namespace

CoefExpr CoefExpr::zero(int reduce_p) {
    CoefExpr c;
    c.reduce_p = reduce_p;
    return c;
}

CoefExpr CoefExpr::constant(BRat value, int reduce_p) { return a_power(0, std::move(value), reduce_p); }

CoefExpr CoefExpr::a_power(int k, BRat value, int reduce_p) {
    CoefExpr c;
    c.reduce_p = reduce_p;
    c.coef.assign(k + 1, BRat());
    c.coef[k] = reduce_ctx(value, reduce_p);
    c.normalize();
    return c;
}

BRat CoefExpr::a_coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coef.size())) return BRat();
    return coef[k];
}

void CoefExpr::normalize() {
    while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
}

double CoefExpr::eval(double b, double a) const {
    double acc = 0.0;
    for (int k = a_degree(); k >= 0; --k) acc = acc * a + eval_double(coef[k], b);
    return acc;
}

RatIv CoefExpr::eval_iv(const AlgRoot& root, const Rat& a, int precision_bits) const {
    RatIv acc(Rat(0));
    for (int k = a_degree(); k >= 0; --k)
        acc = acc * RatIv(a) + eval_brat(coef[k], root, precision_bits);
    return acc;
}

std::string CoefExpr::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k <= a_degree(); ++k) {
        if (coef[k].is_zero()) continue;
        if (!first) out << " + ";
        out << "(" << coef[k].str() << ")";
        if (k == 1) out << "*a";
        if (k > 1) out << "*a^" << k;
        first = false;
    }
    return out.str();
}

bool operator==(const CoefExpr& x, const CoefExpr& y) { return (x - y).is_zero(); }

CoefExpr operator+(const CoefExpr& x, const CoefExpr& y) {
    CoefExpr out;
    out.reduce_p = merge_ctx(x.reduce_p, y.reduce_p);
    out.coef.resize(std::max(x.coef.size(), y.coef.size()));
    for (size_t k = 0; k < out.coef.size(); ++k) {
        BRat v;
        if (k < x.coef.size()) v = v + x.coef[k];
        if (k < y.coef.size()) v = v + y.coef[k];
        out.coef[k] = reduce_ctx(v, out.reduce_p);
    }
    out.normalize();
    return out;
}

CoefExpr operator-(const CoefExpr& x, const CoefExpr& y) { return x + (-y); }

CoefExpr operator-(const CoefExpr& x) {
    CoefExpr out = x;
    for (auto& v : out.coef) v = -v;
    return out;
}

CoefExpr operator*(const CoefExpr& x, const CoefExpr& y) {
    CoefExpr out;
    out.reduce_p = merge_ctx(x.reduce_p, y.reduce_p);
    if (x.is_zero() || y.is_zero()) return CoefExpr::zero(out.reduce_p);
    out.coef.assign(x.coef.size() + y.coef.size() - 1, BRat());
    for (size_t i = 0; i < x.coef.size(); ++i) {
        if (x.coef[i].is_zero()) continue;
        for (size_t j = 0; j < y.coef.size(); ++j) out.coef[i + j] = out.coef[i + j] + x.coef[i] * y.coef[j];
    }
    for (auto& v : out.coef) v = reduce_ctx(v, out.reduce_p);
    out.normalize();
    return out;
}

CoefExpr operator*(const CoefExpr& x, const BRat& c) {
    CoefExpr out = x;
    for (auto& v : out.coef) v = reduce_ctx(v * c, out.reduce_p);
    out.normalize();
    return out;
}

CoefExpr operator*(const CoefExpr& x, const Rat& c) {
    CoefExpr out = x;
    for (auto& v : out.coef) v = v * c;
    out.normalize();
    return out;
}

CoefExpr operator/(const CoefExpr& x, const BRat& c) {
    if (c.is_zero()) throw DenominatorVanishes("CoefExpr division by zero BRat");
    CoefExpr out = x;
    for (auto& v : out.coef) v = reduce_ctx(v / c, out.reduce_p);
    out.normalize();
    return out;
}

LaurentPoly LaurentPoly::monomial(int exponent, CoefExpr c) {
    LaurentPoly q;
    if (!c.is_zero()) q.terms.emplace(exponent, std::move(c));
    return q;
}

CoefExpr LaurentPoly::coeff(int exponent) const {
    auto it = terms.find(exponent);
    return it == terms.end() ? CoefExpr() : it->second;
}

void LaurentPoly::add_term(int exponent, const CoefExpr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(exponent, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

LaurentPoly LaurentPoly::conj() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms) out.terms.emplace(-e, c);
    return out;
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms)
        if (e != 0) out.add_term(e - 1, c * Rat(e));
    return out;
}

std::string LaurentPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) out << "  +  ";
        out << "[" << c.str() << "] w^" << e;
        first = false;
    }
    return out.str();
}

bool operator==(const LaurentPoly& x, const LaurentPoly& y) { return (x - y).is_zero(); }

LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly out = x;
    for (const auto& [e, c] : y.terms) out.add_term(e, c);
    return out;
}

LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly out = x;
    for (const auto& [e, c] : y.terms) out.add_term(e, -c);
    return out;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly out;
    for (const auto& [ex, cx] : x.terms)
        for (const auto& [ey, cy] : y.terms) out.add_term(ex + ey, cx * cy);
    return out;
}

LaurentPoly operator*(const LaurentPoly& x, const CoefExpr& c) {
    LaurentPoly out;
    if (c.is_zero()) return out;
    for (const auto& [e, v] : x.terms) out.add_term(e, v * c);
    return out;
}

BRat canonical_net(int q, int k3, CanonicalForm form) {
    if (k3 < 1) throw std::invalid_argument("canonical_net requires k3 >= 1");
    switch (form) {
        case CanonicalForm::SELF: {
            if (q < k3 - 1) return BRat();
            return BRat(Rat((k3 % 2) ? -1 : 1) * binomial(q, k3 - 1));
        }
        case CanonicalForm::OUTER_AT_INNER: {
            if (q < k3 - 1) return BRat();
            Rat c = Rat((k3 % 2) ? -1 : 1) * binomial(q, k3 - 1);
            return BRat::b_power(q - k3 + 1) * c;
        }
        case CanonicalForm::INNER_AT_OUTER: {
            if (q >= 0) return BRat();
            return BRat::b_power(-q - 1) * binomial(k3 - q - 2, k3 - 1);
        }
    }
    throw std::logic_error("unreachable");
}

BRat canonical_integral(int k1, int k2, int k3, CanonicalForm form) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("canonical_integral requires k1, k2 >= 0");
    return canonical_net(k1 - k2, k3, form);
}

CoefExpr integrate_rational(const std::vector<IntegralTerm>& terms) {
    CoefExpr out;
    for (const auto& t : terms) out = out + t.coefficient * canonical_integral(t.k1, t.k2, t.k3, t.form);
    return out;
}

namespace {

// Bivariate Laurent polynomial in (w, tau); key = (w exponent, tau exponent).
using BiPoly = std::map<std::pair<int, int>, CoefExpr>;

void bi_add(BiPoly& q, int ew, int et, const CoefExpr& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(ew, et);
    auto [it, inserted] = q.emplace(key, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) q.erase(it);
    }
}

BiPoly bi_mul(const BiPoly& x, const BiPoly& y) {
    BiPoly out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) bi_add(out, kx.first + ky.first, kx.second + ky.second, cx * cy);
    return out;
}

// d(w) - d(tau) for a single-variable Laurent poly evaluated on each curve.
BiPoly cross_difference(const LaurentPoly& dw, const LaurentPoly& dtau) {
    BiPoly out;
    for (const auto& [e, c] : dw.terms) bi_add(out, e, 0, c);
    for (const auto& [e, c] : dtau.terms) bi_add(out, 0, e, -c);
    return out;
}

BiPoly tau_only(const LaurentPoly& d) {
    BiPoly out;
    for (const auto& [e, c] : d.terms) bi_add(out, 0, e, c);
    return out;
}

Rat residue_at_one(int v, int k3) {
    // Res_{sigma=1} sigma^v / (1 - sigma)^{k3} = (-1)^{k3} C(v, k3-1).
    return Rat((k3 % 2) ? -1 : 1) * binomial(v, k3 - 1);
}

}  // namespace

LaurentPoly expand_cauchy(const PerturbationScheme& scheme, int source, int target,
                          const MultiIndex& order) {
    if (source < 1 || source > 2 || target < 1 || target > 2)
        throw std::invalid_argument("expand_cauchy: source/target must be 1 or 2");
    if (order.size() != scheme.directions.size())
        throw std::invalid_argument("expand_cauchy: order length != number of directions");
    const int total = [&] {
        int s = 0;
        for (int o : order) {
            if (o < 0) throw std::invalid_argument("expand_cauchy: negative order");
            s += o;
        }
        return s;
    }();
    if (total > 6) throw std::invalid_argument("expand_cauchy: total order capped at 6");

    const int i = source, j = target;  // I_i(phi_j)
    const size_t L = scheme.directions.size();
    const BRat b_i = (i == 1) ? BRat(Rat(1)) : BRat::b_power(1);
    const BRat b_j = (j == 1) ? BRat(Rat(1)) : BRat::b_power(1);

    // Kernel pieces. Numerator N and measure P are affine in t; the
    // denominator A + sum t_l X_l is expanded as a geometric series.
    BiPoly N0;
    bi_add(N0, -1, 0, CoefExpr::constant(b_j));
    bi_add(N0, 0, -1, -CoefExpr::constant(b_i));
    std::vector<BiPoly> N_l(L), X_l(L), P_l(L);
    for (size_t l = 0; l < L; ++l) {
        const LaurentPoly& dj = scheme.directions[l][j - 1];
        const LaurentPoly& di = scheme.directions[l][i - 1];
        N_l[l] = cross_difference(dj.conj(), di.conj());
        X_l[l] = cross_difference(dj, di);
        P_l[l] = tau_only(di.derivative());
    }

    Rat order_factorial(1);
    for (int o : order) order_factorial *= factorial(o);

    LaurentPoly result;
    std::map<int, CoefExpr> circle_residues;  // only used when i == j

    // beta, gamma in {0, e_l}: the N and P factors each contribute at most one
    // t; delta = order - beta - gamma goes to the geometric series.
    for (int beta = -1; beta < static_cast<int>(L); ++beta) {
        MultiIndex rem1 = order;
        if (beta >= 0) {
            if (rem1[beta] == 0) continue;
            --rem1[beta];
        }
        for (int gamma = -1; gamma < static_cast<int>(L); ++gamma) {
            MultiIndex delta = rem1;
            if (gamma >= 0) {
                if (delta[gamma] == 0) continue;
                --delta[gamma];
            }
            int m = 0;
            for (int d : delta) m += d;
            const int k3 = m + 1;

            // scalar = order! * (-1)^m * m! / prod delta_l!
            Rat scalar = order_factorial * factorial(m) * Rat((m % 2) ? -1 : 1);
            for (int d : delta) scalar /= factorial(d);

            BiPoly term;
            if (beta >= 0)
                term = N_l[beta];
            else
                term = N0;
            if (gamma >= 0)
                term = bi_mul(term, P_l[gamma]);
            else {
                BiPoly pb;
                bi_add(pb, 0, 0, CoefExpr::constant(b_i));
                term = bi_mul(term, pb);
            }
            for (size_t l = 0; l < L; ++l)
                for (int rep = 0; rep < delta[l]; ++rep) term = bi_mul(term, X_l[l]);

            const CanonicalForm form = (i == j)            ? CanonicalForm::SELF
                                       : (i == 1 && j == 2) ? CanonicalForm::OUTER_AT_INNER
                                                            : CanonicalForm::INNER_AT_OUTER;
            // A^{k3} with A = b_j w - b_i tau; tau -> w sigma turns each
            // monomial w^u tau^v into w^{u+v-k3+1} times a canonical integral.
            const BRat scale = (i == 2 && j == 2) ? BRat::b_power(-k3) : BRat(Rat(1));
            for (const auto& [key, c] : term) {
                const auto [u, v] = key;
                CoefExpr contribution = c * (canonical_net(v, k3, form) * scale) * scalar;
                result.add_term(u + v - k3 + 1, contribution);
                if (i == j) {
                    CoefExpr res = c * (scale * residue_at_one(v, k3)) * scalar;
                    if (!res.is_zero()) {
                        auto [it, inserted] = circle_residues.emplace(u + v - k3 + 1, res);
                        if (!inserted) it->second = it->second + res;
                    }
                }
            }
        }
    }

    if (i == j) {
        for (const auto& [e, res] : circle_residues) {
            if (!res.is_zero())
                throw PoleOnCircle("expand_cauchy: uncancelled pole on |tau|=1 at w-exponent " +
                                   std::to_string(e) + ": " + res.str());
        }
    }
    return result;
}

CoefExpr YElement::coeff(int component, int n) const {
    const auto& m = comp[component - 1];
    auto it = m.find(n);
    return it == m.end() ? CoefExpr() : it->second;
}

void YElement::add(int component, int n, const CoefExpr& c) {
    if (c.is_zero()) return;
    auto& m = comp[component - 1];
    auto [it, inserted] = m.emplace(n, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) m.erase(it);
    }
}

std::string YElement::str() const {
    std::ostringstream out;
    for (int jc = 0; jc < 2; ++jc) {
        out << "component " << (jc + 1) << ":";
        if (comp[jc].empty()) out << " 0";
        for (const auto& [n, c] : comp[jc]) out << "  e_" << n << ": " << c.str();
        if (jc == 0) out << "\n";
    }
    return out.str();
}

YElement operator+(const YElement& x, const YElement& y) {
    YElement out = x;
    for (int jc = 1; jc <= 2; ++jc)
        for (const auto& [n, c] : y.comp[jc - 1]) out.add(jc, n, c);
    return out;
}

YElement operator-(const YElement& x, const YElement& y) {
    YElement out = x;
    for (int jc = 1; jc <= 2; ++jc)
        for (const auto& [n, c] : y.comp[jc - 1]) out.add(jc, n, -c);
    return out;
}

YElement operator*(const YElement& x, const CoefExpr& c) {
    YElement out;
    for (int jc = 1; jc <= 2; ++jc)
        for (const auto& [n, v] : x.comp[jc - 1]) out.add(jc, n, v * c);
    return out;
}

YElement derivative_G(const PerturbationScheme& scheme, int lambda_order, const MultiIndex& order) {
    if (lambda_order < 0 || lambda_order > 1)
        throw std::invalid_argument("derivative_G: lambda_order must be 0 or 1 (higher orders vanish)");
    if (order.size() != scheme.directions.size())
        throw std::invalid_argument("derivative_G: order length != number of directions");
    const size_t L = scheme.directions.size();

    // 1 - lambda_{2p} = (1 - b^2)/2.
    const BRat one_minus_lambda =
        BRat(BPoly::from_coeffs({rat(1), rat(0), rat(-1)}), BPoly(rat(2)));

    YElement out;
    for (int j = 1; j <= 2; ++j) {
        const BRat b_j = (j == 1) ? BRat(Rat(1)) : BRat::b_power(1);

        // d^order [ B(t, w) * w * phi_j'(t, w) ], with phi_j' affine in t:
        // the gamma = e_l split carries the product-rule factor order_l.
        LaurentPoly total;
        for (int gamma = -1; gamma < static_cast<int>(L); ++gamma) {
            MultiIndex beta = order;
            Rat rule_factor(1);
            LaurentPoly dphi;  // d^gamma phi_j'
            if (gamma >= 0) {
                if (beta[gamma] == 0) continue;
                rule_factor = Rat(beta[gamma]);
                --beta[gamma];
                dphi = scheme.directions[gamma][j - 1].derivative();
            } else {
                dphi = LaurentPoly::monomial(0, CoefExpr::constant(b_j));
            }

            int beta_total = 0;
            for (int v : beta) beta_total += v;

            // Bracket term d^beta [ (1-lambda) conj(phi_j) + I(phi_j) ].
            LaurentPoly bracket;
            if (lambda_order == 0) {
                if (beta_total == 0) {
                    bracket.add_term(-1, CoefExpr::constant(b_j * one_minus_lambda));
                } else if (beta_total == 1) {
                    for (size_t l = 0; l < L; ++l)
                        if (beta[l] == 1)
                            bracket = bracket +
                                      scheme.directions[l][j - 1].conj() * CoefExpr::constant(one_minus_lambda);
                }
                bracket = bracket + expand_cauchy(scheme, 1, j, beta) - expand_cauchy(scheme, 2, j, beta);
            } else {
                // d/d lambda of the bracket is -conj(phi_j); I is lambda-free.
                if (beta_total == 0) {
                    bracket.add_term(-1, -CoefExpr::constant(b_j));
                } else if (beta_total == 1) {
                    for (size_t l = 0; l < L; ++l)
                        if (beta[l] == 1) bracket = bracket - scheme.directions[l][j - 1].conj();
                }
            }
            if (bracket.is_zero()) continue;

            LaurentPoly w_shift;
            for (const auto& [e, c] : bracket.terms) w_shift.add_term(e + 1, c);
            total = total + (w_shift * dphi) * CoefExpr::constant(BRat(rule_factor));
        }

        // Im of a real-coefficient Laurent polynomial: the e_n coefficient is
        // c_{-n} - c_{+n}.
        for (const auto& [e, c] : total.terms) {
            if (e == 0) continue;
            if (e < 0)
                out.add(j, -e, c);
            else
                out.add(j, e, -c);
        }
    }
    return out;
}

}  // namespace vstate
