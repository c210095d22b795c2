#include "vstate/linearization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vstate {

Mult2 multiplier(int n, double lambda, double b) {
    if (n < 1) throw std::invalid_argument("multiplier requires n >= 1");
    Mult2 out;
    out.n = n;
    out.m[0][0] = n * lambda - 1.0 - n * b * b;
    out.m[0][1] = std::pow(b, n + 1);
    out.m[1][0] = -std::pow(b, n);
    out.m[1][1] = b * (n * lambda - n + 1.0);
    return out;
}

double det(const Mult2& m) { return m.m[0][0] * m.m[1][1] - m.m[0][1] * m.m[1][0]; }

Mult2Sym multiplier_sym(int n, int reduce_p) {
    if (n < 1) throw std::invalid_argument("multiplier_sym requires n >= 1");
    Mult2Sym out;
    out.n = n;
    // n lambda_{2p} - 1 - n b^2 = n(1-b^2)/2 - 1, and
    // b (n lambda_{2p} - n + 1) = b (1 - n(1-b^2)/2).
    const Rat half_n = rat(n, 2);
    BRat diag0(BPoly::from_coeffs({half_n - 1, rat(0), -half_n}), BPoly(rat(1)));
    BRat diag1(BPoly::from_coeffs({rat(0), Rat(1) - half_n, rat(0), half_n}), BPoly(rat(1)));
    out.m[0][0] = diag0;
    out.m[0][1] = BRat::b_power(n + 1);
    out.m[1][0] = -BRat::b_power(n);
    out.m[1][1] = diag1;
    if (reduce_p > 0)
        for (auto& row : out.m)
            for (auto& e : row) e = reduce_brat(e, reduce_p);
    return out;
}

BRat det_sym(const Mult2Sym& m, int reduce_p) {
    BRat d = m.m[0][0] * m.m[1][1] - m.m[0][1] * m.m[1][0];
    return reduce_p > 0 ? reduce_brat(d, reduce_p) : d;
}

double dispersion(int m, double lambda, double b) {
    if (m < 0) throw std::invalid_argument("dispersion requires m >= 0");
    return ((1.0 - lambda) + b * b + m * (b * b - lambda)) * (m * (1.0 - lambda) - lambda) +
           std::pow(b, 2 * m + 2);
}

BRat dispersion_at_lambda2p(int m) {
    // first factor (1+b^2)/2 - m(1-b^2)/2, second (m(1-b^2) - (1+b^2))/2.
    BRat first(BPoly::from_coeffs({rat(1 - m, 2), rat(0), rat(1 + m, 2)}), BPoly(rat(1)));
    BRat second(BPoly::from_coeffs({rat(m - 1, 2), rat(0), rat(-m - 1, 2)}), BPoly(rat(1)));
    return first * second + BRat::b_power(2 * m + 2);
}

void XElem::add(int n, int component, const CoefExpr& c) {
    if (c.is_zero()) return;
    auto& block = blocks[n];
    block[component - 1] = block[component - 1] + c;
    if (block[0].is_zero() && block[1].is_zero()) blocks.erase(n);
}

CoefExpr XElem::coeff(int n, int component) const {
    auto it = blocks.find(n);
    return it == blocks.end() ? CoefExpr() : it->second[component - 1];
}

std::array<LaurentPoly, 2> XElem::to_laurent() const {
    std::array<LaurentPoly, 2> out;
    for (const auto& [n, block] : blocks) {
        out[0].add_term(-(2 * n - 1), block[0]);
        out[1].add_term(-(2 * n - 1), block[1]);
    }
    return out;
}

std::string XElem::str() const {
    std::ostringstream out;
    if (blocks.empty()) return "0";
    bool first = true;
    for (const auto& [n, block] : blocks) {
        if (!first) out << "  +  ";
        out << "(" << block[0].str() << ", " << block[1].str() << ") wbar^" << (2 * n - 1);
        first = false;
    }
    return out.str();
}

XElem operator+(const XElem& x, const XElem& y) {
    XElem out = x;
    for (const auto& [n, block] : y.blocks) {
        out.add(n, 1, block[0]);
        out.add(n, 2, block[1]);
    }
    return out;
}

XElem operator-(const XElem& x, const XElem& y) {
    XElem out = x;
    for (const auto& [n, block] : y.blocks) {
        out.add(n, 1, -block[0]);
        out.add(n, 2, -block[1]);
    }
    return out;
}

XElem operator*(const XElem& x, const CoefExpr& c) {
    XElem out;
    for (const auto& [n, block] : x.blocks) {
        out.add(n, 1, block[0] * c);
        out.add(n, 2, block[1] * c);
    }
    return out;
}

XElem kernel_x1(int p, int reduce_p) {
    (void)p;
    XElem x;
    x.add(1, 1, CoefExpr::constant(BRat::b_power(1), reduce_p));
    x.add(1, 2, CoefExpr::constant(BRat(rat(1)), reduce_p));
    return x;
}

XElem kernel_x2(int p, int reduce_p) {
    XElem x;
    x.add(p, 1, CoefExpr::constant(BRat::b_power(1), reduce_p));
    x.add(p, 2, CoefExpr::constant(BRat(rat(-1)), reduce_p));
    return x;
}

XElem kernel_xa(int p, int reduce_p) {
    XElem x = kernel_x1(p, reduce_p);
    x.add(p, 1, CoefExpr::a_power(1, BRat::b_power(1), reduce_p));
    x.add(p, 2, CoefExpr::a_power(1, BRat(rat(-1)), reduce_p));
    return x;
}

bool kernel_equations_hold(int p) {
    Mult2Sym m2 = multiplier_sym(2, p);
    Mult2Sym m2p = multiplier_sym(2 * p, p);
    const BRat b = BRat::b_power(1), one(rat(1));
    BRat k11 = m2.m[0][0] * b + m2.m[0][1] * one;
    BRat k12 = m2.m[1][0] * b + m2.m[1][1] * one;
    BRat k21 = m2p.m[0][0] * b - m2p.m[0][1] * one;
    BRat k22 = m2p.m[1][0] * b - m2p.m[1][1] * one;
    return is_zero_mod_relation(k11, p) && is_zero_mod_relation(k12, p) &&
           is_zero_mod_relation(k21, p) && is_zero_mod_relation(k22, p);
}

ProjectionSym project_scaled(const YElement& k, int p) {
    ProjectionSym out;
    out.q1_scaled = k.coeff(1, 2) - k.coeff(2, 2);
    out.q2_scaled = -(k.coeff(1, 2 * p) + k.coeff(2, 2 * p));
    out.remainder = k;
    // Q k = (q1s/2)(1,-1) e_2 - (q2s/2)(1,1) e_{2p}.
    const Rat half(1, 2);
    out.remainder.add(1, 2, -(out.q1_scaled * half));
    out.remainder.add(2, 2, out.q1_scaled * half);
    out.remainder.add(1, 2 * p, out.q2_scaled * half);
    out.remainder.add(2, 2 * p, out.q2_scaled * half);
    return out;
}

ProjectionNum project_blocks(const std::array<double, 2>& B1, const std::array<double, 2>& Bp) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ProjectionNum out;
    out.q1 = (B1[0] - B1[1]) * inv_sqrt2;
    out.q2 = -(Bp[0] + Bp[1]) * inv_sqrt2;
    const double c1 = out.q1 * inv_sqrt2;  // q1 y1 = c1 (1,-1) e_2
    const double c2 = out.q2 * inv_sqrt2;  // q2 y2 = -c2 (1,1) e_{2p}
    out.remainder_block1 = {B1[0] - c1, B1[1] + c1};
    out.remainder_blockp = {Bp[0] + c2, Bp[1] + c2};
    return out;
}

XElem invert_linearization(const YElement& k, int p, int reduce_p) {
    // Exact precondition: no y1/y2 components.
    CoefExpr q1 = k.coeff(1, 2) - k.coeff(2, 2);
    CoefExpr q2 = k.coeff(1, 2 * p) + k.coeff(2, 2 * p);
    if (!q1.is_zero() || !q2.is_zero())
        throw std::invalid_argument("invert_linearization: input has co-kernel components");

    XElem h;
    // Collect absolute frequencies from both components; all must be even.
    std::map<int, std::array<CoefExpr, 2>> blocks;
    for (int j = 1; j <= 2; ++j)
        for (const auto& [freq, c] : k.comp[j - 1]) {
            if (freq % 2 != 0)
                throw std::invalid_argument("invert_linearization: odd-frequency input");
            blocks[freq][j - 1] = c;
        }

    const BRat b2 = BRat::b_power(2);
    for (const auto& [freq, B] : blocks) {
        const int n = freq / 2;
        if (n == 1) {
            // beta_1 (1,1) e_2 -> alpha_1 = -beta_1 / b^2 on (1,0) w-bar.
            h.add(1, 1, -(B[0] / b2));
        } else if (n == p) {
            // beta_2 (1,-1) e_{2p} -> alpha_2 = beta_2 / b^{2p}.
            h.add(p, 1, B[0] / BRat::b_power(2 * p));
        } else {
            Mult2Sym M = multiplier_sym(2 * n, reduce_p);
            BRat d = det_sym(M, reduce_p);
            bool singular = reduce_p > 0 ? d.is_zero() : is_zero_mod_relation(d, p);
            if (singular)
                throw SingularBlock("invert_linearization: det M_" + std::to_string(2 * n) +
                                    " vanishes at b_{2p}");
            // A = M^{-1} B via the adjugate.
            CoefExpr a0 = (B[0] * M.m[1][1] - B[1] * M.m[0][1]) / d;
            CoefExpr a1 = (B[1] * M.m[0][0] - B[0] * M.m[1][0]) / d;
            h.add(n, 1, a0);
            h.add(n, 2, a1);
        }
    }
    return h;
}

std::vector<std::array<double, 2>> invert_linearization_num(
    const std::vector<std::array<double, 2>>& B, int p, double b) {
    const double lambda2p = (1.0 + b * b) / 2.0;
    std::vector<std::array<double, 2>> A(B.size(), {0.0, 0.0});
    for (size_t idx = 0; idx < B.size(); ++idx) {
        const int n = static_cast<int>(idx) + 1;
        if (n == 1) {
            const double beta1 = (B[idx][0] + B[idx][1]) / 2.0;
            A[idx] = {-beta1 / (b * b), 0.0};
        } else if (n == p) {
            const double beta2 = (B[idx][0] - B[idx][1]) / 2.0;
            A[idx] = {beta2 / std::pow(b, 2 * p), 0.0};
        } else {
            Mult2 M = multiplier(2 * n, lambda2p, b);
            const double d = det(M);
            if (std::abs(d) < 1e-300)
                throw SingularBlock("invert_linearization_num: det M_" + std::to_string(2 * n) + " = 0");
            A[idx] = {(B[idx][0] * M.m[1][1] - B[idx][1] * M.m[0][1]) / d,
                      (B[idx][1] * M.m[0][0] - B[idx][0] * M.m[1][0]) / d};
        }
    }
    return A;
}

std::vector<std::array<double, 2>> apply_linearization_num(
    const std::vector<std::array<double, 2>>& A, double lambda, double b) {
    std::vector<std::array<double, 2>> B(A.size(), {0.0, 0.0});
    for (size_t idx = 0; idx < A.size(); ++idx) {
        const int n = static_cast<int>(idx) + 1;
        Mult2 M = multiplier(2 * n, lambda, b);
        B[idx] = {M.m[0][0] * A[idx][0] + M.m[0][1] * A[idx][1],
                  M.m[1][0] * A[idx][0] + M.m[1][1] * A[idx][1]};
    }
    return B;
}

}  // namespace vstate
