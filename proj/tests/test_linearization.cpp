#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vstate/linearization.hpp"

using namespace vstate;

TEST_CASE("multiplier matches the stated matrix") {
    SUBCASE("trivial substitution n=4, lambda=0, b=0") {
        Mult2 m = multiplier(4, 0.0, 0.0);
        CHECK(m.m[0][0] == -1.0);
        CHECK(m.m[0][1] == 0.0);
        CHECK(m.m[1][0] == 0.0);
        CHECK(m.m[1][1] == 0.0);
    }
    SUBCASE("degenerate blocks at lambda_{2p}") {
        for (int p : {2, 3, 4}) {
            AlgRoot root = find_b2p(p, 96);
            double b = root.b_double();
            double lambda = (1.0 + b * b) / 2.0;
            Mult2 m2 = multiplier(2, lambda, b);
            // M_2 = [[-b^2, b^3], [-b^2, b^3]]
            CHECK(m2.m[0][0] == doctest::Approx(-b * b).epsilon(1e-13));
            CHECK(m2.m[0][1] == doctest::Approx(b * b * b).epsilon(1e-13));
            CHECK(m2.m[1][0] == doctest::Approx(-b * b).epsilon(1e-13));
            CHECK(m2.m[1][1] == doctest::Approx(b * b * b).epsilon(1e-13));
            // M_{2p} = [[b^{2p}, b^{2p+1}], [-b^{2p}, -b^{2p+1}]] mod relation
            Mult2 mp = multiplier(2 * p, lambda, b);
            double b2p = std::pow(b, 2 * p);
            CHECK(mp.m[0][0] == doctest::Approx(b2p).epsilon(1e-12));
            CHECK(mp.m[1][1] == doctest::Approx(-b2p * b).epsilon(1e-12));
        }
    }
    SUBCASE("symbolic and numeric agree") {
        AlgRoot root = find_b2p(3, 96);
        double b = root.b_double();
        for (int n : {2, 4, 6, 10}) {
            Mult2Sym ms = multiplier_sym(n, 0);
            Mult2 m = multiplier(n, (1.0 + b * b) / 2.0, b);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    CHECK(eval_double(ms.m[r][c], b) == doctest::Approx(m.m[r][c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel equations hold mod relation") {
    for (int p : {2, 3, 4}) CHECK(kernel_equations_hold(p));
}

TEST_CASE("det M_{2n}(lambda_{2p}) vanishes exactly iff n in {1, p}") {
    for (int p : {2, 3, 4}) {
        AlgRoot root = find_b2p(p, 256);
        for (int n = 1; n <= 50; ++n) {
            BRat d = det_sym(multiplier_sym(2 * n, 0), 0);
            bool zero = is_zero_mod_relation(d, p);
            if (n == 1 || n == p) {
                CHECK(zero);
            } else {
                CHECK_FALSE(zero);
                RatIv enclosure = eval_brat(d, root, 128);
                CHECK_FALSE(enclosure.contains_zero());
            }
        }
    }
}

TEST_CASE("dispersion relation") {
    SUBCASE("spec point values") {
        CHECK(dispersion(0, 1.0, 0.5) == doctest::Approx(0.0));
        CHECK(dispersion(1, 0.0, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("degenerate mode: Delta_{2p-1}(lambda_{2p}) = 0 exactly") {
        for (int p : {2, 3, 4}) {
            BRat delta = dispersion_at_lambda2p(2 * p - 1);
            CHECK(is_zero_mod_relation(delta, p));
            // reduction equals b^{4p} - (p(1-b^2)-1)^2 as plain polynomials
            BRat target = BRat::b_power(4 * p) -
                          BRat(BPoly::from_coeffs({rat(p - 1), rat(0), rat(-p)}), BPoly(rat(1))) *
                              BRat(BPoly::from_coeffs({rat(p - 1), rat(0), rat(-p)}), BPoly(rat(1)));
            CHECK(is_zero_mod_relation(delta - target, p));
            // always-degenerate two-fold mode
            CHECK(dispersion_at_lambda2p(1).is_zero());
        }
    }
    SUBCASE("index offset identity det M_{m+1} = b Delta_m") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> lam(-0.5, 1.5), bd(0.05, 0.95);
        for (int m = 0; m <= 8; ++m)
            for (int trial = 0; trial < 5; ++trial) {
                double lambda = lam(rng), b = bd(rng);
                CHECK(det(multiplier(m + 1, lambda, b)) ==
                      doctest::Approx(b * dispersion(m, lambda, b)).epsilon(1e-10));
            }
    }
    SUBCASE("nondegenerate modes have nonzero enclosure at lambda_{2p}") {
        for (int p : {2, 3}) {
            AlgRoot root = find_b2p(p, 256);
            for (int m = 2; m <= 20; ++m) {
                if (m == 2 * p - 1) continue;
                RatIv v = eval_brat(dispersion_at_lambda2p(m), root, 128);
                CHECK_FALSE(v.contains_zero());
            }
        }
    }
}

TEST_CASE("projection is an orthogonal blockwise projection") {
    SUBCASE("symbolic: projection of y1 and paper example") {
        // k = (2a(b^2+b^4), 2a(b^2+b^4)) e_2 has q1 = 0 (end of Prop JF2c)
        YElement k;
        CoefExpr c = CoefExpr::a_power(1, (BRat::b_power(2) + BRat::b_power(4)) * rat(2));
        k.add(1, 2, c);
        k.add(2, 2, c);
        ProjectionSym pr = project_scaled(k, 2);
        CHECK(pr.q1_scaled.is_zero());
        CHECK(pr.q2_scaled.is_zero());
        CHECK(pr.remainder.coeff(1, 2) == c);
    }
    SUBCASE("16 (1,0) e_4 projects to -16/sqrt2 along y2 at p=2") {
        YElement k;
        k.add(1, 4, CoefExpr::constant(BRat(rat(16))));
        ProjectionSym pr = project_scaled(k, 2);
        CHECK(pr.q2_scaled == CoefExpr::constant(BRat(rat(-16))));
        // scaled q2 = sqrt(2) q2 -> q2 = -16/sqrt(2) = -8 sqrt 2
        ProjectionNum prn = project_blocks({0.0, 0.0}, {16.0, 0.0});
        CHECK(prn.q2 == doctest::Approx(-8.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("numeric: Q^2 = Q and remainder orthogonal to the co-kernel") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::array<double, 2> B1{u(rng), u(rng)}, Bp{u(rng), u(rng)};
            ProjectionNum pr = project_blocks(B1, Bp);
            ProjectionNum pr2 = project_blocks(pr.remainder_block1, pr.remainder_blockp);
            CHECK(pr2.q1 == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(pr2.q2 == doctest::Approx(0.0).epsilon(1e-14));
            // Q applied twice reproduces q1, q2: Q^2 = Q blockwise
            std::array<double, 2> Q1{B1[0] - pr.remainder_block1[0], B1[1] - pr.remainder_block1[1]};
            std::array<double, 2> Qp{Bp[0] - pr.remainder_blockp[0], Bp[1] - pr.remainder_blockp[1]};
            ProjectionNum prq = project_blocks(Q1, Qp);
            CHECK(prq.q1 == doctest::Approx(pr.q1).epsilon(1e-13));
            CHECK(prq.q2 == doctest::Approx(pr.q2).epsilon(1e-13));
            // blockwise inner product <Qk, (Id-Q)k> = 0
            double ip = Q1[0] * pr.remainder_block1[0] + Q1[1] * pr.remainder_block1[1] +
                        Qp[0] * pr.remainder_blockp[0] + Qp[1] * pr.remainder_blockp[1];
            CHECK(ip == doctest::Approx(0.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("invert_linearization") {
    SUBCASE("paper value: k = -4 b^{-1} (1,1) e_2 gives h = 4 b^{-3} (1,0) w-bar") {
        for (int p : {2, 3}) {
            YElement k;
            CoefExpr c = CoefExpr::constant(BRat::b_power(-1) * rat(-4), p);
            k.add(1, 2, c);
            k.add(2, 2, c);
            XElem h = invert_linearization(k, p, p);
            CHECK(h.coeff(1, 1) == CoefExpr::constant(BRat::b_power(-3) * rat(4), p));
            CHECK(h.coeff(1, 2).is_zero());
            CHECK(h.blocks.size() == 1);
        }
    }
    SUBCASE("zero maps to zero") {
        CHECK(invert_linearization(YElement(), 2, 2).is_zero());
    }
    SUBCASE("paper value: -32 (1,0) e_4 block through M_4^{-1} (p >= 3)") {
        // alpha_hat_1 = -32(2b^3-b) / (b(b^2-1)^2(b^4+2b^2-1)),
        // alpha_hat_2 = -32 b^4  / (b(b^2-1)^2(b^4+2b^2-1))
        const int p = 3;
        YElement k;
        k.add(1, 4, CoefExpr::constant(BRat(rat(-32)), p));
        XElem h = invert_linearization(k, p, p);
        BRat den = BRat::b_power(1) *
                   (BRat::b_power(2) - BRat(rat(1))) * (BRat::b_power(2) - BRat(rat(1))) *
                   (BRat::b_power(4) + BRat::b_power(2) * rat(2) - BRat(rat(1)));
        BRat a1 = (BRat::b_power(3) * rat(2) - BRat::b_power(1)) * rat(-32) / den;
        BRat a2 = BRat::b_power(4) * rat(-32) / den;
        CHECK(h.coeff(2, 1) == CoefExpr::constant(a1, p));
        CHECK(h.coeff(2, 2) == CoefExpr::constant(a2, p));
        // the same block is singular at p=2 (it is the kernel frequency there):
        YElement k2;
        k2.add(1, 4, CoefExpr::constant(BRat(rat(-32)), 2));
        k2.add(2, 4, CoefExpr::constant(BRat(rat(-32)), 2));
        CHECK_THROWS_AS(invert_linearization(k2, 2, 2), std::invalid_argument);
    }
    SUBCASE("numeric inverse composes to identity") {
        for (int p : {2, 3, 4}) {
            AlgRoot root = find_b2p(p, 96);
            double b = root.b_double();
            double lambda2p = (1.0 + b * b) / 2.0;
            std::mt19937 rng(31 + p);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            std::vector<std::array<double, 2>> B(12);
            for (auto& blk : B) blk = {u(rng), u(rng)};
            // force the kernel-frequency blocks into the complement space
            B[0] = {B[0][0], B[0][0]};
            B[p - 1] = {B[p - 1][0], -B[p - 1][0]};
            auto A = invert_linearization_num(B, p, b);
            auto B2 = apply_linearization_num(A, lambda2p, b);
            for (size_t i = 0; i < B.size(); ++i) {
                CHECK(B2[i][0] == doctest::Approx(B[i][0]).epsilon(1e-12));
                CHECK(B2[i][1] == doctest::Approx(B[i][1]).epsilon(1e-12));
            }
        }
    }
    SUBCASE("symbolic inverse composes to identity on a generic block") {
        const int p = 2, n = 3;
        YElement k;
        k.add(1, 2 * n, CoefExpr::constant(BRat(rat(7)), p));
        k.add(2, 2 * n, CoefExpr::constant(BRat(rat(-5)), p));
        XElem h = invert_linearization(k, p, p);
        Mult2Sym M = multiplier_sym(2 * n, p);
        CoefExpr r0 = h.coeff(n, 1) * M.m[0][0] + h.coeff(n, 2) * M.m[0][1];
        CoefExpr r1 = h.coeff(n, 1) * M.m[1][0] + h.coeff(n, 2) * M.m[1][1];
        CHECK(r0 == CoefExpr::constant(BRat(rat(7)), p));
        CHECK(r1 == CoefExpr::constant(BRat(rat(-5)), p));
    }
}

TEST_CASE("kernel direction constructors") {
    XElem xa = kernel_xa(2, 0);
    CHECK(xa.coeff(1, 1) == CoefExpr::constant(BRat::b_power(1)));
    CHECK(xa.coeff(1, 2) == CoefExpr::constant(BRat(rat(1))));
    CHECK(xa.coeff(2, 1) == CoefExpr::a_power(1, BRat::b_power(1)));
    CHECK(xa.coeff(2, 2) == CoefExpr::a_power(1, BRat(rat(-1))));
    auto lp = xa.to_laurent();
    CHECK(lp[0].coeff(-3) == CoefExpr::a_power(1, BRat::b_power(1)));
}
