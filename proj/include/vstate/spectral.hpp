#pragma once

#include <array>
#include <complex>
#include <vector>

#include "vstate/errors.hpp"

namespace vstate {

// Numerical evaluation of the full nonlinear functional G(lambda, f) for
// truncated Fourier boundary perturbations: trapezoid quadrature of the
// Cauchy integrals on an equispaced grid plus FFT projection onto sine
// modes. This module is the independent numeric oracle for everything the
// contour module computes exactly. All floating computation is 64-bit.

using cplx = std::complex<double>;

// Truncated two-fold boundary perturbation:
//   f_j(w) = sum_{n=1..N} A[j][n-1] w-bar^{2n-1},  j = 1 (outer), 2 (inner).
struct FourierState {
    int p = 2;
    int N = 0;
    std::array<std::vector<double>, 2> A;

    static FourierState zero(int p, int N);
    double& coeff(int component, int n) { return A[component - 1][n - 1]; }
    double coeff(int component, int n) const { return A[component - 1][n - 1]; }
};

FourierState operator+(const FourierState& x, const FourierState& y);
FourierState operator*(const FourierState& x, double c);

// Midpoint of a cached 96-bit certified bracket for b_{2p}.
double b2p_double(int p);

// Sampled boundary curves phi_j and derivatives phi_j' at w_k = exp(2 pi i k / M).
struct GridSample {
    int M = 0;
    double b = 0.0;
    std::array<std::vector<cplx>, 2> phi, dphi;
};

GridSample sample_boundary(const FourierState& state, int M);

// Minimum distance between distinct sampled points across both curves.
double curve_separation(const GridSample& sample);

// Trapezoid approximation of I_source(phi_target(w_k)) at every target grid
// point. For source == target the diagonal node takes the removable-
// singularity fill-in  -conj(phi'(w_k)) w_k^{-2}  for the kernel, i.e.
// summand  -conj(phi'(w_k)) conj(w_k)  once the measure factor tau is
// attached. Throws CurveDegenerate if the separation precondition fails.
std::vector<cplx> eval_cauchy(const GridSample& sample, int source, int target);

// Limit value of the self-interaction kernel times phi' as xi -> w; exposed
// so tests can confront it with a one-sided numeric limit.
cplx diagonal_fill_in(const GridSample& sample, int component, int k);

// Real sine coefficients of both components: G_j = sum_n B[j][n-1] e_n with
// e_n = Im(w-bar^n), n = 1..M/2.
struct YCoeffs {
    int M = 0;
    std::array<std::vector<double>, 2> B;

    double coeff(int component, int n) const { return B[component - 1][n - 1]; }
    double max_abs() const;
    // Block view at even frequencies: pairs (B_{2n}^1, B_{2n}^2), n = 1..count.
    std::vector<std::array<double, 2>> even_blocks(int count) const;
};

// G_j(lambda, f)(w) = Im{ [(1-lambda) conj(phi_j) + I(phi_j)] w phi_j'(w) },
// projected onto sine modes; spectrally accurate in M for analytic states.
YCoeffs eval_G(double lambda, const FourierState& state, int M);

// Residual diagnostics of the sine projection: largest cosine-mode and mean
// amplitude (must sit at round-off for states in the symmetry class).
double cosine_residual(double lambda, const FourierState& state, int M);

// Central finite difference (G(state + h dir) - G(state - h dir)) / (2h),
// O(h^2) accurate; richardson combines h and h/2 into an O(h^4) estimate.
YCoeffs jacobian_action(double lambda, const FourierState& state, const FourierState& direction,
                        int M, double h, bool richardson = false);

// Sampled boundary point list for rendering: {component, theta, x, y}.
struct BoundaryPoint {
    int component;
    double theta, x, y;
};
std::vector<BoundaryPoint> boundary_points(const FourierState& state, int M);

}  // namespace vstate
