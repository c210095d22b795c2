#include "vstate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "vstate/exactnum.hpp"

namespace vstate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// Iterative radix-2 FFT, forward sign convention F_m = sum_k x_k e^{-2pi i km/M}.
void fft_inplace(std::vector<cplx>& x) {
    const size_t n = x.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -kTwoPi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = x[i + k];
                cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

FourierState FourierState::zero(int p, int N) {
    FourierState s;
    s.p = p;
    s.N = N;
    s.A[0].assign(N, 0.0);
    s.A[1].assign(N, 0.0);
    return s;
}

FourierState operator+(const FourierState& x, const FourierState& y) {
    if (x.p != y.p) throw std::invalid_argument("FourierState: mismatched p");
    FourierState out = FourierState::zero(x.p, std::max(x.N, y.N));
    for (int j = 0; j < 2; ++j) {
        for (int n = 0; n < x.N; ++n) out.A[j][n] += x.A[j][n];
        for (int n = 0; n < y.N; ++n) out.A[j][n] += y.A[j][n];
    }
    return out;
}

FourierState operator*(const FourierState& x, double c) {
    FourierState out = x;
    for (int j = 0; j < 2; ++j)
        for (auto& v : out.A[j]) v *= c;
    return out;
}

double b2p_double(int p) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    double b = find_b2p(p, 96).b_double();
    cache[p] = b;
    return b;
}

GridSample sample_boundary(const FourierState& state, int M) {
    if (!is_power_of_two(M)) throw std::invalid_argument("grid size must be a power of two");
    if (M < 8 * std::max(1, state.N)) throw std::invalid_argument("grid size must satisfy M >= 8N");
    GridSample g;
    g.M = M;
    g.b = b2p_double(state.p);
    const double radius[2] = {1.0, g.b};
    for (int j = 0; j < 2; ++j) {
        g.phi[j].resize(M);
        g.dphi[j].resize(M);
        for (int k = 0; k < M; ++k) {
            const double theta = kTwoPi * k / M;
            const cplx w(std::cos(theta), std::sin(theta));
            const cplx wbar = std::conj(w);
            cplx phi = radius[j] * w;
            cplx dphi = radius[j];
            cplx wb_pow = wbar;  // wbar^{2n-1}, starts at n=1
            for (int n = 1; n <= state.N; ++n) {
                const double a = state.A[j][n - 1];
                phi += a * wb_pow;
                dphi -= a * static_cast<double>(2 * n - 1) * wb_pow * wbar;
                wb_pow *= wbar * wbar;
            }
            g.phi[j][k] = phi;
            g.dphi[j][k] = dphi;
        }
    }
    return g;
}

double curve_separation(const GridSample& sample) {
    double best = 1e300;
    const int M = sample.M;
    // cross-curve distances
    for (int k = 0; k < M; ++k)
        for (int m = 0; m < M; ++m) best = std::min(best, std::abs(sample.phi[0][k] - sample.phi[1][m]));
    // same-curve distances, distinct nodes
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < M; ++k)
            for (int m = k + 1; m < M; ++m)
                best = std::min(best, std::abs(sample.phi[j][k] - sample.phi[j][m]));
    return best;
}

cplx diagonal_fill_in(const GridSample& sample, int component, int k) {
    const double theta = kTwoPi * k / sample.M;
    const cplx w(std::cos(theta), std::sin(theta));
    const cplx wbar = std::conj(w);
    return -std::conj(sample.dphi[component - 1][k]) * wbar * wbar;
}

std::vector<cplx> eval_cauchy(const GridSample& sample, int source, int target) {
    if (source < 1 || source > 2 || target < 1 || target > 2)
        throw std::invalid_argument("eval_cauchy: source/target must be 1 or 2");
    if (curve_separation(sample) <= 1e-8)
        throw CurveDegenerate("sampled boundary points closer than 1e-8");
    const int M = sample.M;
    const int i = source - 1, j = target - 1;
    const auto& phi_s = sample.phi[i];
    const auto& dphi_s = sample.dphi[i];
    const auto& phi_t = sample.phi[j];

    std::vector<cplx> out(M);
    for (int k = 0; k < M; ++k) {
        const cplx z = phi_t[k];
        const cplx zb = std::conj(z);
        cplx acc = 0.0;
        for (int m = 0; m < M; ++m) {
            if (source == target && m == k) {
                const double theta = kTwoPi * k / M;
                const cplx w(std::cos(theta), std::sin(theta));
                acc += diagonal_fill_in(sample, target, k) * w;
                continue;
            }
            const double theta = kTwoPi * m / M;
            const cplx tau(std::cos(theta), std::sin(theta));
            acc += (zb - std::conj(phi_s[m])) / (z - phi_s[m]) * dphi_s[m] * tau;
        }
        out[k] = acc / static_cast<double>(M);
    }
    return out;
}

double YCoeffs::max_abs() const {
    double best = 0.0;
    for (const auto& comp : B)
        for (double v : comp) best = std::max(best, std::abs(v));
    return best;
}

std::vector<std::array<double, 2>> YCoeffs::even_blocks(int count) const {
    std::vector<std::array<double, 2>> out(count, {0.0, 0.0});
    for (int n = 1; n <= count; ++n) {
        if (2 * n <= static_cast<int>(B[0].size())) out[n - 1] = {B[0][2 * n - 1], B[1][2 * n - 1]};
    }
    return out;
}

namespace {

YCoeffs project_sine(const std::array<std::vector<double>, 2>& values, int M) {
    YCoeffs out;
    out.M = M;
    for (int j = 0; j < 2; ++j) {
        std::vector<cplx> buf(values[j].begin(), values[j].end());
        fft_inplace(buf);
        out.B[j].resize(M / 2);
        for (int n = 1; n <= M / 2; ++n) out.B[j][n - 1] = 2.0 / M * buf[n].imag();
    }
    return out;
}

std::array<std::vector<double>, 2> g_values(double lambda, const GridSample& g) {
    const int M = g.M;
    std::array<std::vector<double>, 2> values;
    for (int j = 1; j <= 2; ++j) {
        std::vector<cplx> I1 = eval_cauchy(g, 1, j);
        std::vector<cplx> I2 = eval_cauchy(g, 2, j);
        values[j - 1].resize(M);
        for (int k = 0; k < M; ++k) {
            const double theta = kTwoPi * k / M;
            const cplx w(std::cos(theta), std::sin(theta));
            const cplx bracket = (1.0 - lambda) * std::conj(g.phi[j - 1][k]) + (I1[k] - I2[k]);
            values[j - 1][k] = (bracket * w * g.dphi[j - 1][k]).imag();
        }
    }
    return values;
}

}  // namespace

YCoeffs eval_G(double lambda, const FourierState& state, int M) {
    GridSample g = sample_boundary(state, M);
    return project_sine(g_values(lambda, g), M);
}

double cosine_residual(double lambda, const FourierState& state, int M) {
    GridSample g = sample_boundary(state, M);
    auto values = g_values(lambda, g);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
        std::vector<cplx> buf(values[j].begin(), values[j].end());
        fft_inplace(buf);
        worst = std::max(worst, std::abs(buf[0].real()) / M);
        for (int n = 1; n <= M / 2; ++n) worst = std::max(worst, std::abs(buf[n].real()) * 2.0 / M);
    }
    return worst;
}

YCoeffs jacobian_action(double lambda, const FourierState& state, const FourierState& direction,
                        int M, double h, bool richardson) {
    if (h < 1e-7 || h > 1e-3) throw std::invalid_argument("jacobian_action: h outside [1e-7, 1e-3]");
    auto central = [&](double step) {
        YCoeffs plus = eval_G(lambda, state + direction * step, M);
        YCoeffs minus = eval_G(lambda, state + direction * (-step), M);
        YCoeffs out = plus;
        for (int j = 0; j < 2; ++j)
            for (size_t n = 0; n < out.B[j].size(); ++n)
                out.B[j][n] = (plus.B[j][n] - minus.B[j][n]) / (2.0 * step);
        return out;
    };
    YCoeffs coarse = central(h);
    if (!richardson) return coarse;
    YCoeffs fine = central(h / 2.0);
    for (int j = 0; j < 2; ++j)
        for (size_t n = 0; n < coarse.B[j].size(); ++n)
            fine.B[j][n] = (4.0 * fine.B[j][n] - coarse.B[j][n]) / 3.0;
    return fine;
}

std::vector<BoundaryPoint> boundary_points(const FourierState& state, int M) {
    GridSample g = sample_boundary(state, M);
    std::vector<BoundaryPoint> pts;
    pts.reserve(2 * M);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < M; ++k) {
            BoundaryPoint pt;
            pt.component = j + 1;
            pt.theta = kTwoPi * k / M;
            pt.x = g.phi[j][k].real();
            pt.y = g.phi[j][k].imag();
            pts.push_back(pt);
        }
    return pts;
}

}  // namespace vstate
