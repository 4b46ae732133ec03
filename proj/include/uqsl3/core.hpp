#ifndef UQSL3_CORE_HPP
#define UQSL3_CORE_HPP

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace uqsl3 {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global model data: q = exp(hbar), gradation integers s_i, twist phi_i with
// phi_0 + phi_1 + phi_2 = 0, Fock truncation and tolerances.
struct Params {
    cplx hbar;
    std::array<int, 3> s_grad{1, 1, 1};
    std::array<cplx, 3> phi{0.0, 0.0, 0.0};
    int cutoff = 14;
    double tol = 1e-7;
    int series_terms = 120;

    Params() = default;
    Params(cplx hbar_, std::array<int, 3> s_, cplx phi0, cplx phi1, int cutoff_,
           double tol_ = 1e-7, int series_terms_ = 120);

    cplx q() const { return std::exp(hbar); }
    cplx kappa_q() const { return q() - 1.0 / q(); }
    int s() const { return s_grad[0] + s_grad[1] + s_grad[2]; }
    // Fixed s-th root of -1, r_s = exp(i*pi/s).
    cplx r_s() const { return std::exp(cplx(0.0, kPi / s())); }

    // Phi_1 = (phi_0 - phi_1)/3, Phi_2 = (phi_1 - phi_2)/3, Phi_3 = (phi_2 - phi_0)/3.
    cplx Phi(int i) const;

    // Smallest m <= 24 with |q^m - 1| < 1e-6, if any. q near a root of unity
    // makes the q-number denominators and twist inverses ill-conditioned.
    std::optional<int> root_of_unity_warning() const;
};

// Logarithmic spectral parameter: zeta = exp(w). All fractional powers
// zeta^alpha are defined as exp(alpha*w), so branches are never ambiguous.
struct SpectralPoint {
    cplx w{0.0, 0.0};

    SpectralPoint() = default;
    explicit SpectralPoint(cplx w_) : w(w_) {}

    cplx zeta() const { return std::exp(w); }
    cplx pow(cplx alpha) const { return std::exp(alpha * w); }
    cplx pow(double alpha) const { return std::exp(alpha * w); }

    // zeta -> zeta * exp(u)
    SpectralPoint mul_log(cplx u) const { return SpectralPoint(w + u); }
};

// q^{a/s} zeta, i.e. w -> w + a*hbar/s. The shift amount a may be complex
// (weights enter the transfer-matrix arguments).
SpectralPoint spectral_shift(const SpectralPoint& p, cplx a, const Params& params);

// r_s^k zeta, i.e. w -> w + k*i*pi/s.
SpectralPoint spectral_shift_rs(const SpectralPoint& p, int k, const Params& params);

// [nu]_q = (q^nu - q^{-nu}) / (q - q^{-1})
cplx q_number(cplx nu, cplx q);

struct F3Result {
    cplx value;
    double tail;  // geometric tail bound sum_{k>K} |z|^k/k <= |z|^{K+1}/((K+1)(1-|z|))
};

// f3(z) = sum_{k>=1} z^k / (k (q^{2k} + 1 + q^{-2k})), partial sum to K terms.
// Requires |z| < 1.
F3Result f3_eval(cplx z, cplx q, int K);

// b(z) = z - 1/z
cplx b_eval(cplx z);

}  // namespace uqsl3

#endif
