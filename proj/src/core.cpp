#include "uqsl3/core.hpp"

#include <cmath>

namespace uqsl3 {

Params::Params(cplx hbar_, std::array<int, 3> s_, cplx phi0, cplx phi1, int cutoff_,
               double tol_, int series_terms_)
    : hbar(hbar_), s_grad(s_), cutoff(cutoff_), tol(tol_), series_terms(series_terms_) {
    if (s_grad[0] < 0 || s_grad[1] < 0 || s_grad[2] < 0 || s() < 1)
        throw DomainError("Params: gradation integers must be non-negative with s >= 1");
    if (cutoff < 2) throw DomainError("Params: cutoff must be >= 2");
    if (!(tol > 0.0)) throw DomainError("Params: tol must be positive");
    if (series_terms < 1) throw DomainError("Params: series_terms must be >= 1");
    phi = {phi0, phi1, -phi0 - phi1};  // third component derived, sum is exactly zero
    if (std::abs(std::abs(q()) - 1.0) < 1e-12)
        throw DomainError("Params: |q| = 1 is outside the supported regime");
}

cplx Params::Phi(int i) const {
    switch (i) {
        case 1: return (phi[0] - phi[1]) / 3.0;
        case 2: return (phi[1] - phi[2]) / 3.0;
        case 3: return (phi[2] - phi[0]) / 3.0;
        default: throw DomainError("Params::Phi: index must be 1..3");
    }
}

std::optional<int> Params::root_of_unity_warning() const {
    cplx qm = 1.0;
    for (int m = 1; m <= 24; ++m) {
        qm *= q();
        if (std::abs(qm - 1.0) < 1e-6) return m;
    }
    return std::nullopt;
}

SpectralPoint spectral_shift(const SpectralPoint& p, cplx a, const Params& params) {
    return SpectralPoint(p.w + a * params.hbar / static_cast<double>(params.s()));
}

SpectralPoint spectral_shift_rs(const SpectralPoint& p, int k, const Params& params) {
    return SpectralPoint(p.w + cplx(0.0, k * kPi / params.s()));
}

cplx q_number(cplx nu, cplx q) {
    const cplx kq = q - 1.0 / q;
    if (std::abs(kq) < 1e-300) throw DomainError("q_number: q - q^{-1} underflows");
    return (std::pow(q, nu) - std::pow(q, -nu)) / kq;
}

F3Result f3_eval(cplx z, cplx q, int K) {
    if (K < 1) throw DomainError("f3_eval: K must be >= 1");
    const double az = std::abs(z);
    const double aq = std::abs(q);
    // The coefficients fall off like q^{2k} for |q| < 1, so the series
    // converges on |q^2 z| < 1, wider than the unit disk.
    const double y = aq < 1.0 ? aq * aq * az : az;
    if (!(az < 1.0) && !(y < 0.95))
        throw DomainError("f3_eval: argument outside the convergence domain");
    if (az == 0.0) return {cplx(0.0), 0.0};
    cplx sum = 0.0;
    cplx zk = 1.0;
    double boost = 1.0;  // max_k |c_k| / |q|^{2k}, measured on the head
    for (int k = 1; k <= K; ++k) {
        zk *= z;
        const cplx q2k = std::pow(q, 2 * k);
        const cplx ck = 1.0 / (q2k + 1.0 + 1.0 / q2k);
        sum += ck * zk / static_cast<double>(k);
        if (k <= 40 && aq < 1.0) boost = std::max(boost, std::abs(ck) / std::pow(aq, 2 * k));
    }
    // crude majorant: |c_k| <= 1 gives |z|^{K+1}/((K+1)(1-|z|)) inside the
    // unit disk; outside it, |c_k| <= boost * |q|^{2k} gives the analogue in
    // y = |q^2 z|. Use whichever applies (the smaller when both do).
    double tail = 1e300;
    if (az < 1.0) tail = std::pow(az, K + 1) / ((K + 1) * (1.0 - az));
    if (aq < 1.0 && y < 1.0)
        tail = std::min(tail, boost * std::pow(y, K + 1) / ((K + 1) * (1.0 - y)));
    return {sum, tail};
}

cplx b_eval(cplx z) {
    if (z == cplx(0.0)) throw DomainError("b_eval: z must be nonzero");
    return z - 1.0 / z;
}

}  // namespace uqsl3
