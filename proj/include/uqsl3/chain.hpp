#ifndef UQSL3_CHAIN_HPP
#define UQSL3_CHAIN_HPP

#include <functional>
#include <vector>

#include "uqsl3/lops.hpp"

namespace uqsl3 {

// Dense operator on (C^3)^{x n}; site 1 is the leftmost Kronecker factor.
struct ChainOp {
    int n = 0;
    Mat data;
    double cert = 0.0;  // accumulated trace-fit certificate (relative)

    ChainOp() = default;
    ChainOp(int n_, Mat m, double cert_ = 0.0) : n(n_), data(std::move(m)), cert(cert_) {}
    long dim() const { return data.rows(); }
};

long chain_dim(int n);

// Relative Frobenius distance, scaled by the larger operand.
double rel_distance(const Mat& a, const Mat& b);
double rel_norm(const Mat& a);

// Diagonal chain images of the shifted Cartan generators h'_i = h_i + phi_i
// and the derived D_i, C_i, C = C_1 C_2 C_3 fields.
struct CartanField {
    int n = 0;
    std::array<Eigen::VectorXd, 3> h_diag;  // integer diagonals of h_0, h_1, h_2
    std::array<cplx, 3> phi;
    cplx hbar;
    int s = 1;

    // exp(u * D_i) with D_i = (h'_j - h'_k) s/6, (i,j,k) cyclic; u = any log base
    Vec exp_D(int i, cplx u) const;
    Vec q_pow_D(int i, cplx a) const;      // q^{a D_i / s}
    Vec zeta_pow_D(int i, const SpectralPoint& z, double sign) const;  // zeta^{+- D_i}
    Vec C_i(int i) const;                  // q^{-D_i/s} (q^{2D_j/s} - q^{2D_k/s})^{-1}
    Vec C_total() const;                   // C_1 C_2 C_3
    Vec C_total_inv() const;
    double min_C_denominator() const;      // degeneracy diagnostic
};

CartanField cartan_field(int n, const Params& params);

// Boxtimes product on quantum-space indices, entries multiplying in the
// oscillator algebra: (A (x) B)_{(ik),(jl)} = A_{ij} B_{kl}, in this order.
// Represented as a flat vector of 3^n x 3^n oscillator entries.
struct BoxProduct {
    int n = 0;
    int D = 0;
    std::vector<Mat> entry;  // index (row * 3^n + col); empty = zero
    Mat& at(long r, long c) { return entry[r * chain_dim(n) + c]; }
    const Mat& at(long r, long c) const { return entry[r * chain_dim(n) + c]; }
};

BoxProduct boxtimes(const BoxProduct& a, const OpMatrix& b);
BoxProduct box_from_opmatrix(const OpMatrix& a);

// Q-operator ingredients: the traced core (with the zeta^{+-D_i} dressing,
// without the scalar zeta^{s Phi_i/2} and e^{f3} prefactors, which are kept
// as a log) and the fit certificate.
struct QParts {
    Mat core;                 // 3^n x 3^n resummed-trace matrix
    cplx log_prefactor = 0.0; // site f3 prefactors, summed
    double cert = 0.0;
    int n = 0;
};

QParts q_parts(int i, bool barred, const SpectralPoint& zeta,
               const std::vector<SpectralPoint>& eta, const Params& params);

// Full Q-operators per the trace formulas (scalar prefactors multiplied in).
ChainOp q_operator(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                   const Params& params);
ChainOp qbar_operator(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                      const Params& params);

// Polynomial parts: Q^p = zeta^{-n s/6} core, Qbar^p = zeta^{-n s/3} core.
ChainOp q_operator_poly(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                        const Params& params);
ChainOp qbar_operator_poly(int i, const SpectralPoint& zeta,
                           const std::vector<SpectralPoint>& eta, const Params& params);

// Undressed Q' (trace of the plain L-product with the twist): depends on the
// spectral parameters only through the ratios zeta/eta_k.
ChainOp q_prime_operator(int i, bool barred, const SpectralPoint& zeta,
                         const std::vector<SpectralPoint>& eta, const Params& params);

// Laurent-polynomial certification in x = zeta^{s/2} by Fourier inversion on
// a circle |x| = radius_x. The window is grown until the outside-window mass
// certifies below tol or the cap is reached.
struct PolyCert {
    bool certified = false;
    int window = 0;            // coefficients supported in [-window, window]
    double fit_residual = 0.0; // relative outside-window mass
    std::vector<Mat> coeffs;   // index 0 <-> power -window
};

PolyCert certify_laurent(const std::function<Mat(const SpectralPoint&)>& f, double radius_x,
                         int start_window, int max_window, double tol, const Params& params);

// One-site weight vector (h_1, h_2 eigenvalues) per chain basis index; Q- and
// T-operators preserve these weights.
std::vector<std::pair<int, int>> chain_weights(int n);

// Frobenius mass of the weight-off-block part relative to the total.
double off_block_mass(const Mat& m, int n);

// n-fold Kronecker power of a 3x3 matrix.
Mat kron_power(const Mat& m, int n);

}  // namespace uqsl3

#endif
