#ifndef UQSL3_FOCK_HPP
#define UQSL3_FOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "uqsl3/core.hpp"

namespace uqsl3 {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Linear operator on a k-fold truncated Fock space. Factor order is fixed
// left-to-right; the matrix dimension is the product of the factor sizes.
struct OscOp {
    std::vector<int> dims;
    Mat data;

    OscOp() = default;
    OscOp(std::vector<int> dims_, Mat data_);

    int dim() const { return static_cast<int>(data.rows()); }
    static OscOp identity(const std::vector<int>& dims);
};

OscOp operator*(const OscOp& a, const OscOp& b);
OscOp operator+(const OscOp& a, const OscOp& b);
OscOp operator-(const OscOp& a, const OscOp& b);
OscOp operator*(cplx c, const OscOp& a);

struct OscTriple {
    Mat b;
    Mat bdag;
    Mat qN;  // q^{nu N}
};

// chi^+ on the lowest D states: b^dag v_n = v_{n+1}, b v_n = [n]_q v_{n-1},
// q^{nu N} v_n = q^{nu n} v_n.
OscTriple chi_plus_ops(int D, cplx nu, cplx q);

// chi^- on the lowest D states: b v_n = v_{n+1}, b^dag v_n = -[n]_q v_{n-1},
// q^{nu N} v_n = q^{-nu(n+1)} v_n.
OscTriple chi_minus_ops(int D, cplx nu, cplx q);

// Diagonal q^{nu1 N_1 + nu2 N_2} on a two-factor chi^+ space.
Mat q_weight_two_factor(int D, cplx nu1, cplx nu2, cplx q);

// Kronecker product of per-factor operators in fixed factor order.
// An empty matrix entry stands for the identity on that factor.
OscOp embed(const std::vector<Mat>& factor_ops, const std::vector<int>& dims);

Mat kron(const Mat& a, const Mat& b);

struct TraceResult {
    cplx value;
    double tail;
};

// Plain truncated trace plus a geometric tail estimate from the measured
// decay ratio of the diagonal. Signals divergence when the diagonal does
// not decay (invalid twist regime).
TraceResult trace_regularized(const OscOp& a);
TraceResult trace_regularized(const Mat& a);

// --- Resummed traces on an exponential lattice -------------------------------
//
// The infinite-volume traces behind the Q-operators are analytic
// continuations of geometric series: for |q| < 1 the series for some matrix
// entries always diverges, whatever the twist (the exponents nu and -nu
// cannot both give |q^{nu-1}| < 1). The truncated diagonal of any product of
// L-operator entries and the twist is, however, an exact exponential sum
//    d(n1, n2) = sum_{a,b} c_{ab} u_a^{n1} v_b^{n2},
// with nodes on the known lattice u_a = q^{nu1 + a}, v_b = q^{nu2 + b},
// a, b integers in a bounded window. Fitting the interior diagonal on that
// lattice and resumming sum c_{ab} (1-u_a)^{-1} (1-v_b)^{-1} evaluates the
// continued trace with a computable fit certificate.

struct ResummedTrace {
    cplx value = 0.0;
    double certificate = 0.0;  // relative fit residual, amplification folded in
    bool degenerate = false;   // a lattice node hit q^nu = 1 with nonzero weight
    std::string note;
};

struct LatticeSpec {
    cplx nu1;     // twist exponent of N_1 (value part of q^{nu1 N_1 + ...})
    cplx nu2;     // twist exponent of N_2
    int win_lo;   // integer lattice window: nodes q^{nu + m}, m in [-win_lo, win_hi]
    int win_hi;
    int margin;   // top diagonal rows per factor corrupted by truncation
};

// diag is the (D*D)-vector of the operator diagonal in (n1, n2) ordering with
// n1 the slower index (factor order of embed()).
ResummedTrace trace_resummed(const Vec& diag, int D, const LatticeSpec& lattice, cplx q);

// Fit y[r] (columns of Y, shared nodes) as sum_j coeff_j z_j^r by greedy
// least squares over the candidate nodes. Returns the dense coefficient
// matrix (nodes x rhs) and the relative residual.
struct ExpFit {
    Mat coeffs;
    double rel_residual;
};
ExpFit fit_exponential_sum(const Mat& Y, const std::vector<cplx>& nodes);

}  // namespace uqsl3

#endif
