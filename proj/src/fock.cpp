#include "uqsl3/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uqsl3 {

OscOp::OscOp(std::vector<int> dims_, Mat data_) : dims(std::move(dims_)), data(std::move(data_)) {
    long prod = 1;
    for (int d : dims) prod *= d;
    if (prod != data.rows() || prod != data.cols())
        throw DomainError("OscOp: matrix size does not match factor dimensions");
}

OscOp OscOp::identity(const std::vector<int>& dims) {
    long prod = 1;
    for (int d : dims) prod *= d;
    return OscOp(dims, Mat::Identity(prod, prod));
}

static void check_dims(const OscOp& a, const OscOp& b) {
    if (a.dims != b.dims) throw DomainError("OscOp: factor dimension mismatch");
}

OscOp operator*(const OscOp& a, const OscOp& b) {
    check_dims(a, b);
    return OscOp(a.dims, a.data * b.data);
}
OscOp operator+(const OscOp& a, const OscOp& b) {
    check_dims(a, b);
    return OscOp(a.dims, a.data + b.data);
}
OscOp operator-(const OscOp& a, const OscOp& b) {
    check_dims(a, b);
    return OscOp(a.dims, a.data - b.data);
}
OscOp operator*(cplx c, const OscOp& a) { return OscOp(a.dims, c * a.data); }

OscTriple chi_plus_ops(int D, cplx nu, cplx q) {
    if (D < 2) throw DomainError("chi_plus_ops: D must be >= 2");
    Mat b = Mat::Zero(D, D), bdag = Mat::Zero(D, D), qN = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) {
        qN(n, n) = std::pow(q, nu * static_cast<double>(n));
        if (n + 1 < D) {
            bdag(n + 1, n) = 1.0;                       // b^dag v_n = v_{n+1}
            b(n, n + 1) = q_number(n + 1, q);           // b v_{n+1} = [n+1]_q v_n
        }
    }
    return {b, bdag, qN};
}

OscTriple chi_minus_ops(int D, cplx nu, cplx q) {
    if (D < 2) throw DomainError("chi_minus_ops: D must be >= 2");
    Mat b = Mat::Zero(D, D), bdag = Mat::Zero(D, D), qN = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) {
        qN(n, n) = std::pow(q, -nu * static_cast<double>(n + 1));
        if (n + 1 < D) {
            b(n + 1, n) = 1.0;                          // b v_n = v_{n+1}
            bdag(n, n + 1) = -q_number(n + 1, q);       // b^dag v_{n+1} = -[n+1]_q v_n
        }
    }
    return {b, bdag, qN};
}

Mat q_weight_two_factor(int D, cplx nu1, cplx nu2, cplx q) {
    Mat m = Mat::Zero(D * D, D * D);
    for (int n1 = 0; n1 < D; ++n1)
        for (int n2 = 0; n2 < D; ++n2)
            m(n1 * D + n2, n1 * D + n2) =
                std::pow(q, nu1 * static_cast<double>(n1) + nu2 * static_cast<double>(n2));
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

OscOp embed(const std::vector<Mat>& factor_ops, const std::vector<int>& dims) {
    if (factor_ops.size() != dims.size())
        throw DomainError("embed: one operator (or empty identity) per factor required");
    Mat acc = Mat::Identity(1, 1);
    for (size_t k = 0; k < dims.size(); ++k) {
        Mat f = factor_ops[k].size() == 0
                    ? Mat(Mat::Identity(dims[k], dims[k]))
                    : factor_ops[k];
        if (f.rows() != dims[k] || f.cols() != dims[k])
            throw DomainError("embed: factor operator size mismatch");
        acc = kron(acc, f);
    }
    return OscOp(dims, acc);
}

TraceResult trace_regularized(const Mat& a) {
    const long n = a.rows();
    cplx value = 0.0;
    double last = 0.0, prev = 0.0;
    for (long i = 0; i < n; ++i) {
        value += a(i, i);
        prev = last;
        last = std::abs(a(i, i));
    }
    if (last == 0.0) return {value, 0.0};
    const double r = prev > 0.0 ? last / prev : 1.0;
    if (!(r < 1.0))
        throw DomainError("trace_regularized: diagonal does not decay (invalid twist regime)");
    return {value, last * r / (1.0 - r)};
}

TraceResult trace_regularized(const OscOp& a) { return trace_regularized(a.data); }

ExpFit fit_exponential_sum(const Mat& Y, const std::vector<cplx>& nodes) {
    const long R = Y.rows();
    const long K = static_cast<long>(nodes.size());
    Mat V(R, K);
    Eigen::VectorXd scale(K);
    for (long k = 0; k < K; ++k) {
        cplx p = 1.0;
        for (long r = 0; r < R; ++r) {
            V(r, k) = p;
            p *= nodes[k];
        }
        scale(k) = V.col(k).norm();
        if (scale(k) == 0.0) scale(k) = 1.0;
        V.col(k) /= scale(k);
    }
    const double ynorm = Y.norm();
    Mat coeffs = Mat::Zero(K, Y.cols());
    if (ynorm == 0.0) return {coeffs, 0.0};

    // Greedy node selection (orthogonal matching pursuit): after each pick a
    // full least-squares solve on the support. The support cap keeps the
    // Vandermonde system overdetermined.
    const long max_support = std::min<long>(K, std::max<long>(1, R - 2));
    std::vector<long> support;
    std::vector<bool> used(K, false);
    Mat resid = Y;
    Mat cs;
    double best = ynorm;
    while (static_cast<long>(support.size()) < max_support) {
        long pick = -1;
        double pickval = 0.0;
        for (long k = 0; k < K; ++k) {
            if (used[k]) continue;
            const double v = (V.col(k).adjoint() * resid).norm();
            if (v > pickval) {
                pickval = v;
                pick = k;
            }
        }
        if (pick < 0) break;
        used[pick] = true;
        support.push_back(pick);
        Mat Vs(R, static_cast<long>(support.size()));
        for (size_t j = 0; j < support.size(); ++j) Vs.col(j) = V.col(support[j]);
        cs = Vs.colPivHouseholderQr().solve(Y);
        resid = Y - Vs * cs;
        best = resid.norm();
        if (best < 1e-13 * ynorm) break;
    }
    for (size_t j = 0; j < support.size(); ++j)
        coeffs.row(support[j]) = cs.row(j).array() / scale(support[j]);
    return {coeffs, best / ynorm};
}

ResummedTrace trace_resummed(const Vec& diag, int D, const LatticeSpec& lattice, cplx q) {
    ResummedTrace out;
    const int R = D - lattice.margin;
    if (R < 3) throw DomainError("trace_resummed: cutoff too small for the requested margin");

    Mat Y(R, R);
    for (int n1 = 0; n1 < R; ++n1)
        for (int n2 = 0; n2 < R; ++n2) Y(n1, n2) = diag(n1 * D + n2);
    if (Y.norm() == 0.0) return out;

    std::vector<cplx> unodes, vnodes;
    for (int m = -lattice.win_lo; m <= lattice.win_hi; ++m) {
        unodes.push_back(std::pow(q, lattice.nu1 + static_cast<double>(m)));
        vnodes.push_back(std::pow(q, lattice.nu2 + static_cast<double>(m)));
    }

    // Separable fit: first along n1 (columns share u-nodes), then along n2.
    ExpFit f1 = fit_exponential_sum(Y, unodes);          // (Ku x R)
    ExpFit f2 = fit_exponential_sum(f1.coeffs.transpose(), vnodes);  // (Kv x Ku)
    const Mat& C = f2.coeffs;  // C(b, a): coefficient of u_a^{n1} v_b^{n2}

    const double yscale = Y.cwiseAbs().maxCoeff();
    double amp_num = 0.0;
    for (long b = 0; b < C.rows(); ++b) {
        for (long a = 0; a < C.cols(); ++a) {
            const cplx c = C(b, a);
            if (std::abs(c) < 1e-13 * yscale) continue;
            const cplx du = 1.0 - unodes[a];
            const cplx dv = 1.0 - vnodes[b];
            if (std::abs(du) < 1e-8 || std::abs(dv) < 1e-8) {
                out.degenerate = true;
                out.note = "lattice node at q^nu = 1 carries weight (degenerate twist)";
                return out;
            }
            const cplx term = c / (du * dv);
            out.value += term;
            amp_num += std::abs(term);
        }
    }
    const double fit_res = std::max(f1.rel_residual, f2.rel_residual);
    const double amp = amp_num / std::max(std::abs(out.value), 1e-300);
    out.certificate = fit_res * std::max(1.0, amp);
    return out;
}

}  // namespace uqsl3
