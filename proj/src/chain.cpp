#include "uqsl3/chain.hpp"

#include <cmath>

namespace uqsl3 {

long chain_dim(int n) {
    long d = 1;
    for (int k = 0; k < n; ++k) d *= 3;
    return d;
}

double rel_norm(const Mat& a) { return a.norm(); }

double rel_distance(const Mat& a, const Mat& b) {
    const double den = std::max({a.norm(), b.norm(), 1e-300});
    return (a - b).norm() / den;
}

Vec CartanField::exp_D(int i, cplx u) const {
    const int j = i % 3;  // i is 1-based: D_1 ~ h'_0 - h'_1, D_2 ~ h'_1 - h'_2, D_3 ~ h'_2 - h'_0
    const long dim = h_diag[0].size();
    Vec out(dim);
    for (long r = 0; r < dim; ++r) {
        const cplx hp = (h_diag[i - 1](r) + phi[i - 1]) - (h_diag[j](r) + phi[j]);
        out(r) = std::exp(u * hp * static_cast<double>(s) / 6.0);
    }
    return out;
}

Vec CartanField::q_pow_D(int i, cplx a) const { return exp_D(i, a * hbar / static_cast<double>(s)); }

Vec CartanField::zeta_pow_D(int i, const SpectralPoint& z, double sign) const {
    return exp_D(i, sign * z.w);
}

Vec CartanField::C_i(int i) const {
    const int j = i % 3 + 1, k = (i + 1) % 3 + 1;  // cyclic (i, j, k)
    Vec qm = q_pow_D(i, -1.0);
    Vec dj = q_pow_D(j, 2.0), dk = q_pow_D(k, 2.0);
    Vec out(qm.size());
    for (long r = 0; r < qm.size(); ++r) {
        const cplx den = dj(r) - dk(r);
        if (std::abs(den) < 1e-12)
            throw DomainError("CartanField: C_" + std::to_string(i) +
                              " singular at diagonal slot " + std::to_string(r) +
                              " (degenerate twist)");
        out(r) = qm(r) / den;
    }
    return out;
}

Vec CartanField::C_total() const {
    Vec c = C_i(1).cwiseProduct(C_i(2)).cwiseProduct(C_i(3));
    return c;
}

Vec CartanField::C_total_inv() const {
    Vec c = C_total();
    return c.cwiseInverse();
}

double CartanField::min_C_denominator() const {
    double m = 1e300;
    for (int i = 1; i <= 3; ++i) {
        const int j = i % 3 + 1, k = (i + 1) % 3 + 1;
        Vec dj = q_pow_D(j, 2.0), dk = q_pow_D(k, 2.0);
        for (long r = 0; r < dj.size(); ++r) m = std::min(m, std::abs(dj(r) - dk(r)));
    }
    return m;
}

CartanField cartan_field(int n, const Params& params) {
    if (n < 1) throw DomainError("cartan_field: n must be >= 1");
    CartanField f;
    f.n = n;
    f.phi = params.phi;
    f.hbar = params.hbar;
    f.s = params.s();
    const long dim = chain_dim(n);
    // one-site diagonals of h_0, h_1, h_2 in phi^{(1,0,0)}
    static const int site[3][3] = {{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}};
    for (int g = 0; g < 3; ++g) {
        f.h_diag[g] = Eigen::VectorXd::Zero(dim);
        for (long r = 0; r < dim; ++r) {
            long rem = r;
            int sum = 0;
            for (int k_site = n - 1; k_site >= 0; --k_site) {
                sum += site[g][rem % 3];
                rem /= 3;
            }
            f.h_diag[g](r) = sum;
        }
    }
    return f;
}

BoxProduct box_from_opmatrix(const OpMatrix& a) {
    BoxProduct p;
    p.n = 1;
    p.D = a.D;
    p.entry.assign(9, Mat());
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) p.entry[j * 3 + l] = a.entry[j][l];
    return p;
}

BoxProduct boxtimes(const BoxProduct& a, const OpMatrix& b) {
    if (a.D != b.D) throw DomainError("boxtimes: oscillator cutoff mismatch");
    BoxProduct p;
    p.n = a.n + 1;
    p.D = a.D;
    const long da = chain_dim(a.n), dp = chain_dim(p.n);
    p.entry.assign(dp * dp, Mat());
    for (long r = 0; r < da; ++r)
        for (long c = 0; c < da; ++c) {
            const Mat& ae = a.at(r, c);
            if (ae.size() == 0) continue;
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    const Mat& be = b.entry[j][l];
                    if (be.size() == 0) continue;
                    p.entry[(r * 3 + j) * dp + (c * 3 + l)] = ae * be;
                }
        }
    return p;
}

namespace {

// Net Fock-shift table of the L-operator entries, used to skip traceless
// chain entries before any matrix product is formed. Entry (j,l) of both L
// and Lbar carries a definite (dN1, dN2).
struct ShiftTable {
    std::array<std::array<std::array<int, 2>, 3>, 3> d;
    bool known[3][3];
};

ShiftTable shift_table(const OpMatrix& L) {
    ShiftTable t{};
    const int D = L.D;
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            t.known[j][l] = false;
            const Mat& m = L.entry[j][l];
            if (m.size() == 0) continue;
            // find one nonzero element and read off the shift
            for (long r = 0; r < m.rows() && !t.known[j][l]; ++r)
                for (long c = 0; c < m.cols(); ++c)
                    if (std::abs(m(r, c)) > 1e-14) {
                        t.d[j][l] = {static_cast<int>(r / D - c / D),
                                     static_cast<int>(r % D - c % D)};
                        t.known[j][l] = true;
                        break;
                    }
        }
    return t;
}

}  // namespace

QParts q_parts(int i, bool barred, const SpectralPoint& zeta,
               const std::vector<SpectralPoint>& eta, const Params& params) {
    const int n = static_cast<int>(eta.size());
    if (n < 1) throw DomainError("q_parts: at least one site required");
    const int D = params.cutoff;
    const cplx q = params.q();
    const long dim = chain_dim(n);

    // site arguments: zeta/eta_k, with the extra r_s for the barred family
    std::vector<OpMatrix> Ls;
    std::vector<ShiftTable> shifts;
    cplx log_pref = 0.0;
    for (int k = 0; k < n; ++k) {
        SpectralPoint arg(zeta.w - eta[k].w);
        if (barred) arg = spectral_shift_rs(arg, 1, params);
        OpMatrix L = build_L(i, barred, arg, params);
        log_pref += L.log_prefactor;
        // zeta^{+-D_i} row dressing, (zd L)_{jl} = zd_j L_{jl}; the argument is
        // the Q's own zeta, not the site ratio.
        const Mat zd = zeta_D_matrix(i, zeta, barred, params);
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                if (L.entry[j][l].size() != 0) L.entry[j][l] *= zd(j, j);
        shifts.push_back(shift_table(L));
        Ls.push_back(std::move(L));
    }

    const Mat twist = twist_osc_image(i, barred, D, params);
    auto [nu1, nu2] = twist_exponents(i, barred, params);

    LatticeSpec lattice;
    lattice.nu1 = nu1;
    lattice.nu2 = nu2;
    lattice.win_lo = 3 * n;
    lattice.win_hi = 3 * n;
    lattice.margin = n + 1;

    QParts out;
    out.n = n;
    out.log_prefactor = log_pref;
    out.core = Mat::Zero(dim, dim);

    std::vector<long> digits_r(n), digits_c(n);
    for (long r = 0; r < dim; ++r) {
        long rem = r;
        for (int k = n - 1; k >= 0; --k) {
            digits_r[k] = rem % 3;
            rem /= 3;
        }
        for (long c = 0; c < dim; ++c) {
            rem = c;
            for (int k = n - 1; k >= 0; --k) {
                digits_c[k] = rem % 3;
                rem /= 3;
            }
            int d1 = 0, d2 = 0;
            bool zero = false;
            for (int k = 0; k < n; ++k) {
                const int j = static_cast<int>(digits_r[k]), l = static_cast<int>(digits_c[k]);
                if (!shifts[k].known[j][l]) {
                    zero = true;
                    break;
                }
                d1 += shifts[k].d[j][l][0];
                d2 += shifts[k].d[j][l][1];
            }
            if (zero || d1 != 0 || d2 != 0) continue;  // exactly traceless

            Mat prod = Ls[0].entry[digits_r[0]][digits_c[0]];
            for (int k = 1; k < n; ++k) prod = prod * Ls[k].entry[digits_r[k]][digits_c[k]];
            prod = prod * twist;

            ResummedTrace tr = trace_resummed(prod.diagonal(), D, lattice, q);
            if (tr.degenerate)
                throw DomainError("q_parts: " + tr.note + " [entry " + std::to_string(r) + "," +
                                  std::to_string(c) + "]");
            out.core(r, c) = tr.value;
            out.cert = std::max(out.cert, tr.certificate);
        }
    }
    return out;
}

ChainOp q_operator(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                   const Params& params) {
    QParts p = q_parts(i, false, zeta, eta, params);
    const cplx scale =
        std::exp(zeta.w * static_cast<double>(params.s()) * params.Phi(i) / 2.0 + p.log_prefactor);
    return ChainOp(p.n, scale * p.core, p.cert);
}

ChainOp qbar_operator(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                      const Params& params) {
    QParts p = q_parts(i, true, zeta, eta, params);
    const cplx scale =
        std::exp(-zeta.w * static_cast<double>(params.s()) * params.Phi(i) / 2.0 + p.log_prefactor);
    return ChainOp(p.n, scale * p.core, p.cert);
}

ChainOp q_operator_poly(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                        const Params& params) {
    QParts p = q_parts(i, false, zeta, eta, params);
    const cplx scale = std::exp(-zeta.w * static_cast<double>(p.n) * static_cast<double>(params.s()) / 6.0);
    return ChainOp(p.n, scale * p.core, p.cert);
}

ChainOp qbar_operator_poly(int i, const SpectralPoint& zeta, const std::vector<SpectralPoint>& eta,
                           const Params& params) {
    QParts p = q_parts(i, true, zeta, eta, params);
    const cplx scale = std::exp(-zeta.w * static_cast<double>(p.n) * static_cast<double>(params.s()) / 3.0);
    return ChainOp(p.n, scale * p.core, p.cert);
}

ChainOp q_prime_operator(int i, bool barred, const SpectralPoint& zeta,
                         const std::vector<SpectralPoint>& eta, const Params& params) {
    const int n = static_cast<int>(eta.size());
    const int D = params.cutoff;
    const cplx q = params.q();
    const long dim = chain_dim(n);

    std::vector<OpMatrix> Ls;
    cplx log_pref = 0.0;
    for (int k = 0; k < n; ++k) {
        SpectralPoint arg(zeta.w - eta[k].w);
        OpMatrix L = build_L(i, barred, arg, params);
        log_pref += L.log_prefactor;
        Ls.push_back(std::move(L));
    }
    const Mat twist = twist_osc_image(i, barred, D, params);
    auto [nu1, nu2] = twist_exponents(i, barred, params);
    LatticeSpec lattice{nu1, nu2, 3 * n, 3 * n, n + 1};

    Mat core = Mat::Zero(dim, dim);
    double cert = 0.0;
    std::vector<long> dr(n), dc(n);
    for (long r = 0; r < dim; ++r) {
        long rem = r;
        for (int k = n - 1; k >= 0; --k) {
            dr[k] = rem % 3;
            rem /= 3;
        }
        for (long c = 0; c < dim; ++c) {
            rem = c;
            for (int k = n - 1; k >= 0; --k) {
                dc[k] = rem % 3;
                rem /= 3;
            }
            bool zero = false;
            for (int k = 0; k < n; ++k)
                if (Ls[k].entry[dr[k]][dc[k]].size() == 0) zero = true;
            if (zero) continue;
            Mat prod = Ls[0].entry[dr[0]][dc[0]];
            for (int k = 1; k < n; ++k) prod = prod * Ls[k].entry[dr[k]][dc[k]];
            prod = prod * twist;
            if (prod.diagonal().norm() == 0.0) continue;
            ResummedTrace tr = trace_resummed(prod.diagonal(), D, lattice, q);
            if (tr.degenerate) throw DomainError("q_prime_operator: " + tr.note);
            core(r, c) = tr.value;
            cert = std::max(cert, tr.certificate);
        }
    }
    return ChainOp(n, std::exp(log_pref) * core, cert);
}

PolyCert certify_laurent(const std::function<Mat(const SpectralPoint&)>& f, double radius_x,
                         int start_window, int max_window, double tol, const Params& params) {
    const double s = params.s();
    PolyCert best;
    for (int W = std::max(1, start_window); W <= max_window; W = std::max(W + 1, 2 * W)) {
        const int M = 4 * W + 4;  // samples on the x-circle
        std::vector<Mat> samples(M);
        for (int m = 0; m < M; ++m) {
            const cplx logx = cplx(std::log(radius_x), 2.0 * kPi * m / M);
            samples[m] = f(SpectralPoint(2.0 * logx / s));
        }
        const long dim = samples[0].rows();
        // Fourier coefficients c_p = (1/M) sum_m samples[m] x_m^{-p}, scaled to
        // remove the radius: x^p with x_m = r e^{i theta_m}.
        std::vector<Mat> coeff(M, Mat::Zero(dim, dim));
        for (int p = 0; p < M; ++p) {
            Mat acc = Mat::Zero(dim, dim);
            const int pw = p <= M / 2 ? p : p - M;  // signed power
            for (int m = 0; m < M; ++m) {
                const cplx ph = std::exp(cplx(0.0, -2.0 * kPi * pw * m / M));
                acc += ph * samples[m];
            }
            acc /= static_cast<double>(M) * std::pow(radius_x, pw);
            coeff[p] = acc;
        }
        double inside = 0.0, outside = 0.0;
        for (int p = 0; p < M; ++p) {
            const int pw = p <= M / 2 ? p : p - M;
            const double mass = coeff[p].norm();
            if (std::abs(pw) <= W)
                inside += mass * mass;
            else
                outside += mass * mass;
        }
        const double res = std::sqrt(outside) / std::max(std::sqrt(inside), 1e-300);
        best.window = W;
        best.fit_residual = res;
        best.coeffs.clear();
        for (int pw = -W; pw <= W; ++pw) {
            const int p = (pw % M + M) % M;
            best.coeffs.push_back(coeff[p]);
        }
        if (res < tol) {
            best.certified = true;
            // shrink to the minimal certified window
            while (best.window > 0) {
                const double lo = best.coeffs.front().norm(), hi = best.coeffs.back().norm();
                const double inner = std::sqrt(std::max(inside, 1e-300));
                if (lo / inner < tol && hi / inner < tol) {
                    best.coeffs.erase(best.coeffs.begin());
                    best.coeffs.pop_back();
                    best.window -= 1;
                } else {
                    break;
                }
            }
            return best;
        }
    }
    return best;
}

std::vector<std::pair<int, int>> chain_weights(int n) {
    static const int h1[3] = {1, -1, 0};
    static const int h2[3] = {0, 1, -1};
    const long dim = chain_dim(n);
    std::vector<std::pair<int, int>> w(dim);
    for (long r = 0; r < dim; ++r) {
        long rem = r;
        int a = 0, b = 0;
        for (int k = 0; k < n; ++k) {
            a += h1[rem % 3];
            b += h2[rem % 3];
            rem /= 3;
        }
        w[r] = {a, b};
    }
    return w;
}

double off_block_mass(const Mat& m, int n) {
    auto w = chain_weights(n);
    double off = 0.0;
    const double tot = m.norm();
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c)
            if (w[r] != w[c]) off += std::norm(m(r, c));
    return std::sqrt(off) / std::max(tot, 1e-300);
}

Mat kron_power(const Mat& m, int n) {
    Mat acc = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) acc = kron(acc, m);
    return acc;
}

}  // namespace uqsl3
