#include <doctest.h>

#include "uqsl3/lops.hpp"

using namespace uqsl3;

namespace {
Params make_params(int D = 10) {
    return Params(cplx(std::log(0.6), 0.05), {1, 1, 1}, cplx(0.31, 0.0), cplx(-0.17, 0.0), D);
}
}

TEST_CASE("rho images reproduce the printed generators") {
    Params P = make_params(6);
    const cplx q = P.q();
    const int D = P.cutoff;
    // rho_3 = rho: e2 -> kappa^{-1} b_2 q^{-N_2}
    Mat e2 = rho_osc_image(3, false, LoopGen::E2, 0.0, D, q);
    OscTriple t = chi_plus_ops(D, 1.0, q);
    Mat id = Mat::Identity(D, D);
    Mat qn2m = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) qn2m(n, n) = std::pow(q, -static_cast<double>(n));
    Mat ref = kron(id, t.b * qn2m) / P.kappa_q();
    CHECK((e2 - ref).norm() < 1e-13);
    // rho(q^{nu h0}) = q^{nu(2N1+N2)}
    const cplx nu(0.73, -0.21);
    Mat h0 = rho_osc_image(3, false, LoopGen::QH0, nu, D, q);
    CHECK((h0 - q_weight_two_factor(D, 2.0 * nu, nu, q)).norm() < 1e-12);
    // Serre residual for the rho images on interior states
    Mat e0 = rho_osc_image(3, false, LoopGen::E0, 0.0, D, q);
    Mat e1 = rho_osc_image(3, false, LoopGen::E1, 0.0, D, q);
    Vec mask = Vec::Zero(D * D);
    for (int a = 0; a + 4 < D; ++a)
        for (int b = 0; b + 4 < D; ++b) mask(a * D + b) = 1.0;
    auto serre = [&](const Mat& x, const Mat& y) {
        Mat m = x * x * y - q_number(2.0, q) * (x * y * x) + y * x * x;
        return (m * mask.asDiagonal()).norm();
    };
    CHECK(serre(e0, e1) < 1e-12);
    CHECK(serre(e1, e2) < 1e-12);
    CHECK(serre(e2, e0) < 1e-12);
}

TEST_CASE("twist exponents match the printed Phi combinations") {
    Params P = make_params(6);
    auto close = [](cplx a, cplx b) { return std::abs(a - b) < 1e-14; };
    // rho_1(t) = q^{-(Phi1-Phi2) N1 + (Phi3-Phi1) N2}
    auto u1 = twist_exponents(1, false, P);
    CHECK(close(u1[0], -(P.Phi(1) - P.Phi(2))));
    CHECK(close(u1[1], P.Phi(3) - P.Phi(1)));
    // rho_2(t) = q^{-(Phi2-Phi3) N1 + (Phi1-Phi2) N2}
    auto u2 = twist_exponents(2, false, P);
    CHECK(close(u2[0], -(P.Phi(2) - P.Phi(3))));
    CHECK(close(u2[1], P.Phi(1) - P.Phi(2)));
    // rhobar_1(t) = q^{(Phi1-Phi3) N1 - (Phi2-Phi1) N2}
    auto b1 = twist_exponents(1, true, P);
    CHECK(close(b1[0], P.Phi(1) - P.Phi(3)));
    CHECK(close(b1[1], -(P.Phi(2) - P.Phi(1))));
    // zero twist gives the identity operator
    Params P0(P.hbar, P.s_grad, 0.0, 0.0, 6);
    Mat tw = twist_osc_image(2, true, P0.cutoff, P0);
    CHECK((tw - Mat::Identity(36, 36)).norm() < 1e-14);
}

TEST_CASE("L-operator entry structure") {
    Params P = make_params(8);
    const cplx q = P.q();
    const int D = P.cutoff;
    SpectralPoint z(cplx(-0.7, 0.45));
    OpMatrix L = build_L(1, false, z, P);
    // (2,3) entry vanishes
    CHECK(L.entry[1][2].size() == 0);
    // (2,2) = q^{-N_1}
    Mat ref = q_weight_two_factor(D, -1.0, 0.0, q);
    CHECK((L.entry[1][1] - ref).norm() < 1e-13);
    // zeta powers: entry (1,2) scales as zeta^{s - s_1}
    SpectralPoint z2(z.w + cplx(0.3, -0.2));
    OpMatrix L2 = build_L(1, false, z2, P);
    const cplx ratio = std::exp((z2.w - z.w) * static_cast<double>(P.s() - P.s_grad[1]));
    CHECK((L2.entry[0][1] - ratio * L.entry[0][1]).norm() < 1e-12 * L.entry[0][1].norm());
    // barred entry (1,2) = -zeta^{s-s_1} kappa_q b_2^dag q^{N_2+1}
    OpMatrix Lb = build_L(1, true, z, P);
    OscTriple t = chi_plus_ops(D, 1.0, q);
    Mat qn = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) qn(n, n) = std::pow(q, static_cast<double>(n) + 1.0);
    Mat expct = -z.pow(static_cast<double>(P.s() - P.s_grad[1])) * P.kappa_q() *
                kron(Mat(Mat::Identity(D, D)), Mat(t.bdag * qn));
    CHECK((Lb.entry[0][1] - expct).norm() < 1e-12 * expct.norm());
}

TEST_CASE("zeta_D matrices") {
    Params P = make_params(6);
    SpectralPoint z(cplx(0.2, 0.7));
    for (int i = 1; i <= 3; ++i) {
        Mat d = zeta_D_matrix(i, z, false, P);
        Mat di = zeta_D_matrix(i, z, true, P);
        CHECK((d * di - Mat::Identity(3, 3)).norm() < 1e-14);
        CHECK(std::abs(d.determinant() - 1.0) < 1e-13);
        CHECK(std::abs(d(i - 1, i - 1) - z.pow(-P.s() / 3.0)) < 1e-14);
    }
}

TEST_CASE("dual identity between the barred and inverted unbarred L") {
    Params P = make_params(12);
    SpectralPoint z(cplx(std::log(0.3), 0.4));
    for (int i = 1; i <= 3; ++i) {
        const double r = dual_L_residual(i, z, P);
        CHECK(r < 1e-7);
    }
    // truncation error shrinks with the cutoff
    Params P8 = make_params(8), P12 = make_params(12), P16 = make_params(16);
    const double r8 = dual_L_residual(1, z, P8);
    const double r12 = dual_L_residual(1, z, P12);
    const double r16 = dual_L_residual(1, z, P16);
    CHECK(r12 < r8);
    CHECK(r16 < r12);
    // negative control: wrong argument shift is O(1)
    SpectralPoint zb = spectral_shift(z, 1.0, P);
    CHECK(dual_L_residual(1, zb, P) > 1e-2);
}
