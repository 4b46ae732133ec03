#include <doctest.h>

#include "uqsl3/fock.hpp"

using namespace uqsl3;

namespace {
const cplx q(0.6, 0.05);
}

TEST_CASE("chi+ matrices at D=2") {
    OscTriple t = chi_plus_ops(2, 1.0, cplx(0.5, 0.0));
    CHECK(std::abs(t.b(0, 1) - 1.0) < 1e-15);   // [1]_q = 1
    CHECK(std::abs(t.b(1, 0)) == 0.0);
    CHECK(std::abs(t.bdag(1, 0) - 1.0) < 1e-15);
    CHECK_THROWS_AS(chi_plus_ops(1, 1.0, q), DomainError);
}

TEST_CASE("chi+ ladder coefficient [2]_q on the top of D=3") {
    OscTriple t = chi_plus_ops(3, 1.0, q);
    CHECK(std::abs(t.b(1, 2) - (q + 1.0 / q)) < 1e-14);
    // qN with nu=1, D=3, q=0.5: diag(1, 0.5, 0.25)
    OscTriple u = chi_plus_ops(3, 1.0, cplx(0.5, 0.0));
    CHECK(std::abs(u.qN(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(u.qN(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(u.qN(2, 2) - 0.25) < 1e-15);
}

TEST_CASE("chi- matrices") {
    OscTriple t = chi_minus_ops(2, 1.0, cplx(0.5, 0.0));
    CHECK(std::abs(t.bdag(0, 1) + 1.0) < 1e-15);  // -[1]_q
    // q^{-nu(n+1)} with nu = -1 at q = 0.5: diag(0.5, 0.25)
    OscTriple u = chi_minus_ops(2, -1.0, cplx(0.5, 0.0));
    CHECK(std::abs(u.qN(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(u.qN(1, 1) - 0.25) < 1e-15);
    // b^dag b = [N]_q: the chi^- N-eigenvalue is -(n+1), so the diagonal
    // reads [-(n+1)]_q = -[n+1]_q on interior states
    const int D = 8;
    OscTriple v = chi_minus_ops(D, 1.0, q);
    Mat prod = v.bdag * v.b;
    for (int n = 0; n + 1 < D; ++n)
        CHECK(std::abs(prod(n, n) - q_number(-(n + 1.0), q)) < 1e-13);
}

TEST_CASE("weight relations hold exactly on all D states") {
    const int D = 9;
    const cplx nu(0.7, -0.3);
    OscTriple t = chi_plus_ops(D, nu, q);
    OscTriple base = chi_plus_ops(D, 1.0, q);
    Mat lhs = t.qN * base.bdag * t.qN.inverse();
    CHECK((lhs - std::pow(q, nu) * base.bdag).norm() < 1e-12);
    Mat lhs2 = t.qN * base.b * t.qN.inverse();
    CHECK((lhs2 - std::pow(q, -nu) * base.b).norm() < 1e-12);
}

TEST_CASE("embed forms Kronecker products in fixed order") {
    const int D = 3;
    OscTriple t = chi_plus_ops(D, 1.0, q);
    std::vector<int> dims{D, D};
    OscOp id2 = embed({Mat(), Mat()}, dims);
    CHECK((id2.data - Mat::Identity(9, 9)).norm() == 0.0);
    OscOp b1 = embed({t.b, Mat()}, dims);
    OscOp b2 = embed({Mat(), t.b}, dims);
    CHECK((b1.data * b2.data - b2.data * b1.data).norm() < 1e-14);
    // b1^dag b1 equals [N_1]_q as a diagonal
    OscOp b1d = embed({t.bdag, Mat()}, dims);
    Mat prod = (b1d * b1).data;
    for (int n1 = 0; n1 < D; ++n1)
        for (int n2 = 0; n2 < D; ++n2)
            CHECK(std::abs(prod(n1 * D + n2, n1 * D + n2) - q_number(n1, q)) < 1e-13);
    CHECK_THROWS_AS(embed({t.b}, dims), DomainError);
}

TEST_CASE("trace_regularized against the closed form") {
    // q^nu = 0.5 via nu chosen accordingly; D = 30 gives ~1e-9 truncation
    const cplx qq(0.5, 0.0);
    OscTriple t = chi_plus_ops(30, 1.0, qq);
    TraceResult tr = trace_regularized(t.qN);
    CHECK(std::abs(tr.value - 2.0) < 1e-8);
    CHECK(std::abs(tr.value - 2.0) < 2.0 * tr.tail + 1e-12);
    // traceless band matrix
    TraceResult tb = trace_regularized(t.b);
    CHECK(std::abs(tb.value) == 0.0);
    // (b^dag)^2 q^{nu N} is traceless
    Mat m = t.bdag * t.bdag * t.qN;
    CHECK(std::abs(trace_regularized(m).value) == 0.0);
}

TEST_CASE("trace_regularized flags non-decaying diagonals") {
    OscTriple t = chi_plus_ops(10, -1.0, cplx(0.5, 0.0));  // q^{-n} grows
    CHECK_THROWS_AS(trace_regularized(t.qN), DomainError);
}

TEST_CASE("exponential-sum fit recovers synthetic coefficients") {
    const int R = 12;
    std::vector<cplx> nodes;
    for (int m = -3; m <= 3; ++m) nodes.push_back(std::pow(q, cplx(0.4, 0.1) + static_cast<double>(m)));
    Mat Y(R, 1);
    for (int r = 0; r < R; ++r)
        Y(r, 0) = 3.0 * std::pow(nodes[1], r) - cplx(0.0, 2.0) * std::pow(nodes[5], r);
    ExpFit fit = fit_exponential_sum(Y, nodes);
    CHECK(fit.rel_residual < 1e-12);
    CHECK(std::abs(fit.coeffs(1, 0) - 3.0) < 1e-9);
    CHECK(std::abs(fit.coeffs(5, 0) - cplx(0.0, -2.0)) < 1e-9);
}

TEST_CASE("resummed trace evaluates the analytic continuation") {
    // diagonal with one growing direction: plain summation diverges, the
    // lattice fit reproduces the continued product of geometric sums
    const int D = 14;
    const cplx nu1(-0.45, 0.2), nu2(0.8, -0.1);  // |q^{nu1}| > 1
    Vec diag(D * D);
    const cplx u = std::pow(q, nu1), v = std::pow(q, nu2);
    const cplx u2 = std::pow(q, nu1 + 2.0), v2 = std::pow(q, nu2 - 1.0);
    for (int n1 = 0; n1 < D; ++n1)
        for (int n2 = 0; n2 < D; ++n2)
            diag(n1 * D + n2) = 1.7 * std::pow(u, n1) * std::pow(v, n2) -
                                cplx(0.0, 0.6) * std::pow(u2, n1) * std::pow(v2, n2);
    LatticeSpec lat{nu1, nu2, 3, 3, 2};
    ResummedTrace tr = trace_resummed(diag, D, lat, q);
    const cplx expect = 1.7 / ((1.0 - u) * (1.0 - v)) - cplx(0.0, 0.6) / ((1.0 - u2) * (1.0 - v2));
    CHECK(!tr.degenerate);
    CHECK(std::abs(tr.value - expect) / std::abs(expect) < 1e-9);
    CHECK(tr.certificate < 1e-9);
}

TEST_CASE("resummed trace flags a weighted node at q^nu = 1") {
    const int D = 12;
    Vec diag = Vec::Ones(D * D);  // constant diagonal: node exactly at 1
    LatticeSpec lat{cplx(0.0), cplx(0.0), 2, 2, 1};
    ResummedTrace tr = trace_resummed(diag, D, lat, q);
    CHECK(tr.degenerate);
}
