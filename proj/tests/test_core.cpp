#include <doctest.h>

#include "uqsl3/core.hpp"

using namespace uqsl3;

namespace {
const Params golden(cplx(std::log(0.6), 0.05), {1, 1, 1}, cplx(0.31, 0.0), cplx(-0.17, 0.0), 14);
}

TEST_CASE("q_number basic values") {
    CHECK(std::abs(q_number(0.0, cplx(0.5, 0.0))) < 1e-15);
    CHECK(std::abs(q_number(1.0, cplx(0.5, 0.0)) - 1.0) < 1e-15);
    // (q^2 - q^{-2}) / (q - q^{-1}) at q = 1/2 is 5/2
    CHECK(std::abs(q_number(2.0, cplx(0.5, 0.0)) - 2.5) < 1e-14);
}

TEST_CASE("q_number antisymmetry in nu") {
    const cplx q(0.6, 0.1);
    for (cplx nu : {cplx(0.3, 0.0), cplx(1.7, -0.4), cplx(-2.2, 0.9)})
        CHECK(std::abs(q_number(nu, q) + q_number(-nu, q)) < 1e-13);
}

TEST_CASE("q_number near-degenerate q rejected") {
    CHECK_THROWS_AS(q_number(1.0, cplx(1.0, 0.0)), DomainError);
}

TEST_CASE("f3 partial sum against a longer oracle") {
    const cplx q(0.5, 0.0), z(0.1, 0.0);
    F3Result a = f3_eval(z, q, 60);
    F3Result oracle = f3_eval(z, q, 200);
    CHECK(std::abs(a.value - oracle.value) < 1e-14);
    CHECK(a.tail > 0.0);
    CHECK(std::abs(f3_eval(cplx(0.0), q, 10).value) == 0.0);
}

TEST_CASE("f3 defining relation residual bounded by the tail estimate") {
    const cplx q(0.6, 0.0);
    for (double r : {0.1, 0.3, 0.5}) {
        const cplx z(r, 0.02);
        F3Result a = f3_eval(q * q * z, q, 40);
        F3Result b = f3_eval(z, q, 40);
        F3Result c = f3_eval(z / (q * q), q, 40);
        const cplx resid = a.value + b.value + c.value + std::log(1.0 - z);
        CHECK(std::abs(resid) < 10.0 * (a.tail + b.tail + c.tail) + 1e-15);
    }
}

TEST_CASE("f3 rejects arguments outside the convergence domain") {
    CHECK_THROWS_AS(f3_eval(cplx(4.5, 0.0), cplx(0.5, 0.0), 10), DomainError);
}

TEST_CASE("b_eval") {
    CHECK(std::abs(b_eval(cplx(1.0))) < 1e-15);
    CHECK(std::abs(b_eval(cplx(-1.0))) < 1e-15);
    CHECK(std::abs(b_eval(cplx(2.0)) - 1.5) < 1e-15);
    CHECK_THROWS_AS(b_eval(cplx(0.0)), DomainError);
}

TEST_CASE("spectral shifts compose additively") {
    SpectralPoint p(cplx(0.2, -0.3));
    SpectralPoint q0 = spectral_shift(p, 0.0, golden);
    CHECK(q0.w == p.w);
    SpectralPoint fwd = spectral_shift(p, cplx(1.3, 0.2), golden);
    SpectralPoint back = spectral_shift(fwd, cplx(-1.3, -0.2), golden);
    CHECK(std::abs(back.w - p.w) < 1e-15);
    // a = 2, hbar = log 0.6, s = 3 shifts w by (2/3) log 0.6
    Params real_q(cplx(std::log(0.6), 0.0), {1, 1, 1}, 0.2, -0.1, 8);
    SpectralPoint s2 = spectral_shift(p, 2.0, real_q);
    CHECK(std::abs(s2.w - (p.w + 2.0 / 3.0 * std::log(0.6))) < 1e-15);
}

TEST_CASE("r_s is an s-th root of -1") {
    for (auto s : {std::array<int, 3>{1, 1, 1}, {2, 1, 0}, {3, 2, 2}}) {
        Params p(cplx(std::log(0.6), 0.05), s, 0.1, -0.05, 8);
        CHECK(std::abs(std::pow(p.r_s(), static_cast<double>(p.s())) + 1.0) < 1e-13);
    }
}

TEST_CASE("phi sums to zero and Phi derived combinations vanish") {
    CHECK(std::abs(golden.phi[0] + golden.phi[1] + golden.phi[2]) == 0.0);
    CHECK(std::abs(golden.Phi(1) + golden.Phi(2) + golden.Phi(3)) < 1e-16);
}

TEST_CASE("root-of-unity conditioning warning") {
    CHECK(!golden.root_of_unity_warning().has_value());
    Params bad(cplx(1e-7, 2.0 * kPi / 5.0), {1, 1, 1}, 0.2, -0.1, 8);
    auto warn = bad.root_of_unity_warning();
    REQUIRE(warn.has_value());
    CHECK(*warn == 5);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(Params(cplx(0.1, 0.0), {0, 0, 0}, 0.0, 0.0, 8), DomainError);
    CHECK_THROWS_AS(Params(cplx(std::log(0.6), 0.0), {1, 1, 1}, 0.0, 0.0, 1), DomainError);
    CHECK_THROWS_AS(Params(cplx(0.0, 0.0), {1, 1, 1}, 0.0, 0.0, 8), DomainError);
}
