#include "uqsl3/reps.hpp"

#include <algorithm>
#include <cmath>

namespace uqsl3 {

namespace {

Mat unit_entry(int i, int j) {
    Mat m = Mat::Zero(3, 3);
    m(i - 1, j - 1) = 1.0;
    return m;
}

Mat diag3(cplx a, cplx b, cplx c) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

}  // namespace

Mat pi_fund(const std::array<int, 3>& w, Gl3Gen g, cplx nu, cplx q) {
    const cplx qn = std::pow(q, nu);
    if (w == std::array<int, 3>{1, 0, 0}) {
        switch (g) {
            case Gl3Gen::QG1: return diag3(qn, 1.0, 1.0);
            case Gl3Gen::QG2: return diag3(1.0, qn, 1.0);
            case Gl3Gen::QG3: return diag3(1.0, 1.0, qn);
            case Gl3Gen::E1: return unit_entry(1, 2);
            case Gl3Gen::E2: return unit_entry(2, 3);
            case Gl3Gen::E3: return unit_entry(1, 3);
            case Gl3Gen::F1: return unit_entry(2, 1);
            case Gl3Gen::F2: return unit_entry(3, 2);
            case Gl3Gen::F3: return unit_entry(3, 1);
        }
    } else if (w == std::array<int, 3>{1, 1, 0}) {
        switch (g) {
            case Gl3Gen::QG1: return diag3(qn, qn, 1.0);
            case Gl3Gen::QG2: return diag3(qn, 1.0, qn);
            case Gl3Gen::QG3: return diag3(1.0, qn, qn);
            case Gl3Gen::E1: return unit_entry(2, 3);
            case Gl3Gen::E2: return unit_entry(1, 2);
            case Gl3Gen::E3: return -unit_entry(1, 3) / q;
            case Gl3Gen::F1: return unit_entry(3, 2);
            case Gl3Gen::F2: return unit_entry(2, 1);
            case Gl3Gen::F3: return -q * unit_entry(3, 1);
        }
    }
    throw DomainError("pi_fund: weight must be (1,0,0) or (1,1,0)");
}

Gl3Rep fund_rep(const std::array<int, 3>& weight_id, cplx q) {
    Gl3Rep rep;
    rep.image = [weight_id, q](Gl3Gen g, cplx nu) { return pi_fund(weight_id, g, nu, q); };
    return rep;
}

int verma_index(int n1, int n2, int n3, int M) { return (n1 * M + n2) * M + n3; }

VermaOp verma_action(const Weight& lam, Gl3Gen g, cplx nu, int M, cplx q) {
    if (M < 1) throw DomainError("verma_action: M must be >= 1");
    const long dim = static_cast<long>(M) * M * M;
    VermaOp op;
    op.M = M;
    op.data = Mat::Zero(dim, dim);
    op.boundary_col.assign(dim, false);
    const cplx mu1 = lam.mu1(), mu2 = lam.mu2();

    // target(n'), coefficient; out-of-box targets with nonzero coefficient
    // flag the source column as boundary-inexact.
    auto put = [&](int col, int t1, int t2, int t3, cplx coeff) {
        if (coeff == cplx(0.0)) return;
        if (t1 < 0 || t2 < 0 || t3 < 0) return;  // annihilated below the box is exact
        if (t1 >= M || t2 >= M || t3 >= M) {
            op.boundary_col[col] = true;
            return;
        }
        op.data(verma_index(t1, t2, t3, M), col) += coeff;
    };

    for (int n1 = 0; n1 < M; ++n1)
        for (int n2 = 0; n2 < M; ++n2)
            for (int n3 = 0; n3 < M; ++n3) {
                const int col = verma_index(n1, n2, n3, M);
                const double d1 = n1, d2 = n2, d3 = n3;
                switch (g) {
                    case Gl3Gen::QG1:
                        put(col, n1, n2, n3, std::pow(q, nu * (lam.lambda[0] - d1 - d2)));
                        break;
                    case Gl3Gen::QG2:
                        put(col, n1, n2, n3, std::pow(q, nu * (lam.lambda[1] + d1 - d3)));
                        break;
                    case Gl3Gen::QG3:
                        put(col, n1, n2, n3, std::pow(q, nu * (lam.lambda[2] + d2 + d3)));
                        break;
                    case Gl3Gen::F1:
                        put(col, n1 + 1, n2, n3, 1.0);
                        break;
                    case Gl3Gen::F2:
                        put(col, n1, n2, n3 + 1, std::pow(q, d1 - d2));
                        if (n1 >= 1) put(col, n1 - 1, n2 + 1, n3, q_number(n1, q));
                        break;
                    case Gl3Gen::F3:
                        put(col, n1, n2 + 1, n3, std::pow(q, -d1));
                        break;
                    case Gl3Gen::E1:
                        if (n1 >= 1)
                            put(col, n1 - 1, n2, n3,
                                q_number(mu1 - d1 - d2 + d3 + 1.0, q) * q_number(n1, q));
                        if (n2 >= 1)
                            put(col, n1, n2 - 1, n3 + 1,
                                -std::pow(q, mu1 - d2 + d3 + 2.0) * q_number(n2, q));
                        break;
                    case Gl3Gen::E2:
                        if (n3 >= 1)
                            put(col, n1, n2, n3 - 1,
                                q_number(mu2 - d3 + 1.0, q) * q_number(n3, q));
                        if (n2 >= 1)
                            put(col, n1 + 1, n2 - 1, n3,
                                std::pow(q, -mu2 + 2.0 * d3) * q_number(n2, q));
                        break;
                    case Gl3Gen::E3:
                        if (n2 >= 1)
                            put(col, n1, n2 - 1, n3,
                                std::pow(q, d1) * q_number(mu1 + mu2 - d1 - d2 - d3 + 1.0, q) *
                                    q_number(n2, q));
                        if (n1 >= 1 && n3 >= 1)
                            put(col, n1 - 1, n2, n3 - 1,
                                -std::pow(q, -mu1 + d1 + d2 - d3 - 1.0) *
                                    q_number(mu2 - d3 + 1.0, q) * q_number(n1, q) *
                                    q_number(n3, q));
                        break;
                }
            }
    return op;
}

LoopGen sigma_label(LoopGen g, int power) {
    auto rot = [](int j, int p) { return ((j + p) % 3 + 3) % 3; };
    int p = ((power % 3) + 3) % 3;
    switch (g) {
        case LoopGen::E0: return static_cast<LoopGen>(rot(0, p));
        case LoopGen::E1: return static_cast<LoopGen>(rot(1, p));
        case LoopGen::E2: return static_cast<LoopGen>(rot(2, p));
        case LoopGen::F0: return static_cast<LoopGen>(3 + rot(0, p));
        case LoopGen::F1: return static_cast<LoopGen>(3 + rot(1, p));
        case LoopGen::F2: return static_cast<LoopGen>(3 + rot(2, p));
        case LoopGen::QH0: return static_cast<LoopGen>(6 + rot(0, p));
        case LoopGen::QH1: return static_cast<LoopGen>(6 + rot(1, p));
        case LoopGen::QH2: return static_cast<LoopGen>(6 + rot(2, p));
    }
    throw DomainError("sigma_label: unknown generator");
}

LoopGen tau_label(LoopGen g) {
    switch (g) {
        case LoopGen::E0: return LoopGen::E0;
        case LoopGen::E1: return LoopGen::E2;
        case LoopGen::E2: return LoopGen::E1;
        case LoopGen::F0: return LoopGen::F0;
        case LoopGen::F1: return LoopGen::F2;
        case LoopGen::F2: return LoopGen::F1;
        case LoopGen::QH0: return LoopGen::QH0;
        case LoopGen::QH1: return LoopGen::QH2;
        case LoopGen::QH2: return LoopGen::QH1;
    }
    throw DomainError("tau_label: unknown generator");
}

int gradation_exponent(LoopGen g, const std::array<int, 3>& s) {
    switch (g) {
        case LoopGen::E0: return s[0];
        case LoopGen::E1: return s[1];
        case LoopGen::E2: return s[2];
        case LoopGen::F0: return -s[0];
        case LoopGen::F1: return -s[1];
        case LoopGen::F2: return -s[2];
        default: return 0;
    }
}

Mat jimbo_image(LoopGen g, cplx nu, const Gl3Rep& rep, cplx q) {
    (void)q;
    switch (g) {
        case LoopGen::QH0:
            return rep(Gl3Gen::QG3, nu) * rep(Gl3Gen::QG1, -nu);
        case LoopGen::QH1:
            return rep(Gl3Gen::QG1, nu) * rep(Gl3Gen::QG2, -nu);
        case LoopGen::QH2:
            return rep(Gl3Gen::QG2, nu) * rep(Gl3Gen::QG3, -nu);
        case LoopGen::E0:
            return rep(Gl3Gen::F3) * rep(Gl3Gen::QG1, -1.0) * rep(Gl3Gen::QG3, -1.0);
        case LoopGen::E1: return rep(Gl3Gen::E1);
        case LoopGen::E2: return rep(Gl3Gen::E2);
        case LoopGen::F0:
            return rep(Gl3Gen::E3) * rep(Gl3Gen::QG1, 1.0) * rep(Gl3Gen::QG3, 1.0);
        case LoopGen::F1: return rep(Gl3Gen::F1);
        case LoopGen::F2: return rep(Gl3Gen::F2);
    }
    throw DomainError("jimbo_image: unknown generator");
}

ConjMatrices conj_matrices(const Params& params) {
    const cplx q = params.q();
    const double s = params.s();
    const cplx rs = params.r_s();
    Mat O = Mat::Zero(3, 3);
    O(0, 2) = q;
    O(1, 0) = 1.0;
    O(2, 1) = 1.0;
    Mat P = Mat::Zero(3, 3);
    P(0, 2) = std::pow(rs, -3.0 * params.s_grad[2]) * std::pow(q, 1.0 - 3.0 * params.s_grad[2] / s);
    P(1, 1) = -1.0;
    P(2, 0) = std::pow(rs, 3.0 * params.s_grad[1]) * std::pow(q, -1.0 + 3.0 * params.s_grad[1] / s);
    return {O, P};
}

Mat dual_rep_image(LoopGen g, cplx nu, const LoopImages& images, cplx q) {
    switch (g) {
        case LoopGen::QH0:
        case LoopGen::QH1:
        case LoopGen::QH2:
            return images(g, -nu).transpose();
        case LoopGen::E0:
        case LoopGen::E1:
        case LoopGen::E2: {
            // S^{-1}(e_i) = -q^{-2} q^{h_i} e_i
            LoopGen h = static_cast<LoopGen>(static_cast<int>(LoopGen::QH0) +
                                             (static_cast<int>(g) - static_cast<int>(LoopGen::E0)));
            Mat m = images(h, 1.0) * images(g, 0.0);
            return (-std::pow(q, -2.0) * m).transpose();
        }
        case LoopGen::F0:
        case LoopGen::F1:
        case LoopGen::F2: {
            // S^{-1}(f_i) = -q^{2} f_i q^{-h_i}
            LoopGen h = static_cast<LoopGen>(static_cast<int>(LoopGen::QH0) +
                                             (static_cast<int>(g) - static_cast<int>(LoopGen::F0)));
            Mat m = images(g, 0.0) * images(h, -1.0);
            return (-std::pow(q, 2.0) * m).transpose();
        }
    }
    throw DomainError("dual_rep_image: unknown generator");
}

std::vector<std::pair<int, Weight>> weyl_affine_orbit(const Weight& lambda) {
    static const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2},  // id
        {1, 0, 2},  // (12)
        {0, 2, 1},  // (23)
        {2, 0, 1},  // components (l1,l2,l3) -> (l3,l1,l2)
        {1, 2, 0},
        {2, 1, 0},  // (13)
    }};
    static const std::array<int, 6> signs = {1, -1, -1, 1, 1, -1};
    const Weight rho = rho_weight();
    std::array<cplx, 3> lr{lambda.lambda[0] + rho.lambda[0], lambda.lambda[1] + rho.lambda[1],
                           lambda.lambda[2] + rho.lambda[2]};
    std::vector<std::pair<int, Weight>> out;
    out.reserve(6);
    for (int p = 0; p < 6; ++p) {
        Weight w(lr[perms[p][0]] - rho.lambda[0], lr[perms[p][1]] - rho.lambda[1],
                 lr[perms[p][2]] - rho.lambda[2]);
        out.emplace_back(signs[p], w);
    }
    return out;
}

cplx verma_character(const Weight& mu, const std::array<cplx, 3>& nu, cplx q) {
    const cplx num = std::pow(q, nu[0] * mu.lambda[0] + nu[1] * mu.lambda[1] + nu[2] * mu.lambda[2]);
    // beta in {(-1,1,0), (-1,0,1), (0,-1,1)}
    const cplx d1 = 1.0 - std::pow(q, nu[1] - nu[0]);
    const cplx d2 = 1.0 - std::pow(q, nu[2] - nu[0]);
    const cplx d3 = 1.0 - std::pow(q, nu[2] - nu[1]);
    if (std::abs(d1 * d2 * d3) < 1e-14)
        throw DomainError("verma_character: degenerate nu (denominator vanishes)");
    return num / (d1 * d2 * d3);
}

cplx weyl_character(const Weight& lambda, const std::array<cplx, 3>& nu, cplx q) {
    // Bialternant: det(x_i^{lambda_j + 3 - j}) / det(x_i^{3 - j}).
    std::array<cplx, 3> x{std::pow(q, nu[0]), std::pow(q, nu[1]), std::pow(q, nu[2])};
    auto det3 = [&](const std::array<cplx, 3>& e) {
        Mat m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = std::pow(x[i], e[j]);
        return m.determinant();
    };
    std::array<cplx, 3> top{lambda.lambda[0] + 2.0, lambda.lambda[1] + 1.0, lambda.lambda[2]};
    std::array<cplx, 3> bot{2.0, 1.0, 0.0};
    const cplx den = det3(bot);
    if (std::abs(den) < 1e-14) throw DomainError("weyl_character: Vandermonde denominator vanishes");
    return det3(top) / den;
}

cplx bgg_character_residual(const Weight& lambda, const std::array<cplx, 3>& nu, cplx q) {
    // Convergence of the Verma characters demands |q^{nu.beta}| < 1 for the
    // three positive-root directions.
    for (cplx r : {std::pow(q, nu[1] - nu[0]), std::pow(q, nu[2] - nu[0]),
                   std::pow(q, nu[2] - nu[1])}) {
        if (!(std::abs(r) < 1.0))
            throw DomainError("bgg_character_residual: Verma characters would diverge at this nu");
    }
    cplx alt = 0.0;
    for (const auto& [sign, w] : weyl_affine_orbit(lambda))
        alt += static_cast<double>(sign) * verma_character(w, nu, q);
    return weyl_character(lambda, nu, q) - alt;
}

}  // namespace uqsl3
