#ifndef UQSL3_REPS_HPP
#define UQSL3_REPS_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "uqsl3/fock.hpp"

namespace uqsl3 {

// gl3 weight lambda with mu_1 = lambda_1 - lambda_2, mu_2 = lambda_2 - lambda_3.
struct Weight {
    std::array<cplx, 3> lambda{0.0, 0.0, 0.0};

    Weight() = default;
    Weight(cplx l1, cplx l2, cplx l3) : lambda{l1, l2, l3} {}

    cplx mu1() const { return lambda[0] - lambda[1]; }
    cplx mu2() const { return lambda[1] - lambda[2]; }
    cplx sum() const { return lambda[0] + lambda[1] + lambda[2]; }
};

inline Weight rho_weight() { return Weight(1.0, 0.0, -1.0); }

// gl3 generator labels. QG carries the continuous parameter nu separately.
enum class Gl3Gen { QG1, QG2, QG3, E1, E2, E3, F1, F2, F3 };

// Loop-algebra (Borel and full) generator labels.
enum class LoopGen { E0, E1, E2, F0, F1, F2, QH0, QH1, QH2 };

// 3x3 matrices of the fundamental representations pi^{(1,0,0)} and
// pi^{(1,1,0)}; weight_id selects between them.
Mat pi_fund(const std::array<int, 3>& weight_id, Gl3Gen g, cplx nu, cplx q);

// Truncated Verma module action on the basis v_n = F1^{n1} F3^{n2} F2^{n3} v0,
// n in {0..M-1}^3, lexicographic order in (n1, n2, n3). Columns whose exact
// image leaves the index box are flagged; relation tests quantify only over
// unflagged columns.
struct VermaOp {
    int M = 0;
    Mat data;
    std::vector<bool> boundary_col;  // true: column is boundary-inexact

    long dim() const { return data.rows(); }
};

VermaOp verma_action(const Weight& lambda, Gl3Gen g, cplx nu, int M, cplx q);

int verma_index(int n1, int n2, int n3, int M);

// A finite-dimensional gl3 representation presented as generator images.
struct Gl3Rep {
    std::function<Mat(Gl3Gen, cplx)> image;  // (generator, nu) -> matrix
    Mat operator()(Gl3Gen g, cplx nu = 0.0) const { return image(g, nu); }
};

Gl3Rep fund_rep(const std::array<int, 3>& weight_id, cplx q);

// Jimbo homomorphism phi: Uq(L(sl3)) -> Uq(gl3), composed with an optional
// power of sigma and/or tau acting on loop-generator labels:
//   phi_i      = phi . sigma^{-i+1}
//   phibar'_i  = phi . tau . sigma^{-i+1}
// The result is the image matrix in the given gl3 representation. The
// spectral dressing for e_j/f_j (zeta^{+-s_j}) is left to the caller.
Mat jimbo_image(LoopGen g, cplx nu, const Gl3Rep& rep, cplx q);

LoopGen sigma_label(LoopGen g, int power);  // sigma^power on generator labels
LoopGen tau_label(LoopGen g);

// Gradation weight s_{j} of a loop generator (0 for Cartan), signed for f's.
int gradation_exponent(LoopGen g, const std::array<int, 3>& s_grad);

// O (sigma conjugator) and P (the skew-diagonal matrix of Eq.-level
// equivalence between phibar'^{(1,0,0)} and the shifted dual).
struct ConjMatrices {
    Mat O;
    Mat P;
};
ConjMatrices conj_matrices(const Params& params);

// Dual representation psi^{* S^{-1}} of a Borel/loop representation given by
// its generator images: transpose of the S^{-1}-composed images.
// `images` must provide at least q^{nu h_i} for the h-factor of S^{-1}(e_i).
using LoopImages = std::function<Mat(LoopGen, cplx)>;
Mat dual_rep_image(LoopGen g, cplx nu, const LoopImages& images, cplx q);

// Affine Weyl orbit {(sgn p, p(lambda+rho)-rho) : p in S3}, identity first.
std::vector<std::pair<int, Weight>> weyl_affine_orbit(const Weight& lambda);

// chi_fin(nu) - sum_p sgn(p) chi_Verma^{p(lambda+rho)-rho}(nu) with the Verma
// characters in closed form and chi_fin from the Weyl (Schur) formula.
cplx bgg_character_residual(const Weight& lambda, const std::array<cplx, 3>& nu, cplx q);

// Closed-form Verma character q^{nu.mu} / prod_beta (1 - q^{nu.beta}).
cplx verma_character(const Weight& mu, const std::array<cplx, 3>& nu, cplx q);

// Schur polynomial s_lambda(q^{nu_1}, q^{nu_2}, q^{nu_3}) for a dominant
// integral gl3 weight (bialternant form).
cplx weyl_character(const Weight& lambda, const std::array<cplx, 3>& nu, cplx q);

}  // namespace uqsl3

#endif
