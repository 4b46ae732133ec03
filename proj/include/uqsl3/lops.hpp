#ifndef UQSL3_LOPS_HPP
#define UQSL3_LOPS_HPP

#include <array>

#include "uqsl3/fock.hpp"
#include "uqsl3/reps.hpp"

namespace uqsl3 {

// 3x3 matrix with entries acting on the two-factor q-oscillator space of
// cutoff D. The scalar e^{f3(...)} factor is kept separate (as a log) so the
// polynomial normalization can cancel it analytically.
struct OpMatrix {
    int D = 0;
    std::array<std::array<Mat, 3>, 3> entry;  // empty matrix = zero entry
    cplx log_prefactor = 0.0;
    double prefactor_tail = 0.0;

    Mat assembled() const;  // 3*D^2 square matrix, prefactor multiplied in
};

// Image of a Borel generator under rho_i = rho . sigma^{-i} (unbarred) or
// rhobar_i = rho . tau . sigma^{-i+1} (barred), on chi+ (x) chi+ truncated
// to D states per factor.
Mat rho_osc_image(int i, bool barred, LoopGen g, cplx nu, int D, cplx q);

// Twist exponents (nu1, nu2) with rho_i(t) = q^{nu1 N_1 + nu2 N_2}.
std::array<cplx, 2> twist_exponents(int i, bool barred, const Params& params);

// rho_i(t) or rhobar_i(t) as a D^2-diagonal matrix.
Mat twist_osc_image(int i, bool barred, int D, const Params& params);

// L'_i(zeta) (barred = false) or Lbar'_i(zeta) (barred = true); i = 1..3.
// Entries follow the explicit i = 1 matrices, the other families via
// O-conjugation with cyclically relabelled gradation integers.
OpMatrix build_L(int i, bool barred, const SpectralPoint& zeta, const Params& params);

// diag(zeta^{-s/3} in slot i, zeta^{s/6} elsewhere), or its inverse.
Mat zeta_D_matrix(int i, const SpectralPoint& zeta, bool inverse, const Params& params);

// Relative Frobenius deviation (interior Fock block) of
//   Lbar'_i(zeta) = P ((L'_{-i+1}(r_s^{-3} q^{-3/s} zeta))^{-1})^t P^{-1} |_{s->tau(s)},
// the transpose acting on the quantum indices only.
double dual_L_residual(int i, const SpectralPoint& zeta, const Params& params);

// Index of the L-family paired by the duality map: (-i+1) mod 3 in 1..3.
int dual_partner_index(int i);

}  // namespace uqsl3

#endif
