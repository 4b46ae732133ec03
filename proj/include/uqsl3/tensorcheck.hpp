#ifndef UQSL3_TENSORCHECK_HPP
#define UQSL3_TENSORCHECK_HPP

#include <functional>
#include <vector>

#include "uqsl3/reps.hpp"

namespace uqsl3 {

// Operators on k-fold Fock products kept as sums of Kronecker terms and
// applied factor-wise to vectors, so the six-factor spaces never materialize
// dense matrices.
struct KronTerm {
    cplx coeff = 1.0;
    std::vector<Mat> factor;  // empty matrix = identity on that factor
};

struct KronOp {
    std::vector<KronTerm> terms;
    KronOp() = default;
    explicit KronOp(std::vector<KronTerm> t) : terms(std::move(t)) {}
};

KronOp operator+(const KronOp& a, const KronOp& b);
KronOp operator*(cplx c, const KronOp& a);

// Tensor-product Fock space with per-factor representation signs.
struct FockSpace {
    int D = 0;
    std::vector<char> rep;  // '+' or '-' per factor
    std::vector<Mat> b, bdag;

    explicit FockSpace(int D_, std::vector<char> rep_, cplx q);
    int factors() const { return static_cast<int>(rep.size()); }
    long dim() const;
    Mat qN(int f, cplx nu) const;  // per-factor q^{nu N} in that factor's rep
    cplx q_;
};

Vec apply(const FockSpace& sp, const KronTerm& t, const Vec& v);
Vec apply(const FockSpace& sp, const KronOp& op, const Vec& v);
Vec apply_chain(const FockSpace& sp, const std::vector<const KronOp*>& ops, const Vec& v);

// Borel-type representation presented through its generator images, with the
// spectral grading e_i -> zeta^{s_i} e_i applied.
struct BorelRep {
    std::function<KronOp(LoopGen, cplx)> image;
    int offset = 0;   // first factor index inside the ambient space
    int nfac = 0;
};

// rho . sigma^{-sigma_power} (and optional tau) on chi^{eps1} (x) chi^{eps2},
// embedded at factor offset in an ambient space.
BorelRep rho_rep(const FockSpace& sp, int offset, int sigma_power, bool tau, cplx zeta_s_pow[3],
                 cplx q);

// Two- and three-factor coproduct images: Delta(e_i) = e_i (x) 1 + q^{-h_i} (x) e_i.
KronOp coproduct_e(const BorelRep& a, const BorelRep& b, int i);
KronOp coproduct_h(const BorelRep& a, const BorelRep& b, int i, cplx nu);
KronOp coproduct_e(const BorelRep& a, const BorelRep& b, const BorelRep& c, int i);
KronOp coproduct_h(const BorelRep& a, const BorelRep& b, const BorelRep& c, int i, cplx nu);

struct AppendixReport {
    double max_deviation = 0.0;
    int checked_states = 0;
    int checked_identities = 0;
    std::string worst;
};

// Appendix B: basis w^k_n of (W3^{++})_{zeta3} (x) (W2^{-+})_{zeta2} and the
// action formulas plus the x/y auxiliary-operator identities.
AppendixReport appendixB_residual(cplx zeta3, cplx zeta2, const Params& params, int D);

// Appendix C on the six-factor space, including the z, r3, p3 identities,
// the colexicographic filtration and the rebased (lambda-specialized) basis.
AppendixReport appendixC_residual(cplx zeta3, cplx zeta2, cplx zeta1, const Params& params, int D);

// Basic representation: (chi+ (x) chi+) . rho against the printed rho' action,
// Serre relations on safe states, and the mu -> limit provenance rate.
struct BasicRepReport {
    double action_deviation = 0.0;
    double serre_deviation = 0.0;
    double limit_rate_error = 0.0;  // | dev(M+2)/dev(M) - |q|^4 | / |q|^4
};
BasicRepReport basic_rep_residual(const Params& params);

}  // namespace uqsl3

#endif
