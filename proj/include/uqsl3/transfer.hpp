#ifndef UQSL3_TRANSFER_HPP
#define UQSL3_TRANSFER_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "uqsl3/chain.hpp"

namespace uqsl3 {

struct RelationReport {
    std::string relation_id;
    std::string params_digest;
    double residual = 0.0;
    double tail_certificate = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

RelationReport make_report(const std::string& id, double residual, double cert, double tol,
                           const std::string& digest);

// Shared evaluation context: one chain setup (params, sites, inhomogeneities)
// with memoized Q-operators keyed on the exact bit pattern of the argument.
class Workspace {
  public:
    Workspace(const Params& params, std::vector<SpectralPoint> eta);

    const Params& params() const { return params_; }
    int sites() const { return n_; }
    const std::vector<SpectralPoint>& eta() const { return eta_; }
    const CartanField& cartan() const { return cartan_; }
    std::string digest() const;

    Mat Q(int i, const SpectralPoint& z);      // redefined Q_i(zeta)
    Mat Qbar(int i, const SpectralPoint& z);   // redefined Qbar_i(zeta)
    Mat Qp(int i, const SpectralPoint& z);     // polynomial part Q^p_i
    Mat Qbarp(int i, const SpectralPoint& z);  // polynomial part Qbar^p_i

    double max_cert() const { return cert_; }
    void reset_cert() { cert_ = 0.0; }

    // T^lambda, Tbar^lambda, Ttilde^lambda from Q-determinants/products
    // (universal normalization).
    Mat T(const Weight& lam, const SpectralPoint& z);
    Mat Tbar(const Weight& lam, const SpectralPoint& z);
    Mat Ttilde(const Weight& lam, const SpectralPoint& z);

    // Polynomial normalizations.
    Mat Tp(const Weight& lam, const SpectralPoint& z);
    Mat Tbarp(const Weight& lam, const SpectralPoint& z);

    // Scalar per-site products used by the polynomial relations:
    // prod_k b(q^a (zeta/eta_k)^{-s/2}).
    cplx b_product(cplx a, const SpectralPoint& z);

    SpectralPoint shift(const SpectralPoint& z, cplx a) const;  // q^{a/s} zeta

  private:
    Params params_;
    int n_;
    std::vector<SpectralPoint> eta_;
    CartanField cartan_;
    std::map<std::tuple<int, bool, uint64_t, uint64_t>, QParts> cache_;
    std::mutex mu_;
    double cert_ = 0.0;

    const QParts& parts(int i, bool barred, const SpectralPoint& z);
};

// --- Relation residual evaluators -------------------------------------------
// Each returns a RelationReport with pass measured against params.tol unless
// a tolerance is supplied.

RelationReport wronskian_residual(Workspace& ws, int i, bool dual_family, const SpectralPoint& z,
                                  double shift_num = 1.0);
RelationReport tq_residual(Workspace& ws, int k, bool barred, const SpectralPoint& z);
RelationReport tq_poly_residual(Workspace& ws, int k, bool barred, const SpectralPoint& z);
RelationReport mixed_tq_residual(Workspace& ws, const std::string& variant, int i, int j,
                                 const SpectralPoint& z);

// variant in {fr1, fr2, fr3, pjt1, pjt2, pjt3, pjt4, utt}; ell-data packed as
// l1 (and l2 for fr3/pjt1/pjt2); utt takes six lambda values.
RelationReport tt_residual(Workspace& ws, const std::string& variant, int l1, int l2,
                           const SpectralPoint& z);
RelationReport utt_residual(Workspace& ws, const std::array<cplx, 6>& lam, const SpectralPoint& z);
RelationReport jacobi_trudi_residual(Workspace& ws, int l1, int l2, const SpectralPoint& z);
RelationReport bttot_residual(Workspace& ws, int ell, bool column, const SpectralPoint& z);
RelationReport t_zero_identity(Workspace& ws, bool barred, const SpectralPoint& z);
RelationReport t_antisymmetry(Workspace& ws, const SpectralPoint& z);
RelationReport t_equal_columns_zero(Workspace& ws, const SpectralPoint& z);
RelationReport t_lambda_shift(Workspace& ws, const SpectralPoint& z);
RelationReport octct_residual(Workspace& ws, int which, const SpectralPoint& z);
RelationReport fusion_closure_residual(Workspace& ws, int ell, const SpectralPoint& z);

}  // namespace uqsl3

#endif
