#include "irsim/scheme1.hpp"

#include <cmath>

#include "irsim/rng.hpp"

namespace irsim {

namespace {

// S~ = diag(s) * F, the N0 x L frequency-domain training map.
ComplexMatrix pilot_map(const Scheme1Design& design, int L) {
    const auto n0 = design.s.size();
    if (L < 1 || L > n0)
        throw DimensionError("scheme1: need 1 <= L <= N0");
    const ComplexMatrix F = first_columns(dft_matrix(n0), L);
    return design.s.asDiagonal() * F;
}

// True when the design satisfies both orthogonality conditions, in which
// case the scaled-adjoint estimator is exact.
bool design_is_orthogonal(const Scheme1Design& design, double* psi_scale) {
    const double g1 = design.gamma1;
    for (Eigen::Index k = 0; k < design.s.size(); ++k)
        if (std::abs(std::norm(design.s(k)) - g1) > 1e-9 * g1)
            return false;
    const auto rows = design.Psi.rows();
    const double c = static_cast<double>(design.Psi.cols());
    const ComplexMatrix gram = design.Psi * design.Psi.adjoint();
    if ((gram - c * ComplexMatrix::Identity(rows, rows)).cwiseAbs().maxCoeff() > 1e-9 * c)
        return false;
    *psi_scale = c;
    return true;
}

}  // namespace

Scheme1Observation simulate_rx_scheme1(const Scheme1Design& design,
                                       const ChannelRealization& realization, double sigma2,
                                       std::mt19937_64& eng) {
    const auto M = realization.Q.cols();
    const auto I0 = design.Psi.cols();
    if (design.Psi.rows() != M + 1)
        throw DimensionError("simulate_rx_scheme1: Psi rows must equal M+1");
    if ((design.Psi.row(0).array() - 1.0).abs().maxCoeff() > 1e-9)
        throw ReflectionError("simulate_rx_scheme1: Psi row 0 must be all ones");
    if (sigma2 < 0.0)
        throw ParameterError("simulate_rx_scheme1: sigma2 must be non-negative");

    const ComplexMatrix st = pilot_map(design, static_cast<int>(realization.d.size()));
    Scheme1Observation obs;
    obs.Z.resize(st.rows(), I0);
    for (Eigen::Index i = 0; i < I0; ++i) {
        const ComplexVector theta = design.Psi.col(i).tail(M);
        const ComplexVector h = effective_cir(realization, theta);
        obs.Z.col(i) = st * h;
        for (Eigen::Index k = 0; k < st.rows(); ++k)
            obs.Z(k, i) += complex_gaussian(eng, sigma2);
    }
    return obs;
}

ChannelEstimate estimate_scheme1(const Scheme1Design& design, const Scheme1Observation& obs,
                                 int L, EstimatorPath path) {
    if (obs.Z.rows() != design.s.size() || obs.Z.cols() != design.Psi.cols())
        throw DimensionError("estimate_scheme1: observation/design dimension mismatch");
    const ComplexMatrix st = pilot_map(design, L);

    double psi_scale = 0.0;
    bool closed_form = false;
    switch (path) {
        case EstimatorPath::kClosedForm:
            if (!design_is_orthogonal(design, &psi_scale))
                throw SingularSystemError(
                    "estimate_scheme1: closed form requested for a non-orthogonal design");
            closed_form = true;
            break;
        case EstimatorPath::kAuto:
            closed_form = design_is_orthogonal(design, &psi_scale);
            break;
        case EstimatorPath::kGeneral:
            break;
    }

    ComplexMatrix dq;  // L x (M+1), first column d, remainder Q
    if (closed_form) {
        dq = (st.adjoint() * obs.Z) * design.Psi.adjoint() / (design.gamma1 * psi_scale);
    } else {
        dq = right_ls_solve(ls_solve(st, obs.Z), design.Psi);
    }
    ChannelEstimate est;
    est.d_hat = dq.col(0);
    est.Q_hat = dq.rightCols(dq.cols() - 1);
    return est;
}

double analytic_mse_scheme1(const Scheme1Design& design, double sigma2, int L) {
    const ComplexMatrix st = pilot_map(design, L);
    const double t_pilot = trace_inverse(st.adjoint() * st);
    const double t_psi = trace_inverse(design.Psi * design.Psi.adjoint());
    const auto coeffs = static_cast<double>(L) * static_cast<double>(design.Psi.rows());
    return sigma2 / coeffs * t_pilot * t_psi;
}

long training_duration_scheme1(const SystemConfig& cfg) {
    return static_cast<long>(cfg.M + 1) * (cfg.N0 + cfg.L_cp);
}

}  // namespace irsim
