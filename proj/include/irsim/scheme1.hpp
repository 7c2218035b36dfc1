#pragma once

#include <random>

#include "irsim/channel.hpp"
#include "irsim/training.hpp"

namespace irsim {

// Stacked frequency-domain received short symbols, one column per symbol.
struct Scheme1Observation {
    ComplexMatrix Z;  // N0 x I0
};

// Estimated direct and cascaded CIRs.
struct ChannelEstimate {
    ComplexVector d_hat;  // length L
    ComplexMatrix Q_hat;  // L x M
};

/// Received training block: column i is S F (d + Q theta^(i)) plus white
/// noise of per-entry variance sigma2, with S = diag(s) and F the leading L
/// columns of the unitary N0-point DFT.
Scheme1Observation simulate_rx_scheme1(const Scheme1Design& design,
                                       const ChannelRealization& realization, double sigma2,
                                       std::mt19937_64& eng);

/// LS estimate S~^+ Z Psi^+. With an orthogonal design (S^H S = gamma1 I,
/// Psi Psi^H = c I) the pseudo-inverses collapse to scaled adjoints and no
/// matrix inversion is performed; kAuto detects that numerically.
ChannelEstimate estimate_scheme1(const Scheme1Design& design, const Scheme1Observation& obs,
                                 int L, EstimatorPath path = EstimatorPath::kAuto);

/// Expected per-coefficient estimation MSE
/// sigma2 / (L(M+1)) * tr((F^H S^H S F)^-1) * tr((Psi Psi^H)^-1);
/// equals sigma2 / (gamma1 (M+1)) for the optimal design.
double analytic_mse_scheme1(const Scheme1Design& design, double sigma2, int L);

/// Training time in sampling periods: (M+1)(N0 + L_cp).
long training_duration_scheme1(const SystemConfig& cfg);

}  // namespace irsim
