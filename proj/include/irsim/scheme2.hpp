#pragma once

#include <random>

#include "irsim/channel.hpp"
#include "irsim/training.hpp"

namespace irsim {

// How the training reception is generated.
//  kIdealized: y = Xi lambda + v, the linear model the estimator assumes.
//              Physically exact only for a single-tap IRS->user link.
//  kPhysical:  per-sample model applying the reflection at the surface
//              between the two link convolutions; exact for any L2.
enum class RxModel { kIdealized, kPhysical };

struct Scheme2Rx {
    ComplexVector y;  // length N
    // Set when the idealized model was requested with L2 > 1; the model
    // mismatch is the phenomenon under study, not an error.
    bool model_mismatch = false;
};

// Stacked estimate [d; q_1; ...; q_M], length L(M+1).
struct StackedEstimate {
    ComplexVector lambda_hat;
};

/// N x L matrix of the leading L cyclic down-shifts of the pilot.
ComplexMatrix build_pilot_circulant(const ComplexVector& x, int L);

/// Training matrix Xi = [Theta_0 X, ..., Theta_M X], N x L(M+1).
ComplexMatrix build_xi(const Scheme2Design& design, int L, int M);

/// Circular convolution of an N-sample sequence with a short kernel.
ComplexVector circular_convolve(const ComplexVector& x, const ComplexVector& kernel);

/// Stacks a realization into lambda = [d; q_1; ...; q_M].
ComplexVector stack_channel(const ChannelRealization& realization);

/// One received OFDM pilot symbol under sampling-wise reflection variation.
Scheme2Rx simulate_rx_scheme2(const Scheme2Design& design, const LinkSet& links, int L,
                              double sigma2, std::mt19937_64& eng, RxModel model);

/// LS estimate Xi^+ y. Orthogonal designs use Xi^H y / (gamma2 N) evaluated
/// block-wise (the table-look complexity is N L (M+1) multiplications, no
/// matrix is formed); kAuto trusts the design's orthogonality certificate.
StackedEstimate estimate_scheme2(const Scheme2Design& design, const ComplexVector& y, int L,
                                 int M, EstimatorPath path = EstimatorPath::kAuto);

/// Expected per-coefficient MSE sigma2 / (L(M+1)) * tr((Xi^H Xi)^-1);
/// equals sigma2 / (gamma2 N) for the optimal design.
double analytic_mse_scheme2(const Scheme2Design& design, double sigma2, int L, int M);

/// MSE advantage of the sampling-wise scheme over the short-OFDM scheme,
/// 10 log10(gamma2 N / (gamma1 (M+1))) dB.
double mse_gain_db(double gamma1, double gamma2, int N, int M);

/// Training time in sampling periods: N + L_cp.
long training_duration_scheme2(const SystemConfig& cfg);

}  // namespace irsim
