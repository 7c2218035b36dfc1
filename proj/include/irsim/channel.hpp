#pragma once

#include <random>
#include <vector>

#include "irsim/numerics.hpp"

namespace irsim {

// All dimensions and physical parameters of one operating scenario.
// Defaults reproduce the reference setup: a 135-element surface grouped into
// 15 sub-surfaces, 8-tap channels, 128-subcarrier OFDM and an 8-subcarrier
// short training symbol.
struct SystemConfig {
    int N = 128;    // subcarriers per full OFDM symbol
    int N0 = 8;     // subcarriers per short OFDM symbol
    int L = 8;      // superimposed CIR length (samples)
    int L_cp = 8;   // cyclic prefix length (samples)
    int Ld = 8;     // direct-link delay spread
    int L1 = 8;     // BS -> sub-surface delay spread
    int L2 = 1;     // sub-surface -> user delay spread
    int M = 15;     // sub-surface count
    int M0 = 135;   // element count
    int I0 = 16;    // short OFDM symbols spent on training
    long omega = 1; // Zadoff-Chu root

    double P = 0.0;       // total training energy budget (linear); set per operating point
    double sigma2 = 1e-11; // noise power (linear W)

    double D1 = 1.5, D2 = 50.0, D3 = 51.0;          // IRS-user, BS-IRS, BS-user distances (m)
    double alpha1 = 2.2, alpha2 = 2.4, alpha3 = 3.6; // path-loss exponents
    double gamma0 = 1e-3;  // reference path loss at 1 m (linear)
    double kappa = 1e12;   // Rician factor of the IRS-user link (linear)
    double pdp_decay = 2.0; // exponential power-delay-profile decay constant (samples)

    int mu() const { return M0 / M; }  // elements per sub-surface
};

/// Validates every structural invariant of the config; throws ParameterError
/// naming the offending field.
void validate(const SystemConfig& cfg);

// Raw per-realization channels: direct link plus M cascaded-link pairs.
struct LinkSet {
    ComplexVector d;               // length Ld
    std::vector<ComplexVector> g;  // M entries, length L1 each
    std::vector<ComplexVector> u;  // M entries, length L2 each
};

// Derived quantities of one realization: zero-padded direct CIR and the
// L x M matrix of cascaded CIRs, one column per sub-surface.
struct ChannelRealization {
    ComplexVector d;  // length L
    ComplexMatrix Q;  // L x M
};

/// gamma0 * D^(-alpha).
double path_gain(double gamma0, double D, double alpha);

/// Exponentially decaying tap powers p(l) ~ exp(-l/decay), normalized to
/// unit sum.
Eigen::VectorXd exp_pdp(int taps, double decay);

/// Rayleigh-faded CIR: independent circularly-symmetric Gaussian taps with
/// variances total_gain * profile(l).
ComplexVector sample_rayleigh_link(const Eigen::VectorXd& profile, double total_gain,
                                   std::mt19937_64& eng);

/// Rician-faded CIR: tap 0 carries the LoS component with power
/// total_gain * kappa/(kappa+1) and a uniform random phase; the remaining
/// taps split total_gain/(kappa+1) according to the profile restricted to
/// them.
ComplexVector sample_rician_link(const Eigen::VectorXd& profile, double total_gain,
                                 double kappa, std::mt19937_64& eng);

/// Draws one full set of mutually independent links with the configured
/// statistics. The mu-element aggregation gain sits on the BS->sub-surface
/// links so that E|q_m|^2 matches the closed-form received-power model.
LinkSet sample_link_set(const SystemConfig& cfg, std::mt19937_64& eng);

/// Convolves each link pair and zero-pads everything to length L.
ChannelRealization cascade(const LinkSet& links, int L);

/// Superimposed CIR d + Q theta for unit-modulus reflection coefficients.
ComplexVector effective_cir(const ChannelRealization& realization, const ComplexVector& theta);

}  // namespace irsim
