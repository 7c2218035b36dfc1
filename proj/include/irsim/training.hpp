#pragma once

#include <random>
#include <string>

#include "irsim/channel.hpp"
#include "irsim/numerics.hpp"

namespace irsim {

// Which least-squares route the estimators take. kClosedForm is the
// scaled-adjoint pseudo-inverse valid for orthogonal designs; kGeneral is
// the full pivoted solve; kAuto picks per design.
enum class EstimatorPath { kAuto, kClosedForm, kGeneral };

// Training design for the short-OFDM scheme: frequency-domain pilot plus a
// per-symbol reflection pattern. Row 0 of Psi belongs to the direct link and
// is all ones.
struct Scheme1Design {
    ComplexVector s;    // length N0
    ComplexMatrix Psi;  // (M+1) x I0
    double gamma1 = 1.0;  // average per-subcarrier power
};

// Training design for the sampling-wise scheme: time-domain pilot plus a
// per-sample reflection table. Row 0 of theta is the direct link (all ones);
// row m holds theta_m^(0..N-1).
struct Scheme2Design {
    ComplexVector x;      // length N
    ComplexMatrix theta;  // (M+1) x N
    double gamma2 = 1.0;  // average per-sample power
    long omega = 1;
    // Set by the optimal constructor (and by a successful verification);
    // lets estimators use the scaled-adjoint path without re-deriving the
    // orthogonality conditions per call.
    bool orthogonal = false;
};

/// Pilot with s_k = sqrt(gamma1) on every subcarrier.
ComplexVector equipower_pilot(int n0, double gamma1);

/// Rows 0..M of the I0-point DFT coefficient table,
/// Psi(m,i) = exp(-j 2 pi m i / I0). Row 0 is all ones and
/// Psi Psi^H = I0 * I. I0 < 0 selects the square M+1 case.
ComplexMatrix dft_reflection_pattern(int M, int I0 = -1);

/// Row 0 all ones, rows 1..M i.i.d. uniform-phase unit-modulus entries.
ComplexMatrix random_reflection_pattern(int M, int I0, std::mt19937_64& eng);

/// Zadoff-Chu pilot of length N and root omega, scaled to per-sample power
/// gamma2. Zero cyclic autocorrelation at every nonzero lag.
ComplexVector zadoff_chu_pilot(int N, long omega, double gamma2);

/// Reflection table theta_m^(n) = x_(n-mL)/x_n for the Zadoff-Chu pilot,
/// evaluated in closed form; (M+1) x N with an all-ones direct row. Requires
/// N >= L(M+1).
ComplexMatrix sampling_reflection_pattern(int N, int M, int L, long omega);

/// Per-sample reflection table with i.i.d. uniform random phases
/// (benchmark counterpart of sampling_reflection_pattern).
ComplexMatrix random_sampling_reflection_pattern(int N, int M, std::mt19937_64& eng);

/// Constant-modulus pilot sqrt(gamma) * exp(j phi_n) with i.i.d. uniform
/// phases.
ComplexVector random_pilot(int n, double gamma, std::mt19937_64& eng);

// Residuals of the two orthogonality conditions a sampling-wise design must
// satisfy: the pilot Gram deviation |X^H X - gamma2 N I|_F and the largest
// cross-block term max_{m != m'} |X^H Theta_m^H Theta_m' X|_F.
struct OrthogonalityReport {
    double pilot_gram_residual = 0.0;
    double max_cross_residual = 0.0;
    double scale = 0.0;  // gamma2 * N
    bool ok(double tol = 1e-9) const {
        return pilot_gram_residual <= tol * scale && max_cross_residual <= tol * scale;
    }
};

/// Evaluates both conditions for an arbitrary design (the caller decides
/// what to do with the residuals).
OrthogonalityReport verify_scheme2_orthogonality(const Scheme2Design& design, int L, int M);

/// Writes the design's pilot and reflection streams as CSV for external
/// inspection: <prefix>scheme1_pilot.csv (subcarrier, re, im) and
/// <prefix>scheme1_reflection.csv (symbol, then re/im per sub-surface row),
/// full double precision.
void export_scheme1_design_csv(const Scheme1Design& design, const std::string& path_prefix);

/// Same for the sampling-wise design: <prefix>scheme2_pilot.csv
/// (sample, re, im) and <prefix>scheme2_reflection.csv (sample, then re/im
/// per sub-surface row).
void export_scheme2_design_csv(const Scheme2Design& design, const std::string& path_prefix);

// Bundled constructors used by the sweep harness and the CLI.
Scheme1Design make_scheme1_optimal(const SystemConfig& cfg, double gamma1);
Scheme1Design make_scheme1_random_reflection(const SystemConfig& cfg, double gamma1,
                                             std::mt19937_64& eng);
Scheme1Design make_scheme1_random_pilot(const SystemConfig& cfg, double gamma1,
                                        std::mt19937_64& eng);
Scheme2Design make_scheme2_optimal(const SystemConfig& cfg, double gamma2);
Scheme2Design make_scheme2_random_reflection(const SystemConfig& cfg, double gamma2,
                                             std::mt19937_64& eng);
Scheme2Design make_scheme2_random_pilot(const SystemConfig& cfg, double gamma2,
                                        std::mt19937_64& eng);

}  // namespace irsim
