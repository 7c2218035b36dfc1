#include "irsim/training.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>

#include "irsim/rng.hpp"

namespace irsim {

namespace {

// exp(j * pi * num / den) with the integer ratio reduced mod 2*den, so the
// phase argument stays in [0, 2 pi) and large quadratic exponents lose no
// precision.
std::complex<double> polar_pi_ratio(long long num, long long den) {
    long long r = num % (2 * den);
    if (r < 0)
        r += 2 * den;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

// Quadratic Zadoff-Chu exponent: n^2 for even N, n(n+1) for odd N. The odd
// branch keeps the sequence exactly N-periodic, which the n^2 form is not.
long long zc_exponent(long long n, long long N) {
    return (N % 2 == 0) ? n * n : n * (n + 1);
}

// Exponent difference e(n) - e(n - k); theta_m^(n) = exp(j pi omega diff / N).
long long zc_exponent_diff(long long n, long long k, long long N) {
    return (N % 2 == 0) ? k * (2 * n - k) : k * (2 * n - k + 1);
}

void append_double(std::string& line, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    line.append(buf, res.ptr);
}

// One row per index; a re/im column pair per stream (matrix column = one
// index, matrix row = one stream).
void write_stream_csv(const std::string& path, const char* index_name,
                      const std::vector<std::string>& stream_names, const ComplexMatrix& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FileError("design export: cannot open " + path);
    std::string text = index_name;
    for (const auto& name : stream_names) {
        text += ',' + name + "_re," + name + "_im";
    }
    text += '\n';
    for (Eigen::Index n = 0; n < rows.cols(); ++n) {
        text += std::to_string(n);
        for (Eigen::Index s = 0; s < rows.rows(); ++s) {
            text += ',';
            append_double(text, rows(s, n).real());
            text += ',';
            append_double(text, rows(s, n).imag());
        }
        text += '\n';
    }
    out << text;
    if (!out)
        throw FileError("design export: write failed for " + path);
}

std::vector<std::string> surface_stream_names(Eigen::Index rows) {
    std::vector<std::string> names;
    for (Eigen::Index m = 0; m < rows; ++m)
        names.push_back("theta" + std::to_string(m));
    return names;
}

}  // namespace

ComplexVector equipower_pilot(int n0, double gamma1) {
    if (n0 < 1)
        throw DimensionError("equipower_pilot: length must be >= 1");
    if (gamma1 <= 0.0)
        throw ParameterError("equipower_pilot: gamma1 must be positive");
    return ComplexVector::Constant(n0, std::sqrt(gamma1));
}

ComplexMatrix dft_reflection_pattern(int M, int I0) {
    if (M < 1)
        throw DimensionError("dft_reflection_pattern: M must be >= 1");
    if (I0 < 0)
        I0 = M + 1;
    if (I0 < M + 1)
        throw DimensionError("dft_reflection_pattern: need I0 >= M+1");
    ComplexMatrix psi(M + 1, I0);
    for (int m = 0; m <= M; ++m)
        for (int i = 0; i < I0; ++i)
            psi(m, i) = polar_pi_ratio(-2LL * m * i, I0);
    return psi;
}

ComplexMatrix random_reflection_pattern(int M, int I0, std::mt19937_64& eng) {
    if (M < 1 || I0 < M + 1)
        throw DimensionError("random_reflection_pattern: need I0 >= M+1 >= 2");
    ComplexMatrix psi(M + 1, I0);
    psi.row(0).setOnes();
    for (int m = 1; m <= M; ++m)
        for (int i = 0; i < I0; ++i)
            psi(m, i) = unit_phasor(eng);
    return psi;
}

ComplexVector zadoff_chu_pilot(int N, long omega, double gamma2) {
    if (N < 1)
        throw DimensionError("zadoff_chu_pilot: length must be >= 1");
    if (gamma2 <= 0.0)
        throw ParameterError("zadoff_chu_pilot: gamma2 must be positive");
    if (std::gcd(std::abs(omega), static_cast<long>(N)) != 1)
        throw RootError("zadoff_chu_pilot: omega must be coprime to N");
    const double amp = std::sqrt(gamma2);
    ComplexVector x(N);
    for (int n = 0; n < N; ++n)
        x(n) = amp * polar_pi_ratio(-omega * zc_exponent(n, N), N);
    return x;
}

ComplexMatrix sampling_reflection_pattern(int N, int M, int L, long omega) {
    if (M < 1 || L < 1)
        throw DimensionError("sampling_reflection_pattern: M and L must be >= 1");
    if (N < L * (M + 1))
        throw InsufficientLengthError(
            "sampling_reflection_pattern: N >= L*(M+1) is required to fit all "
            "shifted pilot blocks");
    if (std::gcd(std::abs(omega), static_cast<long>(N)) != 1)
        throw RootError("sampling_reflection_pattern: omega must be coprime to N");
    ComplexMatrix theta(M + 1, N);
    theta.row(0).setOnes();
    for (int m = 1; m <= M; ++m) {
        const long long k = static_cast<long long>(m) * L;
        for (int n = 0; n < N; ++n)
            theta(m, n) = polar_pi_ratio(omega * zc_exponent_diff(n, k, N), N);
    }
    return theta;
}

ComplexMatrix random_sampling_reflection_pattern(int N, int M, std::mt19937_64& eng) {
    if (N < 1 || M < 1)
        throw DimensionError("random_sampling_reflection_pattern: N and M must be >= 1");
    ComplexMatrix theta(M + 1, N);
    theta.row(0).setOnes();
    for (int m = 1; m <= M; ++m)
        for (int n = 0; n < N; ++n)
            theta(m, n) = unit_phasor(eng);
    return theta;
}

ComplexVector random_pilot(int n, double gamma, std::mt19937_64& eng) {
    if (n < 1)
        throw DimensionError("random_pilot: length must be >= 1");
    if (gamma <= 0.0)
        throw ParameterError("random_pilot: gamma must be positive");
    const double amp = std::sqrt(gamma);
    ComplexVector x(n);
    for (int i = 0; i < n; ++i)
        x(i) = amp * unit_phasor(eng);
    return x;
}

OrthogonalityReport verify_scheme2_orthogonality(const Scheme2Design& design, int L, int M) {
    const auto N = design.x.size();
    if (design.theta.rows() != M + 1 || design.theta.cols() != N)
        throw DimensionError("verify_scheme2_orthogonality: theta must be (M+1) x N");
    ComplexMatrix X(N, L);
    for (int l = 0; l < L; ++l)
        X.col(l) = cyclic_shift(design.x, l);

    OrthogonalityReport report;
    report.scale = design.gamma2 * static_cast<double>(N);
    const ComplexMatrix gram = X.adjoint() * X;
    report.pilot_gram_residual =
        (gram - report.scale * ComplexMatrix::Identity(L, L)).norm();
    for (int m = 0; m <= M; ++m) {
        for (int mp = m + 1; mp <= M; ++mp) {
            // X^H Theta_m^H Theta_m' X with the diagonal products collapsed
            // into one per-sample weight.
            const ComplexVector w =
                design.theta.row(m).conjugate().cwiseProduct(design.theta.row(mp)).transpose();
            const ComplexMatrix cross = X.adjoint() * w.asDiagonal() * X;
            report.max_cross_residual = std::max(report.max_cross_residual, cross.norm());
        }
    }
    return report;
}

void export_scheme1_design_csv(const Scheme1Design& design, const std::string& path_prefix) {
    write_stream_csv(path_prefix + "scheme1_pilot.csv", "subcarrier", {"s"},
                     design.s.transpose());
    write_stream_csv(path_prefix + "scheme1_reflection.csv", "symbol",
                     surface_stream_names(design.Psi.rows()), design.Psi);
}

void export_scheme2_design_csv(const Scheme2Design& design, const std::string& path_prefix) {
    write_stream_csv(path_prefix + "scheme2_pilot.csv", "sample", {"x"},
                     design.x.transpose());
    write_stream_csv(path_prefix + "scheme2_reflection.csv", "sample",
                     surface_stream_names(design.theta.rows()), design.theta);
}

Scheme1Design make_scheme1_optimal(const SystemConfig& cfg, double gamma1) {
    return {equipower_pilot(cfg.N0, gamma1), dft_reflection_pattern(cfg.M, cfg.I0), gamma1};
}

Scheme1Design make_scheme1_random_reflection(const SystemConfig& cfg, double gamma1,
                                             std::mt19937_64& eng) {
    return {equipower_pilot(cfg.N0, gamma1), random_reflection_pattern(cfg.M, cfg.I0, eng),
            gamma1};
}

Scheme1Design make_scheme1_random_pilot(const SystemConfig& cfg, double gamma1,
                                        std::mt19937_64& eng) {
    return {random_pilot(cfg.N0, gamma1, eng), dft_reflection_pattern(cfg.M, cfg.I0), gamma1};
}

Scheme2Design make_scheme2_optimal(const SystemConfig& cfg, double gamma2) {
    Scheme2Design design{zadoff_chu_pilot(cfg.N, cfg.omega, gamma2),
                         sampling_reflection_pattern(cfg.N, cfg.M, cfg.L, cfg.omega), gamma2,
                         cfg.omega, true};
    return design;
}

Scheme2Design make_scheme2_random_reflection(const SystemConfig& cfg, double gamma2,
                                             std::mt19937_64& eng) {
    return {zadoff_chu_pilot(cfg.N, cfg.omega, gamma2),
            random_sampling_reflection_pattern(cfg.N, cfg.M, eng), gamma2, cfg.omega, false};
}

Scheme2Design make_scheme2_random_pilot(const SystemConfig& cfg, double gamma2,
                                        std::mt19937_64& eng) {
    return {random_pilot(cfg.N, gamma2, eng),
            sampling_reflection_pattern(cfg.N, cfg.M, cfg.L, cfg.omega), gamma2, cfg.omega,
            false};
}

}  // namespace irsim
