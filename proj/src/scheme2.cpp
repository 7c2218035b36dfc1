#include "irsim/scheme2.hpp"

#include <cmath>

#include "irsim/rng.hpp"

namespace irsim {

ComplexMatrix build_pilot_circulant(const ComplexVector& x, int L) {
    if (L < 1 || L > x.size())
        throw DimensionError("build_pilot_circulant: need 1 <= L <= N");
    ComplexMatrix X(x.size(), L);
    for (int l = 0; l < L; ++l)
        X.col(l) = cyclic_shift(x, l);
    return X;
}

ComplexMatrix build_xi(const Scheme2Design& design, int L, int M) {
    const auto N = design.x.size();
    if (design.theta.rows() != M + 1 || design.theta.cols() != N)
        throw DimensionError("build_xi: theta must be (M+1) x N");
    if (N < static_cast<Eigen::Index>(L) * (M + 1))
        throw InsufficientLengthError("build_xi: N >= L*(M+1) is required");
    const ComplexMatrix X = build_pilot_circulant(design.x, L);
    ComplexMatrix xi(N, static_cast<Eigen::Index>(L) * (M + 1));
    for (int m = 0; m <= M; ++m)
        xi.middleCols(static_cast<Eigen::Index>(m) * L, L) =
            design.theta.row(m).transpose().asDiagonal() * X;
    return xi;
}

ComplexVector circular_convolve(const ComplexVector& x, const ComplexVector& kernel) {
    const auto N = x.size();
    if (N == 0 || kernel.size() == 0 || kernel.size() > N)
        throw DimensionError("circular_convolve: kernel must fit within one period");
    ComplexVector y = ComplexVector::Zero(N);
    for (Eigen::Index l = 0; l < kernel.size(); ++l) {
        if (kernel(l) == std::complex<double>(0.0, 0.0))
            continue;
        for (Eigen::Index n = 0; n < N; ++n) {
            Eigen::Index src = n - l;
            if (src < 0)
                src += N;
            y(n) += kernel(l) * x(src);
        }
    }
    return y;
}

ComplexVector stack_channel(const ChannelRealization& realization) {
    const auto L = realization.d.size();
    const auto M = realization.Q.cols();
    ComplexVector lambda((M + 1) * L);
    lambda.head(L) = realization.d;
    for (Eigen::Index m = 0; m < M; ++m)
        lambda.segment((m + 1) * L, L) = realization.Q.col(m);
    return lambda;
}

Scheme2Rx simulate_rx_scheme2(const Scheme2Design& design, const LinkSet& links, int L,
                              double sigma2, std::mt19937_64& eng, RxModel model) {
    const auto N = design.x.size();
    const auto M = static_cast<int>(links.g.size());
    if (design.theta.rows() != M + 1 || design.theta.cols() != N)
        throw DimensionError("simulate_rx_scheme2: theta must be (M+1) x N");
    if (sigma2 < 0.0)
        throw ParameterError("simulate_rx_scheme2: sigma2 must be non-negative");

    Scheme2Rx rx;
    rx.y = circular_convolve(design.x, links.d);

    if (model == RxModel::kIdealized) {
        const ChannelRealization realization = cascade(links, L);
        for (int m = 0; m < M; ++m) {
            const ComplexVector conv = circular_convolve(design.x, realization.Q.col(m));
            rx.y.array() += design.theta.row(m + 1).transpose().array() * conv.array();
        }
        rx.model_mismatch = links.u.empty() ? false : links.u.front().size() > 1;
    } else {
        // The reflection multiplies the signal at the surface: the pilot
        // first passes through g_m, picks up theta_m sample-by-sample, then
        // propagates through each tap of u_m.
        for (int m = 0; m < M; ++m) {
            const ComplexVector w = circular_convolve(design.x, links.g[m]);
            const auto& u = links.u[m];
            for (Eigen::Index l2 = 0; l2 < u.size(); ++l2) {
                if (u(l2) == std::complex<double>(0.0, 0.0))
                    continue;
                for (Eigen::Index n = 0; n < N; ++n) {
                    Eigen::Index src = n - l2;
                    if (src < 0)
                        src += N;
                    rx.y(n) += u(l2) * design.theta(m + 1, src) * w(src);
                }
            }
        }
    }

    for (Eigen::Index n = 0; n < N; ++n)
        rx.y(n) += complex_gaussian(eng, sigma2);
    return rx;
}

StackedEstimate estimate_scheme2(const Scheme2Design& design, const ComplexVector& y, int L,
                                 int M, EstimatorPath path) {
    const auto N = design.x.size();
    if (y.size() != N)
        throw DimensionError("estimate_scheme2: observation length must equal N");

    bool closed_form = false;
    switch (path) {
        case EstimatorPath::kClosedForm:
            closed_form = true;
            break;
        case EstimatorPath::kAuto:
            closed_form = design.orthogonal;
            break;
        case EstimatorPath::kGeneral:
            break;
    }

    StackedEstimate est;
    if (closed_form) {
        // lambda_hat = Xi^H y / (gamma2 N), evaluated block-by-block.
        const double scale = design.gamma2 * static_cast<double>(N);
        est.lambda_hat.resize(static_cast<Eigen::Index>(L) * (M + 1));
        for (int m = 0; m <= M; ++m) {
            for (int l = 0; l < L; ++l) {
                std::complex<double> acc(0.0, 0.0);
                for (Eigen::Index n = 0; n < N; ++n) {
                    Eigen::Index src = n - l;
                    if (src < 0)
                        src += N;
                    acc += std::conj(design.theta(m, n) * design.x(src)) * y(n);
                }
                est.lambda_hat(static_cast<Eigen::Index>(m) * L + l) = acc / scale;
            }
        }
    } else {
        est.lambda_hat = ls_solve(build_xi(design, L, M), y);
    }
    return est;
}

double analytic_mse_scheme2(const Scheme2Design& design, double sigma2, int L, int M) {
    const ComplexMatrix xi = build_xi(design, L, M);
    const double coeffs = static_cast<double>(L) * (M + 1);
    return sigma2 / coeffs * trace_inverse(xi.adjoint() * xi);
}

double mse_gain_db(double gamma1, double gamma2, int N, int M) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0 || N < 1 || M < 0)
        throw ParameterError("mse_gain_db: arguments must be positive");
    return 10.0 * std::log10(gamma2 * N / (gamma1 * (M + 1)));
}

long training_duration_scheme2(const SystemConfig& cfg) {
    return static_cast<long>(cfg.N) + cfg.L_cp;
}

}  // namespace irsim
