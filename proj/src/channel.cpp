#include "irsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "irsim/rng.hpp"

namespace irsim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok)
        throw ParameterError("config: " + what);
}

}  // namespace

void validate(const SystemConfig& cfg) {
    require(cfg.M >= 1, "M must be >= 1");
    require(cfg.M0 >= 1 && cfg.M0 % cfg.M == 0, "M0 must be a positive multiple of M");
    require(cfg.Ld >= 1 && cfg.L1 >= 1 && cfg.L2 >= 1, "delay spreads must be >= 1");
    require(cfg.L == std::max(cfg.Ld, cfg.L1 + cfg.L2 - 1),
            "L must equal max(Ld, L1 + L2 - 1)");
    require(cfg.L_cp >= cfg.L, "L_cp must be >= L");
    require(cfg.N0 >= cfg.L, "N0 must be >= L");
    require(cfg.N >= cfg.L * (cfg.M + 1), "N must be >= L*(M+1)");
    require(cfg.I0 >= cfg.M + 1, "I0 must be >= M+1");
    require(cfg.omega >= 1, "omega must be >= 1");
    require(std::gcd(cfg.omega, static_cast<long>(cfg.N)) == 1, "omega must be coprime to N");
    require(cfg.sigma2 > 0.0, "sigma2 must be positive");
    require(cfg.P >= 0.0, "P must be non-negative");
    require(cfg.D1 > 0.0 && cfg.D2 > 0.0 && cfg.D3 > 0.0, "distances must be positive");
    require(cfg.alpha1 > 0.0 && cfg.alpha2 > 0.0 && cfg.alpha3 > 0.0,
            "path-loss exponents must be positive");
    require(cfg.gamma0 > 0.0, "gamma0 must be positive");
    require(cfg.kappa >= 0.0, "kappa must be non-negative");
    require(cfg.pdp_decay > 0.0, "pdp_decay must be positive");
}

double path_gain(double gamma0, double D, double alpha) {
    if (gamma0 <= 0.0 || D <= 0.0 || alpha <= 0.0)
        throw ParameterError("path_gain: arguments must be positive");
    return gamma0 * std::pow(D, -alpha);
}

Eigen::VectorXd exp_pdp(int taps, double decay) {
    if (taps < 1)
        throw ParameterError("exp_pdp: need at least one tap");
    if (decay <= 0.0)
        throw ParameterError("exp_pdp: decay must be positive");
    Eigen::VectorXd p(taps);
    for (int l = 0; l < taps; ++l)
        p(l) = std::exp(-static_cast<double>(l) / decay);
    return p / p.sum();
}

ComplexVector sample_rayleigh_link(const Eigen::VectorXd& profile, double total_gain,
                                   std::mt19937_64& eng) {
    if (total_gain <= 0.0)
        throw ParameterError("sample_rayleigh_link: total_gain must be positive");
    ComplexVector h(profile.size());
    for (Eigen::Index l = 0; l < profile.size(); ++l)
        h(l) = complex_gaussian(eng, total_gain * profile(l));
    return h;
}

ComplexVector sample_rician_link(const Eigen::VectorXd& profile, double total_gain,
                                 double kappa, std::mt19937_64& eng) {
    if (total_gain <= 0.0)
        throw ParameterError("sample_rician_link: total_gain must be positive");
    if (kappa < 0.0)
        throw ParameterError("sample_rician_link: kappa must be non-negative");
    const Eigen::Index taps = profile.size();
    ComplexVector h(taps);
    const double los_power = total_gain * kappa / (kappa + 1.0);
    h(0) = std::sqrt(los_power) * unit_phasor(eng);
    if (taps > 1) {
        // NLoS taps share total_gain/(kappa+1) according to the profile
        // restricted to them.
        const double nlos_total = total_gain / (kappa + 1.0);
        const double rest = profile.tail(taps - 1).sum();
        for (Eigen::Index l = 1; l < taps; ++l)
            h(l) = complex_gaussian(eng, nlos_total * profile(l) / rest);
    }
    return h;
}

LinkSet sample_link_set(const SystemConfig& cfg, std::mt19937_64& eng) {
    LinkSet links;
    const double gain_d = path_gain(cfg.gamma0, cfg.D3, cfg.alpha3);
    const double gain_g = cfg.mu() * path_gain(cfg.gamma0, cfg.D2, cfg.alpha2);
    const double gain_u = path_gain(cfg.gamma0, cfg.D1, cfg.alpha1);
    const Eigen::VectorXd pdp_d = exp_pdp(cfg.Ld, cfg.pdp_decay);
    const Eigen::VectorXd pdp_g = exp_pdp(cfg.L1, cfg.pdp_decay);
    const Eigen::VectorXd pdp_u = exp_pdp(cfg.L2, cfg.pdp_decay);

    links.d = sample_rayleigh_link(pdp_d, gain_d, eng);
    links.g.reserve(cfg.M);
    links.u.reserve(cfg.M);
    for (int m = 0; m < cfg.M; ++m)
        links.g.push_back(sample_rayleigh_link(pdp_g, gain_g, eng));
    for (int m = 0; m < cfg.M; ++m)
        links.u.push_back(sample_rician_link(pdp_u, gain_u, cfg.kappa, eng));
    return links;
}

ChannelRealization cascade(const LinkSet& links, int L) {
    const auto M = static_cast<Eigen::Index>(links.g.size());
    if (links.u.size() != links.g.size())
        throw DimensionError("cascade: g/u list length mismatch");
    if (links.d.size() > L)
        throw DimensionError("cascade: L smaller than direct delay spread");
    ChannelRealization real;
    real.d = ComplexVector::Zero(L);
    real.d.head(links.d.size()) = links.d;
    real.Q = ComplexMatrix::Zero(L, M);
    for (Eigen::Index m = 0; m < M; ++m) {
        const ComplexVector q = linear_convolve(links.g[m], links.u[m]);
        if (q.size() > L)
            throw DimensionError("cascade: L smaller than cascaded delay spread");
        real.Q.col(m).head(q.size()) = q;
    }
    return real;
}

ComplexVector effective_cir(const ChannelRealization& realization, const ComplexVector& theta) {
    if (theta.size() != realization.Q.cols())
        throw DimensionError("effective_cir: theta length must equal sub-surface count");
    for (Eigen::Index m = 0; m < theta.size(); ++m)
        if (std::abs(std::abs(theta(m)) - 1.0) > 1e-9)
            throw ReflectionError("effective_cir: reflection coefficient not unit-modulus");
    return realization.d + realization.Q * theta;
}

}  // namespace irsim
