#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "irsim/rng.hpp"
#include "irsim/training.hpp"

using irsim::ComplexMatrix;
using irsim::ComplexVector;
using cplx = std::complex<double>;

namespace {

// Direct cyclic autocorrelation of x at lag k, written out longhand.
cplx cyclic_autocorr(const ComplexVector& x, int k) {
    const auto n = x.size();
    cplx acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index j = (i - k) % n;
        if (j < 0)
            j += n;
        acc += x(i) * std::conj(x(j));
    }
    return acc;
}

}  // namespace

TEST_CASE("equipower_pilot") {
    const auto one = irsim::equipower_pilot(1, 1.0);
    CHECK(one.size() == 1);
    CHECK(std::abs(one(0) - cplx(1, 0)) < 1e-15);

    const auto s = irsim::equipower_pilot(8, 4.0);
    for (int k = 0; k < 8; ++k)
        CHECK(std::abs(s(k) - cplx(2, 0)) < 1e-15);

    // S^H S = gamma1 I for the diagonal pilot matrix.
    const ComplexMatrix gram =
        ComplexMatrix(s.asDiagonal()).adjoint() * ComplexMatrix(s.asDiagonal());
    CHECK((gram - 4.0 * ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dft_reflection_pattern") {
    const auto psi1 = irsim::dft_reflection_pattern(1);
    CHECK(psi1.rows() == 2);
    CHECK(psi1.cols() == 2);
    CHECK(std::abs(psi1(0, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(psi1(0, 1) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(psi1(1, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(psi1(1, 1) - cplx(-1, 0)) < 1e-15);

    for (int M : {1, 3, 15, 31}) {
        const auto psi = irsim::dft_reflection_pattern(M);
        CHECK((psi.row(0).array() - 1.0).abs().maxCoeff() == 0.0);
        const ComplexMatrix gram = psi * psi.adjoint();
        CHECK((gram - static_cast<double>(M + 1) * ComplexMatrix::Identity(M + 1, M + 1))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }

    // Wide pattern: rows of the I0-point DFT stay orthogonal.
    const auto wide = irsim::dft_reflection_pattern(3, 6);
    CHECK((wide * wide.adjoint() - 6.0 * ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("random_reflection_pattern") {
    auto eng = irsim::make_stream({200});
    const auto psi = irsim::random_reflection_pattern(15, 16, eng);
    CHECK(psi.rows() == 16);
    CHECK(psi.cols() == 16);
    CHECK((psi.row(0).array() - 1.0).abs().maxCoeff() == 0.0);
    CHECK((psi.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(psi);
    CHECK(qr.rank() == 16);

    auto eng_a = irsim::make_stream({7, 8});
    auto eng_b = irsim::make_stream({7, 8});
    const auto pa = irsim::random_reflection_pattern(3, 4, eng_a);
    const auto pb = irsim::random_reflection_pattern(3, 4, eng_b);
    CHECK((pa - pb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zadoff_chu_pilot") {
    const auto trivial = irsim::zadoff_chu_pilot(1, 1, 4.0);
    CHECK(trivial.size() == 1);
    CHECK(std::abs(trivial(0) - cplx(2, 0)) < 1e-15);

    // N = 4, omega = 1: [1, e^{-j pi/4}, -1, e^{-j pi/4}].
    const auto x4 = irsim::zadoff_chu_pilot(4, 1, 1.0);
    CHECK(std::abs(x4(0) - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(x4(1) - std::polar(1.0, -std::numbers::pi / 4)) < 1e-14);
    CHECK(std::abs(x4(2) - cplx(-1, 0)) < 1e-14);
    CHECK(std::abs(x4(3) - std::polar(1.0, -std::numbers::pi / 4)) < 1e-14);
    CHECK(std::abs(cyclic_autocorr(x4, 1)) < 1e-14);

    // Perfect autocorrelation at every nonzero lag, even and odd lengths.
    struct Case {
        int n;
        long omega;
        double gamma2;
    } cases[] = {{128, 1, 2.0}, {128, 3, 1.0}, {63, 2, 1.0}};
    for (const auto& c : cases) {
        const auto x = irsim::zadoff_chu_pilot(c.n, c.omega, c.gamma2);
        CHECK((x.cwiseAbs().array() - std::sqrt(c.gamma2)).abs().maxCoeff() < 1e-12);
        for (int k = 1; k < c.n; ++k)
            CHECK(std::abs(cyclic_autocorr(x, k)) <= 1e-9 * c.gamma2 * c.n);
        CHECK(std::abs(cyclic_autocorr(x, 0) - cplx(c.gamma2 * c.n, 0)) < 1e-9 * c.gamma2 * c.n);
    }

    CHECK_THROWS_AS(irsim::zadoff_chu_pilot(128, 2, 1.0), irsim::RootError);
}

TEST_CASE("sampling_reflection_pattern closed form") {
    // Direct row is all ones for any size.
    const auto theta = irsim::sampling_reflection_pattern(128, 15, 8, 1);
    CHECK(theta.rows() == 16);
    CHECK(theta.cols() == 128);
    CHECK((theta.row(0).array() - 1.0).abs().maxCoeff() == 0.0);
    CHECK((theta.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);

    // N = 4, omega = 1, L = 1, m = 1: theta(0) = e^{-j pi/4}, theta(1) = e^{+j pi/4}.
    const auto small = irsim::sampling_reflection_pattern(4, 1, 1, 1);
    CHECK(std::abs(small(1, 0) - std::polar(1.0, -std::numbers::pi / 4)) < 1e-14);
    CHECK(std::abs(small(1, 1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-14);

    // Implicit periodicity: the closed-form phase gains an integer multiple
    // of 2 pi over one period, so entry n equals the pilot ratio at n mod N.
    const auto x = irsim::zadoff_chu_pilot(128, 1, 1.0);
    for (int m : {1, 7, 15}) {
        for (int l = 0; l < 8; ++l) {
            for (int n = 0; n < 128; ++n) {
                const int shifted = ((n - m * 8 - l) % 128 + 128) % 128;
                const int base = ((n - l) % 128 + 128) % 128;
                const cplx ratio = x(shifted) / x(base);
                CHECK(std::abs(ratio - theta(m, base)) < 1e-10);
            }
        }
    }

    CHECK_THROWS_AS(irsim::sampling_reflection_pattern(120, 15, 8, 1),
                    irsim::InsufficientLengthError);
    CHECK_THROWS_AS(irsim::sampling_reflection_pattern(128, 15, 8, 4), irsim::RootError);
}

TEST_CASE("random_pilot") {
    auto eng = irsim::make_stream({201});
    const auto x = irsim::random_pilot(64, 2.0, eng);
    CHECK((x.cwiseAbs().array() - std::sqrt(2.0)).abs().maxCoeff() < 1e-12);
    CHECK(std::abs(cyclic_autocorr(x, 1)) > 1e-6);  // no autocorrelation structure

    auto eng_a = irsim::make_stream({5});
    auto eng_b = irsim::make_stream({5});
    CHECK((irsim::random_pilot(16, 1.0, eng_a) - irsim::random_pilot(16, 1.0, eng_b))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("verify_scheme2_orthogonality") {
    irsim::SystemConfig cfg;  // N=128, L=8, M=15, omega=1

    const auto optimal = irsim::make_scheme2_optimal(cfg, 2.0);
    CHECK(optimal.orthogonal);
    const auto report = irsim::verify_scheme2_orthogonality(optimal, cfg.L, cfg.M);
    CHECK(report.scale == doctest::Approx(2.0 * 128.0));
    CHECK(report.pilot_gram_residual <= 1e-9 * report.scale);
    CHECK(report.max_cross_residual <= 1e-9 * report.scale);
    CHECK(report.ok());

    // Random pilot with the closed-form reflection table breaks the pilot
    // Gram condition.
    auto eng = irsim::make_stream({202});
    const auto rnd = irsim::make_scheme2_random_pilot(cfg, 2.0, eng);
    const auto bad = irsim::verify_scheme2_orthogonality(rnd, cfg.L, cfg.M);
    CHECK(bad.pilot_gram_residual > 1e-3 * bad.scale);
    CHECK_FALSE(bad.ok());

    // Degenerate M = 0: only the pilot condition applies.
    irsim::Scheme2Design direct_only;
    direct_only.x = irsim::zadoff_chu_pilot(16, 1, 1.0);
    direct_only.theta = ComplexMatrix::Ones(1, 16);
    direct_only.gamma2 = 1.0;
    const auto solo = irsim::verify_scheme2_orthogonality(direct_only, 4, 0);
    CHECK(solo.max_cross_residual == 0.0);
    CHECK(solo.pilot_gram_residual <= 1e-9 * solo.scale);
}

TEST_CASE("design stream export") {
    namespace fs = std::filesystem;
    irsim::SystemConfig cfg;
    const auto prefix = (fs::temp_directory_path() / "irsim_design_").string();

    irsim::export_scheme1_design_csv(irsim::make_scheme1_optimal(cfg, 1.0), prefix);
    irsim::export_scheme2_design_csv(irsim::make_scheme2_optimal(cfg, 2.0), prefix);

    struct Expect {
        const char* suffix;
        long lines;  // header + one row per index
    } files[] = {
        {"scheme1_pilot.csv", 1 + 8},
        {"scheme1_reflection.csv", 1 + 16},
        {"scheme2_pilot.csv", 1 + 128},
        {"scheme2_reflection.csv", 1 + 128},
    };
    for (const auto& f : files) {
        std::ifstream in(prefix + f.suffix);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == f.lines);
        fs::remove(prefix + f.suffix);
    }

    CHECK_THROWS_AS(
        irsim::export_scheme1_design_csv(irsim::make_scheme1_optimal(cfg, 1.0), "/no_dir_x/p_"),
        irsim::FileError);
}

TEST_CASE("design constructors wire gamma through") {
    irsim::SystemConfig cfg;
    auto eng = irsim::make_stream({203});

    const auto s1 = irsim::make_scheme1_optimal(cfg, 0.25);
    CHECK(s1.s.size() == cfg.N0);
    CHECK(s1.Psi.rows() == cfg.M + 1);
    CHECK(s1.Psi.cols() == cfg.I0);
    CHECK(std::norm(s1.s(0)) == doctest::Approx(0.25).epsilon(1e-12));

    const auto s1r = irsim::make_scheme1_random_reflection(cfg, 0.25, eng);
    CHECK((s1r.Psi.row(0).array() - 1.0).abs().maxCoeff() == 0.0);

    const auto s2 = irsim::make_scheme2_optimal(cfg, 0.5);
    CHECK(s2.x.size() == cfg.N);
    CHECK(s2.theta.rows() == cfg.M + 1);
    CHECK(s2.orthogonal);

    const auto s2r = irsim::make_scheme2_random_reflection(cfg, 0.5, eng);
    CHECK_FALSE(s2r.orthogonal);
    CHECK((s2r.theta.row(0).array() - 1.0).abs().maxCoeff() == 0.0);
}
