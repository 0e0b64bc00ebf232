#include <catch_amalgamated.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <limits>

#include "jsr/likelihood.hpp"
#include "jsr/model.hpp"
#include "jsr/rng.hpp"
#include "oracles.hpp"

using namespace jsr;

namespace {

// Small helper: a context with random Gaussian phi and bits from a random
// sign pattern, all drawn from one named stream.
LikelihoodContext random_context(int m, int n, int p, double sigma_v,
                                 std::uint64_t seed) {
    RngEngine rng = make_stream(seed);
    MeasurementMatrix phi = generate_measurement_matrix(m, n, 1.0 / m, rng);
    Eigen::MatrixXd raw(m, p);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < m; ++i) raw(i, j) = gauss(rng);
    return LikelihoodContext(std::move(phi), quantize(raw), sigma_v);
}

}  // namespace

TEST_CASE("log_normal_cdf matches frozen high-precision values") {
    REQUIRE(log_normal_cdf(0.0) ==
            Catch::Approx(-0.6931471805599453).margin(1e-15));
    REQUIRE(log_normal_cdf(1.0) ==
            Catch::Approx(-0.1727537790234499).margin(1e-14));
    REQUIRE(log_normal_cdf(5.0) ==
            Catch::Approx(-2.866516129637636e-7).epsilon(1e-10));
    REQUIRE(log_normal_cdf(-5.0) ==
            Catch::Approx(-15.064998393988726).margin(1e-12));
    REQUIRE(log_normal_cdf(-8.0) ==
            Catch::Approx(-35.01343715991455).margin(1e-10));
    // Asymptotic branch: the truncation error of the 4-term series shrinks
    // like 105/t^8, hence the per-point margins.
    REQUIRE(log_normal_cdf(-10.0) ==
            Catch::Approx(-53.23128515051247).margin(2e-6));
    REQUIRE(log_normal_cdf(-20.0) ==
            Catch::Approx(-203.91715537109726).margin(1e-8));
    REQUIRE(log_normal_cdf(-30.0) ==
            Catch::Approx(-454.3212439563432).margin(1e-9));
    REQUIRE(log_normal_cdf(-40.0) ==
            Catch::Approx(-804.6084420137538).margin(1e-9));
    REQUIRE(log_normal_cdf(-50.0) ==
            Catch::Approx(-1254.8313611394199).margin(1e-9));
    REQUIRE(log_normal_cdf(-100.0) ==
            Catch::Approx(-5005.524208694205).margin(1e-9));
    REQUIRE(log_normal_cdf(-300.0) ==
            Catch::Approx(-45006.62273211866).margin(1e-7));
}

TEST_CASE("log_normal_cdf agrees with the long double erfc oracle on a grid") {
    for (double t = -140.0; t <= 40.0; t += 0.0917) {
        const double ours = log_normal_cdf(t);
        const double ref = oracle::log_normal_cdf(t);
        REQUIRE(std::abs(ours - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("log_normal_cdf complements sum to one") {
    for (double t = -5.0; t <= 5.0; t += 0.173) {
        const double total = std::exp(log_normal_cdf(t)) + std::exp(log_normal_cdf(-t));
        REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("log_normal_cdf is monotone increasing and never underflows") {
    double prev = log_normal_cdf(-120.0);
    REQUIRE(std::isfinite(prev));
    for (double t = -120.0 + 0.01371; t <= 42.0; t += 0.01371) {
        const double cur = log_normal_cdf(t);
        REQUIRE(std::isfinite(cur));
        // Phi(t) rounds to 1 near t = 8.3, after which the log sits at zero.
        if (t < 8.0) {
            REQUIRE(cur > prev);
        } else {
            REQUIRE(cur >= prev);
        }
        prev = cur;
    }
    REQUIRE(std::isfinite(log_normal_cdf(-38.0)));
    REQUIRE(std::isfinite(log_normal_cdf(-1e4)));
    REQUIRE(std::isfinite(log_normal_cdf(-1e100)));
    REQUIRE(log_normal_cdf(1e300) == 0.0);
}

TEST_CASE("log_normal_cdf rejects NaN") {
    REQUIRE_THROWS_AS(log_normal_cdf(std::numeric_limits<double>::quiet_NaN()),
                      std::invalid_argument);
}

TEST_CASE("nll of the zero matrix is (M*P) log 2") {
    RngEngine rng = make_stream(20);
    MeasurementMatrix phi = generate_measurement_matrix(2, 5, 1.0, rng);
    Eigen::MatrixXd raw = Eigen::MatrixXd::Random(2, 3);
    LikelihoodContext ctx(std::move(phi), quantize(raw), 1.0);
    REQUIRE(nll(Eigen::MatrixXd::Zero(5, 3), ctx) ==
            Catch::Approx(4.158883083359672).margin(1e-12));
}

TEST_CASE("nll of a single agreeing measurement is -log cdf(1)") {
    MeasurementMatrix phi{Eigen::MatrixXd::Ones(1, 1)};
    BitMatrix z{Eigen::MatrixXi::Ones(1, 1)};
    LikelihoodContext ctx(phi, z, 1.0);
    Eigen::MatrixXd s(1, 1);
    s << 1.0;  // x tilde = 1
    REQUIRE(nll(s, ctx) == Catch::Approx(0.1727537790234499).margin(1e-14));
}

TEST_CASE("nll decreases along the scaling ray of a consistent signal") {
    RngEngine rng = make_stream(21);
    MeasurementMatrix phi = generate_measurement_matrix(6, 9, 1.0, rng);
    auto [sig, support] = generate_signal_matrix(9, 2, 3, rng);
    const BitMatrix z = quantize(phi.data * sig.data);  // noiseless bits
    LikelihoodContext ctx(phi, z, 1.0);

    const double f1 = nll(1.0 * sig.data, ctx);
    const double f10 = nll(10.0 * sig.data, ctx);
    const double f100 = nll(100.0 * sig.data, ctx);
    REQUIRE(f1 > f10);
    REQUIRE(f10 > f100);
    REQUIRE(f100 >= 0.0);
}

TEST_CASE("nll is nonnegative and finite at extreme scaled arguments") {
    const LikelihoodContext ctx = random_context(4, 6, 2, 1.0, 22);
    const Eigen::MatrixXd s = 300.0 * Eigen::MatrixXd::Ones(6, 2);
    const double v = nll(s, ctx);
    REQUIRE(std::isfinite(v));
    REQUIRE(v >= 0.0);
    REQUIRE(nll(Eigen::MatrixXd::Zero(6, 2), ctx) >= 0.0);
}

TEST_CASE("nll rejects mismatched dimensions") {
    const LikelihoodContext ctx = random_context(4, 6, 2, 1.0, 23);
    REQUIRE_THROWS_AS(nll(Eigen::MatrixXd::Zero(5, 2), ctx), std::invalid_argument);
    REQUIRE_THROWS_AS(nll(Eigen::MatrixXd::Zero(6, 3), ctx), std::invalid_argument);
}

TEST_CASE("nll is convex in the projected matrix") {
    RngEngine rng = make_stream(24);
    MeasurementMatrix phi{Eigen::MatrixXd::Identity(6, 6)};
    Eigen::MatrixXd raw(6, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 6; ++i) raw(i, j) = gauss(rng);
    LikelihoodContext ctx(phi, quantize(raw), 0.7);

    for (int rep = 0; rep < 20; ++rep) {
        Eigen::MatrixXd x1(6, 2), x2(6, 2);
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 6; ++i) {
                x1(i, j) = 2.0 * gauss(rng);
                x2(i, j) = 2.0 * gauss(rng);
            }
        for (double theta : {0.25, 0.5, 0.75}) {
            const double lhs = nll(theta * x1 + (1.0 - theta) * x2, ctx);
            const double rhs = theta * nll(x1, ctx) + (1.0 - theta) * nll(x2, ctx);
            REQUIRE(lhs <= rhs + 1e-10);
        }
    }
}

TEST_CASE("grad_x at zero equals +/- sqrt(2/pi)") {
    MeasurementMatrix phi{Eigen::MatrixXd::Ones(2, 1)};
    Eigen::MatrixXi bits(2, 1);
    bits << 1, 0;
    LikelihoodContext ctx(phi, BitMatrix{bits}, 1.0);
    const Eigen::MatrixXd g = grad_x(Eigen::MatrixXd::Zero(2, 1), ctx);
    REQUIRE(g(0, 0) == Catch::Approx(-0.7978845608028654).margin(1e-14));
    REQUIRE(g(1, 0) == Catch::Approx(0.7978845608028654).margin(1e-14));
}

TEST_CASE("grad_x stays finite and correctly signed deep in the tail") {
    MeasurementMatrix phi{Eigen::MatrixXd::Ones(1, 1)};
    BitMatrix z{Eigen::MatrixXi::Ones(1, 1)};
    const double sigma = 0.5;
    LikelihoodContext ctx(phi, z, sigma);

    Eigen::MatrixXd x(1, 1);
    x << -15.0;  // x tilde = -30
    const Eigen::MatrixXd g = grad_x(x, ctx);
    // Magnitude approaches |x tilde| / sigma, sign negative where z = 1.
    REQUIRE(g(0, 0) == Catch::Approx(-30.033259667433677 / sigma).epsilon(1e-9));

    x << -150.0;  // x tilde = -300
    REQUIRE(std::isfinite(grad_x(x, ctx)(0, 0)));
    x << 150.0;
    REQUIRE(std::isfinite(grad_x(x, ctx)(0, 0)));
    x << -1e12;  // beyond the log-space ratio, limit branch
    REQUIRE(grad_x(x, ctx)(0, 0) == Catch::Approx(-2e12 / sigma).epsilon(1e-8));
}

TEST_CASE("grad_x sign pattern follows the bits") {
    const LikelihoodContext ctx = random_context(7, 5, 3, 0.3, 25);
    RngEngine rng = make_stream(26);
    Eigen::MatrixXd x(7, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 7; ++i) x(i, j) = gauss(rng);
    const Eigen::MatrixXd g = grad_x(x, ctx);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 7; ++i) {
            if (ctx.z.data(i, j) == 1)
                REQUIRE(g(i, j) < 0.0);
            else
                REQUIRE(g(i, j) > 0.0);
        }
}

TEST_CASE("grad_x matches the long double ratio oracle") {
    MeasurementMatrix phi{Eigen::MatrixXd::Ones(1, 1)};
    for (int bit : {0, 1}) {
        BitMatrix z{Eigen::MatrixXi::Constant(1, 1, bit)};
        LikelihoodContext ctx(phi, z, 1.0);
        for (double t = -35.0; t <= 35.0; t += 0.7013) {
            Eigen::MatrixXd x(1, 1);
            x << t;
            const double arg = bit == 1 ? t : -t;  // ratio argument
            const double expected =
                bit == 1 ? -oracle::cdf_ratio(t) : oracle::cdf_ratio(-t);
            // Below the branch switch at -8 the series truncation error
            // (about 105/t^8) dominates the comparison.
            const double tol =
                arg < -8.0 ? 210.0 / std::pow(arg, 8.0) : 1e-10;
            REQUIRE(grad_x(x, ctx)(0, 0) == Catch::Approx(expected).epsilon(tol));
        }
    }
}

TEST_CASE("grad_s with a zero sensing matrix is zero") {
    MeasurementMatrix phi{Eigen::MatrixXd::Zero(3, 5)};
    BitMatrix z{Eigen::MatrixXi::Zero(3, 2)};
    LikelihoodContext ctx(phi, z, 1.0);
    REQUIRE(grad_s(Eigen::MatrixXd::Ones(5, 2), ctx).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grad_s with identity sensing reduces to grad_x") {
    RngEngine rng = make_stream(27);
    MeasurementMatrix phi{Eigen::MatrixXd::Identity(4, 4)};
    Eigen::MatrixXd raw(4, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 4; ++i) raw(i, j) = gauss(rng);
    LikelihoodContext ctx(phi, quantize(raw), 0.9);

    Eigen::MatrixXd s(4, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 4; ++i) s(i, j) = gauss(rng);
    REQUIRE((grad_s(s, ctx) - grad_x(s, ctx)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("grad_s matches central finite differences") {
    for (std::uint64_t seed : {30, 31, 32}) {
        for (double sigma : {1.0, 0.05}) {
            const LikelihoodContext ctx = random_context(8, 12, 4, sigma, seed);
            RngEngine rng = make_stream(seed + 100);
            Eigen::MatrixXd s(12, 4);
            std::normal_distribution<double> gauss(0.0, 0.3);
            for (int j = 0; j < 4; ++j)
                for (int i = 0; i < 12; ++i) s(i, j) = gauss(rng);

            const Eigen::MatrixXd g = grad_s(s, ctx);
            const Eigen::MatrixXd fd = oracle::grad_s_fd(s, ctx, 1e-6);
            const double rel = (g - fd).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
            REQUIRE(rel <= 1e-5);
        }
    }
}

TEST_CASE("gradient step with the estimated curvature bound descends") {
    for (std::uint64_t seed : {40, 41, 42, 43}) {
        const LikelihoodContext ctx = random_context(6, 9, 3, 0.05, seed);
        const double l_f = lipschitz_constant(ctx.phi, ctx.sigma_v);
        RngEngine rng = make_stream(seed + 200);
        Eigen::MatrixXd s(9, 3);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 9; ++i) s(i, j) = gauss(rng);

        const Eigen::MatrixXd s_next = s - (1.0 / l_f) * grad_s(s, ctx);
        REQUIRE(nll(s_next, ctx) <= nll(s, ctx) + 1e-9);
    }
}

TEST_CASE("lipschitz_constant on identity and diagonal matrices") {
    REQUIRE(lipschitz_constant(MeasurementMatrix{Eigen::MatrixXd::Identity(3, 3)},
                               1.0) == Catch::Approx(1.0).epsilon(1e-9));
    Eigen::MatrixXd d(2, 2);
    d << 2.0, 0.0, 0.0, 1.0;
    REQUIRE(lipschitz_constant(MeasurementMatrix{d}, 0.5) ==
            Catch::Approx(16.0).epsilon(1e-4));
}

TEST_CASE("lipschitz_constant matches a dense SVD oracle") {
    for (std::uint64_t seed : {50, 51, 52, 53, 54}) {
        RngEngine rng = make_stream(seed);
        const MeasurementMatrix phi = generate_measurement_matrix(5, 7, 1.0, rng);
        const double sigma_v = 0.3;
        const double est = lipschitz_constant(phi, sigma_v);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi.data);
        const double smax = svd.singularValues()(0);
        const double exact = smax * smax / (sigma_v * sigma_v);
        REQUIRE(est == Catch::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("lipschitz_constant of the zero matrix is zero") {
    REQUIRE(lipschitz_constant(MeasurementMatrix{Eigen::MatrixXd::Zero(3, 4)}, 1.0) ==
            0.0);
}

TEST_CASE("LikelihoodContext validates its inputs") {
    MeasurementMatrix phi{Eigen::MatrixXd::Ones(3, 2)};
    BitMatrix z{Eigen::MatrixXi::Ones(3, 1)};
    REQUIRE_NOTHROW(LikelihoodContext(phi, z, 1.0));

    BitMatrix wrong_rows{Eigen::MatrixXi::Ones(4, 1)};
    REQUIRE_THROWS_AS(LikelihoodContext(phi, wrong_rows, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(LikelihoodContext(phi, z, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(LikelihoodContext(phi, z, -1.0), std::invalid_argument);

    BitMatrix bad_bits{Eigen::MatrixXi::Constant(3, 1, 2)};
    REQUIRE_THROWS_AS(LikelihoodContext(phi, bad_bits, 1.0), std::invalid_argument);

    MeasurementMatrix bad_phi{Eigen::MatrixXd::Ones(3, 2)};
    bad_phi.data(0, 0) = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(LikelihoodContext(bad_phi, z, 1.0), std::invalid_argument);
}
