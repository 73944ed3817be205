#include "qrw/coin.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qrw;

namespace {

void expect_matrix_eq(const Mat2& got, const Mat2& want, double tol = 0.0) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            EXPECT_NEAR(got(r, c).real(), want(r, c).real(), tol) << "entry " << r << c;
            EXPECT_NEAR(got(r, c).imag(), want(r, c).imag(), tol) << "entry " << r << c;
        }
}

}  // namespace

TEST(Coin, hadamard_matrix_is_exact) {
    const double s = 1.0 / std::sqrt(2.0);
    const Mat2 want{{Complex{s}, Complex{s}, Complex{s}, Complex{-s}}};
    // sqrt(0.5) and 1/sqrt(2.0) may differ by one ulp.
    expect_matrix_eq(coin_matrix(coin_hadamard()), want, 2e-16);
    const auto h = coin_matrix(coin_hadamard());
    EXPECT_EQ(h(0, 1).imag(), 0.0);
    EXPECT_EQ(h(1, 0).imag(), 0.0);
    EXPECT_EQ(h(1, 1).imag(), 0.0);
    EXPECT_EQ(h(0, 0), h(1, 0));
    EXPECT_EQ(h(1, 1), -h(0, 0));
}

TEST(Coin, hadamard_is_an_involution) {
    const auto h = coin_matrix(coin_hadamard());
    EXPECT_LT(max_abs_diff(h * h, Mat2::identity()), 1e-15);
    EXPECT_LT(unitarity_residual(h), tol::kUnitary);
}

TEST(Coin, kempe_matrix) {
    const auto k = coin_matrix(coin_kempe());
    const Complex i{0.0, 1.0};
    const Mat2 want{{Complex{kInvSqrt2}, i * kInvSqrt2, i * kInvSqrt2, Complex{kInvSqrt2}}};
    expect_matrix_eq(k, want);
    EXPECT_LT(unitarity_residual(k), tol::kUnitary);
}

TEST(Coin, kempe_square_matches_direct_product) {
    // Direct 2x2 product of (1/sqrt2)[[1, i], [i, 1]] with itself is [[0, i], [i, 0]] = i X.
    const Complex i{0.0, 1.0};
    const Mat2 want{{Complex{}, i, i, Complex{}}};
    const auto k = coin_matrix(coin_kempe());
    EXPECT_LT(max_abs_diff(k * k, want), 1e-15);
}

TEST(Coin, z_coin_is_diagonal_sign_flip) {
    const auto z = coin_matrix(coin_z());
    expect_matrix_eq(z, Mat2{{Complex{1.0}, Complex{}, Complex{}, Complex{-1.0}}});
    EXPECT_EQ(max_abs_diff(z * z, Mat2::identity()), 0.0);
    // Up unchanged, down flips sign.
    EXPECT_EQ(z(0, 0), Complex{1.0});
    EXPECT_EQ(z(1, 1), Complex{-1.0});
    EXPECT_EQ(coin_z().theta(), 0.0);
}

TEST(Coin, parameters_of_named_coins) {
    EXPECT_EQ(coin_hadamard(), CoinOperator(0.5, kHalfPi, kHalfPi, 0.0));
    EXPECT_EQ(coin_kempe(), CoinOperator(0.5, kHalfPi, 0.0, 0.0));
    EXPECT_EQ(coin_z(), CoinOperator(1.0, 0.0, kHalfPi, 0.0));
}

TEST(Coin, general_parameters_reproduce_hadamard) {
    expect_matrix_eq(coin_matrix(CoinOperator(0.5, kHalfPi, kHalfPi, 0.0)), coin_matrix(coin_hadamard()));
}

TEST(Coin, rho_one_eta_zero_is_identity_for_any_theta) {
    for (double theta : {0.0, 0.3, 1.7, kPi}) {
        EXPECT_EQ(max_abs_diff(coin_matrix(CoinOperator(1.0, theta, 0.0, 0.0)), Mat2::identity()), 0.0) << theta;
    }
}

TEST(Coin, general_matrix_matches_closed_form) {
    const double rho = 0.3, theta = 1.1, eta = 0.4;
    const auto m = coin_matrix(CoinOperator(rho, theta, eta, 0.0));
    const double a = std::sqrt(rho), b = std::sqrt(1 - rho);
    const Mat2 want{{Complex{a}, b * std::polar(1.0, theta - eta), -b * std::polar(1.0, -(theta + eta)),
                     a * std::polar(1.0, -2 * eta)}};
    EXPECT_LT(max_abs_diff(m, want), 1e-15);
    EXPECT_LT(unitarity_residual(m), tol::kUnitary);
}

TEST(Coin, global_phase_multiplies_every_entry) {
    const auto base = coin_matrix(CoinOperator(0.3, 1.1, 0.4, 0.0));
    const auto phased = coin_matrix(CoinOperator(0.3, 1.1, 0.4, 2.5));
    EXPECT_LT(max_abs_diff(phased, std::polar(1.0, 2.5) * base), 1e-15);
}

TEST(Coin, random_coins_are_unitary) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const CoinOperator c(u(rng), kPi * u(rng), kPi * u(rng), kTwoPi * u(rng) * 0.999);
        ASSERT_LT(unitarity_residual(coin_matrix(c)), tol::kUnitary);
    }
}

TEST(Coin, out_of_range_parameters_are_rejected) {
    EXPECT_THROW(CoinOperator(1.5, 0.0, 0.0), ParameterError);
    EXPECT_THROW(CoinOperator(-0.1, 0.0, 0.0), ParameterError);
    EXPECT_THROW(CoinOperator(0.5, 3.5, 0.0), ParameterError);
    EXPECT_THROW(CoinOperator(0.5, 0.0, -1.0), ParameterError);
    EXPECT_THROW(CoinOperator(0.5, 0.0, 0.0, kTwoPi), ParameterError);
    EXPECT_THROW(CoinOperator(std::nan(""), 0.0, 0.0), ParameterError);
    try {
        CoinOperator(0.5, 4.0, 0.0);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_EQ(e.field(), "theta");
    }
}

TEST(UnitPhase, exact_at_quarter_turns) {
    EXPECT_EQ(unit_phase(0.0), Complex(1.0, 0.0));
    EXPECT_EQ(unit_phase(kHalfPi), Complex(0.0, 1.0));
    EXPECT_EQ(unit_phase(kPi), Complex(-1.0, 0.0));
    EXPECT_EQ(unit_phase(-kPi), Complex(-1.0, 0.0));
    EXPECT_EQ(unit_phase(3.0 * kHalfPi), Complex(0.0, -1.0));
    EXPECT_EQ(unit_phase(-kHalfPi), Complex(0.0, -1.0));
    EXPECT_EQ(unit_phase(kTwoPi), Complex(1.0, 0.0));
    EXPECT_NEAR(std::abs(unit_phase(0.123) - std::polar(1.0, 0.123)), 0.0, 1e-16);
}
