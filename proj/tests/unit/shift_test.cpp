#include "qrw/shift.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qrw;

TEST(Shift, alpha_one_is_trivially_unitary) {
    for (double arg : {0.0, 1.0, 4.0}) {
        const auto r = verify_shift_unitarity(ShiftOperator(1.0, arg));
        EXPECT_TRUE(r.unitary);
        EXPECT_EQ(ShiftOperator(1.0, arg).beta(), Complex{});
    }
}

TEST(Shift, generic_parameters_are_unitary) {
    const auto r = verify_shift_unitarity(ShiftOperator(0.6, 1.2));
    EXPECT_TRUE(r.unitary);
    EXPECT_LT(r.residual, 1e-12);
}

TEST(Shift, random_parameters_are_unitary) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const ShiftOperator s(u(rng), kTwoPi * u(rng) * 0.9999);
        ASSERT_TRUE(verify_shift_unitarity(s).unitary);
        ASSERT_NEAR(s.alpha() * s.alpha() + std::norm(s.beta()), 1.0, 1e-15);
    }
}

TEST(Shift, corrupted_modulus_is_detected) {
    const ShiftOperator s(0.6, 1.2);
    const Complex bad = std::polar(std::abs(s.beta()) + 1e-3, s.beta_arg());
    const auto r = verify_shift_unitarity(Complex{s.alpha()}, bad);
    EXPECT_FALSE(r.unitary);
    EXPECT_GT(r.residual, 1e-4);
}

TEST(Shift, equal_displacements_are_rejected) {
    EXPECT_THROW(ShiftOperator(0.5, 0.0, 1, 1), ParameterError);
    EXPECT_THROW(ShiftOperator(0.5, 0.0, 0, 0), ParameterError);
    EXPECT_NO_THROW(ShiftOperator(0.5, 0.0, 2, -2));
}

TEST(Shift, out_of_range_parameters_are_rejected) {
    EXPECT_THROW(ShiftOperator(1.01, 0.0), ParameterError);
    EXPECT_THROW(ShiftOperator(-0.01, 0.0), ParameterError);
    EXPECT_THROW(ShiftOperator(0.5, kTwoPi), ParameterError);
    EXPECT_THROW(ShiftOperator(0.5, -0.1), ParameterError);
}

TEST(Shift, critical_alpha_has_equal_beta_modulus) {
    const ShiftOperator s(kInvSqrt2, 0.0);
    EXPECT_EQ(s.beta_modulus(), s.alpha());
    EXPECT_EQ(s.beta(), Complex(kInvSqrt2, 0.0));
    EXPECT_EQ(ShiftOperator(kInvSqrt2, kHalfPi).beta(), Complex(0.0, kInvSqrt2));
    EXPECT_EQ(ShiftOperator(kInvSqrt2, 3 * kHalfPi).beta(), Complex(0.0, -kInvSqrt2));
    EXPECT_TRUE(verify_shift_unitarity(s).unitary);
}
