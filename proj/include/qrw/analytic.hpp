#pragma once

#include <cmath>
#include <stdexcept>

#include "qrw/coin.hpp"
#include "qrw/shift.hpp"
#include "qrw/types.hpp"

// Closed-form states of the first two steps from |up> (x) |0,0>, with
// p = +1, q = -1 and no global coin phase. These expressions are evaluated
// directly from the coin and shift parameters and never touch the numeric
// engine, so they serve as its independent oracle.

namespace qrw::analytic {

namespace detail {

struct Params {
    double rho, theta, eta;
    double alpha;
    Complex beta;
    double s_rho, s_rest;  // sqrt(rho), sqrt(1 - rho)
};

inline Params params(const CoinOperator& coin, const ShiftOperator& shift) {
    if (coin.phi() != 0.0) throw std::invalid_argument("analytic forms assume phi = 0");
    if (shift.p() != 1 || shift.q() != -1) throw std::invalid_argument("analytic forms assume p = +1, q = -1");
    const double a = shift.alpha();
    return {coin.rho(),
            coin.theta(),
            coin.eta(),
            a,
            std::polar(std::sqrt(1.0 - a * a), shift.beta_arg()),
            std::sqrt(coin.rho()),
            std::sqrt(1.0 - coin.rho())};
}

inline Complex cis(double x) { return std::polar(1.0, x); }

}  // namespace detail

/// Coefficients of |up>|1,1> and |down>|-1,-1> after one step.
struct Phi1 {
    Complex up;
    Complex down;
};

inline Phi1 phi1(const CoinOperator& coin, const ShiftOperator& shift) {
    const auto k = detail::params(coin, shift);
    const Complex e = detail::cis(-(k.theta + k.eta));
    return {k.alpha * k.s_rho - k.beta * k.s_rest * e, -(std::conj(k.beta) * k.s_rho + k.alpha * k.s_rest * e)};
}

/// Unnormalized two-term position state after measuring at step 2.
/// Up:   coeff_plus on |2,2>,  coeff_minus on |0,0>.
/// Down: coeff_plus on |0,0>,  coeff_minus on |-2,-2>.
/// |coeff_plus|^2 + |coeff_minus|^2 is the outcome probability.
struct Step2State {
    Spin outcome = Spin::Up;
    Complex coeff_plus;
    Complex coeff_minus;
    bool unnormalized = true;

    int plus_site() const { return outcome == Spin::Up ? 2 : 0; }
    int minus_site() const { return outcome == Spin::Up ? 0 : -2; }
    double probability() const { return std::norm(coeff_plus) + std::norm(coeff_minus); }
};

inline Step2State psi_up_2(const CoinOperator& coin, const ShiftOperator& shift) {
    const auto k = detail::params(coin, shift);
    const Complex e = detail::cis(-(k.theta + k.eta));
    const Complex first = k.alpha * k.s_rho - k.beta * k.s_rest * e;
    const Complex second = k.alpha * k.s_rest + k.beta * k.s_rho * e;
    return {Spin::Up, first * first, -detail::cis(-2.0 * k.eta) * std::norm(second), true};
}

/// The four-term coefficients of the down outcome, term by term.
inline Step2State psi_down_2(const CoinOperator& coin, const ShiftOperator& shift) {
    const auto k = detail::params(coin, shift);
    const double r = k.rho;
    const double s = std::sqrt(r * (1.0 - r));
    const Complex b = k.beta;
    const Complex bc = std::conj(b);
    const double a = k.alpha;
    const Complex e1 = detail::cis(-(k.theta + k.eta));
    const Complex e2 = detail::cis(-2.0 * (k.theta + k.eta));
    const Complex eta2 = detail::cis(-2.0 * k.eta);

    const Complex at_origin = a * b * (1.0 - r) * e2 + std::norm(b) * s * e1 - a * a * s * e1 - a * bc * r;
    const Complex at_minus2 = a * bc * (1.0 - r) * eta2 + bc * bc * s * detail::cis(k.theta - k.eta) -
                              a * a * s * e1 * eta2 - a * bc * r * eta2;
    return {Spin::Down, at_origin, at_minus2, true};
}

/// Down-outcome state at rho = 1/2 written through
/// Delta = arg(beta) - theta - eta. Equal to psi_down_2 for rho = 1/2.
inline Step2State psi_down_2_balanced(const CoinOperator& coin, const ShiftOperator& shift) {
    if (coin.rho() != 0.5) throw std::invalid_argument("psi_down_2_balanced requires rho = 1/2");
    const auto k = detail::params(coin, shift);
    const double a = k.alpha;
    const double bm = std::abs(k.beta);
    const double delta = shift.beta_arg() - k.theta - k.eta;
    const Complex at_origin =
        detail::cis(-(k.theta + k.eta)) * Complex(bm * bm - a * a, 2.0 * a * bm * std::sin(delta));
    const Complex at_minus2 = detail::cis(-2.0 * k.eta) * detail::cis(-shift.beta_arg()) *
                              Complex((2.0 * bm * bm - 1.0) * std::cos(delta), -std::sin(delta));
    // The balanced form drops an overall factor of 1/2 relative to psi_down_2.
    return {Spin::Down, 0.5 * at_origin, 0.5 * at_minus2, true};
}

/// |alpha sqrt(rho) - beta sqrt(1-rho) e^{-i(theta+eta)}|
///   == |alpha sqrt(1-rho) + beta sqrt(rho) e^{-i(theta+eta)}|  within 1e-9.
inline bool max_condition_up(const CoinOperator& coin, const ShiftOperator& shift, double tolerance = 1e-9) {
    const auto k = detail::params(coin, shift);
    const Complex e = detail::cis(-(k.theta + k.eta));
    const double lhs = std::abs(k.alpha * k.s_rho - k.beta * k.s_rest * e);
    const double rhs = std::abs(k.alpha * k.s_rest + k.beta * k.s_rho * e);
    return std::abs(lhs - rhs) <= tolerance;
}

/// arg(beta) = theta + eta (mod 2pi): sufficient for maximal down-outcome
/// entanglement at step 2.
inline bool max_condition_down_phase(const CoinOperator& coin, const ShiftOperator& shift,
                                     double tolerance = 1e-12) {
    const double d = std::remainder(shift.beta_arg() - coin.theta() - coin.eta(), kTwoPi);
    return std::abs(d) <= tolerance;
}

}  // namespace qrw::analytic
