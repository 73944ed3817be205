#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qrw/types.hpp"

namespace qrw {

/// Spin-conditioned translation of the walker pair
///
///   (alpha |up><up| + beta |up><down|)     sum_i |i+p,i+p><i,i|
/// + (alpha |down><down| - beta* |down><up|) sum_i |i+q,i+q><i,i|
///
/// alpha is real in [0,1] (its phase is absorbed into the spin basis) and
/// beta = sqrt(1 - alpha^2) e^{i beta_arg}. beta itself is never stored.
class ShiftOperator {
  public:
    ShiftOperator(double alpha, double beta_arg, int p = +1, int q = -1)
        : alpha_(alpha), beta_arg_(beta_arg), p_(p), q_(q) {
        if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0))
            throw ParameterError("alpha", "alpha = " + std::to_string(alpha) + " outside [0, 1]");
        if (!(std::isfinite(beta_arg) && beta_arg >= 0.0 && beta_arg < kTwoPi))
            throw ParameterError("beta_arg", "beta_arg = " + std::to_string(beta_arg) + " outside [0, 2pi)");
        if (p == q)
            throw ParameterError("q", "shift displacements must differ (p = q = " + std::to_string(p) + ")");
    }

    double alpha() const noexcept { return alpha_; }
    double beta_arg() const noexcept { return beta_arg_; }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }

    /// |beta| = sqrt(1 - alpha^2). At alpha = kInvSqrt2 this returns kInvSqrt2
    /// itself: no double satisfies sqrt(1 - a^2) == a, and the walk at the
    /// critical point needs alpha == |beta| bit for bit.
    double beta_modulus() const noexcept {
        if (alpha_ == kInvSqrt2) return kInvSqrt2;
        return std::sqrt(std::max(0.0, (1.0 - alpha_) * (1.0 + alpha_)));
    }

    Complex beta() const { return beta_modulus() * unit_phase(beta_arg_); }

    friend bool operator==(const ShiftOperator&, const ShiftOperator&) = default;

  private:
    double alpha_;
    double beta_arg_;
    int p_;
    int q_;
};

struct ShiftUnitarity {
    bool unitary = false;
    double residual = 0.0;
};

/// Checks that V1 = (a, b) and V2 = (-b*, a*) are orthonormal:
/// V1.V2* = 0 and |V1| = |V2| = 1.
inline ShiftUnitarity verify_shift_unitarity(Complex a, Complex b) {
    const Complex v1[2] = {a, b};
    const Complex v2[2] = {-std::conj(b), std::conj(a)};
    const Complex cross = v1[0] * std::conj(v2[0]) + v1[1] * std::conj(v2[1]);
    const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    const double residual = std::max({std::abs(cross), std::abs(n1 - 1.0), std::abs(n2 - 1.0)});
    return {residual < tol::kUnitary, residual};
}

inline ShiftUnitarity verify_shift_unitarity(const ShiftOperator& s) {
    return verify_shift_unitarity(Complex{s.alpha()}, s.beta());
}

}  // namespace qrw
