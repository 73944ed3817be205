#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qrw/types.hpp"

namespace qrw {

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() { return Mat2{{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }

    Mat2 adjoint() const {
        return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 out;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
        return out;
    }

    friend Mat2 operator*(Complex s, Mat2 a) {
        for (auto& v : a.m) v *= s;
        return a;
    }

    /// Largest entry-wise modulus of a - b.
    friend double max_abs_diff(const Mat2& a, const Mat2& b) {
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.m[k] - b.m[k]));
        return worst;
    }
};

/// Entry-wise max of |U U^dag - I|.
inline double unitarity_residual(const Mat2& u) { return max_abs_diff(u * u.adjoint(), Mat2::identity()); }

/// U(2) coin
///
///   [ sqrt(rho)                        sqrt(1-rho) e^{i(theta-eta)} ]
///   [ -sqrt(1-rho) e^{-i(theta+eta)}   sqrt(rho) e^{-2 i eta}       ]  * e^{i phi}
///
/// with rho in [0,1], theta and eta in [0,pi], phi in [0,2pi).
/// Parameters are checked on construction.
class CoinOperator {
  public:
    CoinOperator(double rho, double theta, double eta, double phi = 0.0)
        : rho_(rho), theta_(theta), eta_(eta), phi_(phi) {
        check("rho", rho, 0.0, 1.0, false);
        check("theta", theta, 0.0, kPi, false);
        check("eta", eta, 0.0, kPi, false);
        check("phi", phi, 0.0, kTwoPi, true);
    }

    double rho() const noexcept { return rho_; }
    double theta() const noexcept { return theta_; }
    double eta() const noexcept { return eta_; }
    double phi() const noexcept { return phi_; }

    friend bool operator==(const CoinOperator&, const CoinOperator&) = default;

  private:
    static void check(const char* name, double v, double lo, double hi, bool open_hi) {
        const bool ok = std::isfinite(v) && v >= lo && (open_hi ? v < hi : v <= hi);
        if (!ok) {
            throw ParameterError(name, std::string(name) + " = " + std::to_string(v) + " outside [" +
                                           std::to_string(lo) + ", " + std::to_string(hi) +
                                           (open_hi ? ")" : "]"));
        }
    }

    double rho_;
    double theta_;
    double eta_;
    double phi_;
};

/// Realized matrix of a coin. Unitary to within 1e-12 entry-wise.
inline Mat2 coin_matrix(const CoinOperator& c) {
    const double a = std::sqrt(c.rho());
    const double b = std::sqrt(1.0 - c.rho());
    const double sum = c.theta() + c.eta();
    Mat2 u{{Complex{a}, b * unit_phase(c.theta() - c.eta()), -b * unit_phase(-sum),
            a * unit_phase(-2.0 * c.eta())}};
    if (c.phi() != 0.0) u = unit_phase(c.phi()) * u;
    return u;
}

/// rho = 1/2, phi = 0, theta = eta = pi/2: (1/sqrt2)[[1, 1], [1, -1]].
inline CoinOperator coin_hadamard() { return CoinOperator(0.5, kHalfPi, kHalfPi, 0.0); }

/// rho = 1/2, phi = eta = 0, theta = pi/2: (1/sqrt2)[[1, i], [i, 1]].
inline CoinOperator coin_kempe() { return CoinOperator(0.5, kHalfPi, 0.0, 0.0); }

/// rho = 1, eta = pi/2, phi = 0. theta is irrelevant at rho = 1 and fixed to 0.
inline CoinOperator coin_z() { return CoinOperator(1.0, 0.0, kHalfPi, 0.0); }

}  // namespace qrw
