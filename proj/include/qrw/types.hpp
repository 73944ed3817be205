#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qrw {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Nearest double to 1/sqrt(2); equal to std::sqrt(0.5).
inline constexpr double kInvSqrt2 = 0.5 * std::numbers::sqrt2;

/// Tolerances shared by the engine and its checks.
namespace tol {
inline constexpr double kUnitary = 1e-12;  // entry-wise |U U^dag - I|
inline constexpr double kNorm = 1e-12;     // single-step norm drift
inline constexpr double kTerm = 1e-10;     // |c_i| above this counts as a term
inline constexpr double kNormalizedInput = 1e-10;
inline constexpr double kMaximal = 1e-9;   // "E_n = 1" means E_n > 1 - kMaximal
}  // namespace tol

/// Z-axis spin eigenstates of the coin.
enum class Spin { Up, Down };

inline constexpr std::string_view to_string(Spin s) { return s == Spin::Up ? "up" : "down"; }

inline Spin parse_spin(std::string_view text) {
    if (text == "up") return Spin::Up;
    if (text == "down") return Spin::Down;
    throw std::invalid_argument("unknown spin outcome '" + std::string(text) + "'");
}

inline constexpr Spin opposite(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

/// Raised when an operator parameter falls outside its legal domain.
class ParameterError : public std::out_of_range {
  public:
    ParameterError(std::string field, const std::string& what)
        : std::out_of_range(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// e^{i x}, exact at integer multiples of pi/2 so that the named coins and
/// the quarter-turn phases of beta carry no round-off in their zero entries.
inline Complex unit_phase(double x) {
    const double quarters = std::nearbyint(x / kHalfPi);
    if (quarters * kHalfPi == x) {
        switch (static_cast<long long>(std::fmod(std::fmod(quarters, 4.0) + 4.0, 4.0))) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(x), std::sin(x)};
}

}  // namespace qrw
