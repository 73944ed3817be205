#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrw/coin.hpp"
#include "qrw/shift.hpp"
#include "qrw/types.hpp"

namespace qrw {

/// Joint coin (x) position state restricted to diagonal sites |i,i>.
/// Entry k of each spin array is the amplitude of |s> (x) |offset+k, offset+k>.
struct WalkState {
    int step = 0;
    int offset = 0;
    std::vector<Complex> up;
    std::vector<Complex> down;

    std::size_t size() const noexcept { return up.size(); }
    int first_site() const noexcept { return offset; }
    int last_site() const noexcept { return offset + static_cast<int>(up.size()) - 1; }

    std::span<const Complex> amplitudes(Spin s) const { return s == Spin::Up ? up : down; }

    /// Amplitude at a site; zero outside the stored window.
    Complex at(Spin s, int site) const {
        const int k = site - offset;
        if (k < 0 || k >= static_cast<int>(up.size())) return {};
        return amplitudes(s)[static_cast<std::size_t>(k)];
    }

    double norm_squared() const {
        double total = 0.0;
        for (std::size_t k = 0; k < up.size(); ++k) total += std::norm(up[k]) + std::norm(down[k]);
        return total;
    }
};

/// |up> (x) |0,0>.
inline WalkState initial_state() { return WalkState{0, 0, {Complex{1.0}}, {Complex{}}}; }

namespace detail {

/// One step with the coin already realized as a matrix. `out` may reuse
/// storage from an earlier state but must not alias `in`.
inline void step_into(const WalkState& in, const Mat2& c, const ShiftOperator& shift, WalkState& out) {
    const int p = shift.p();
    const int q = shift.q();
    const int lo = std::min(p, q);
    const int hi = std::max(p, q);
    const std::size_t n = in.size();
    const std::size_t len = n + static_cast<std::size_t>(hi - lo);

    out.step = in.step + 1;
    out.offset = in.offset + lo;
    out.up.assign(len, Complex{});
    out.down.assign(len, Complex{});

    const double a = shift.alpha();
    const Complex b = shift.beta();
    const Complex bc = std::conj(b);
    const std::size_t up_base = static_cast<std::size_t>(p - lo);
    const std::size_t down_base = static_cast<std::size_t>(q - lo);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex u = in.up[k];
        const Complex d = in.down[k];
        if (u == Complex{} && d == Complex{}) continue;
        const Complex cu = c(0, 0) * u + c(0, 1) * d;
        const Complex cd = c(1, 0) * u + c(1, 1) * d;
        out.up[k + up_base] += a * cu + b * cd;
        out.down[k + down_base] += a * cd - bc * cu;
    }
}

inline WalkState step(const WalkState& in, const Mat2& c, const ShiftOperator& shift) {
    WalkState out;
    step_into(in, c, shift, out);
    return out;
}

}  // namespace detail

/// Applies U_shift . U_coin once.
inline WalkState step(const WalkState& state, const CoinOperator& coin, const ShiftOperator& shift) {
    return detail::step(state, coin_matrix(coin), shift);
}

/// State after n steps from initial_state().
inline WalkState evolve(const CoinOperator& coin, const ShiftOperator& shift, int n) {
    if (n < 1) throw std::invalid_argument("evolve: n must be >= 1");
    const Mat2 c = coin_matrix(coin);
    WalkState cur = initial_state();
    WalkState next;
    for (int k = 0; k < n; ++k) {
        detail::step_into(cur, c, shift, next);
        std::swap(cur, next);
    }
    return cur;
}

/// Calls fn(state) after each of the steps 1..n. The walk is never collapsed.
template <class Fn>
void for_each_step(const CoinOperator& coin, const ShiftOperator& shift, int n, Fn&& fn) {
    const Mat2 c = coin_matrix(coin);
    WalkState cur = initial_state();
    WalkState next;
    for (int k = 0; k < n; ++k) {
        detail::step_into(cur, c, shift, next);
        std::swap(cur, next);
        fn(static_cast<const WalkState&>(cur));
    }
}

/// Post-measurement position state.
struct CollapseResult {
    Spin outcome = Spin::Up;
    double probability = 0.0;
    int offset = 0;
    std::vector<Complex> amps;  // normalized; empty when probability == 0
    int term_count = 0;         // entries with |c_i| > 1e-10

    bool degenerate() const noexcept { return probability == 0.0; }
};

inline int count_terms(std::span<const Complex> amps, double threshold = tol::kTerm) {
    return static_cast<int>(
        std::count_if(amps.begin(), amps.end(), [&](const Complex& c) { return std::abs(c) > threshold; }));
}

/// Projects onto a spin outcome and renormalizes the position part.
/// A zero-probability outcome yields a degenerate result, not an error.
inline CollapseResult measure_spin(const WalkState& state, Spin outcome) {
    const auto src = state.amplitudes(outcome);
    CollapseResult r;
    r.outcome = outcome;
    r.offset = state.offset;
    double p = 0.0;
    for (const auto& c : src) p += std::norm(c);
    r.probability = p;
    if (p == 0.0) return r;
    const double scale = 1.0 / std::sqrt(p);
    r.amps.reserve(src.size());
    for (const auto& c : src) r.amps.push_back(c * scale);
    r.term_count = count_terms(r.amps);
    return r;
}

}  // namespace qrw
