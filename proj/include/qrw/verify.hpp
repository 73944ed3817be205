#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrw/analytic.hpp"
#include "qrw/entanglement.hpp"
#include "qrw/walk.hpp"

// Self-checks behind `qrw verify`.

namespace qrw::verify {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // largest residual seen
    std::string detail;
};

struct RandomTuple {
    CoinOperator coin;
    ShiftOperator shift;
};

/// Uniform draw over (rho, theta, eta, alpha, beta_arg) with phi = 0.
inline RandomTuple random_tuple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> half_turn(0.0, kPi);
    std::uniform_real_distribution<double> turn(0.0, kTwoPi);
    const double rho = unit(rng);
    const double theta = half_turn(rng);
    const double eta = half_turn(rng);
    const double alpha = unit(rng);
    const double beta_arg = turn(rng);
    return {CoinOperator(rho, theta, eta), ShiftOperator(alpha, beta_arg)};
}

/// Residuals between the numeric step-2 collapse and the closed form.
struct Step2Comparison {
    double amplitude = 0.0;    // normalized amplitudes, after removing one global phase
    double probability = 0.0;  // |P_numeric - P_closed|
};

inline Step2Comparison compare_step2(const CoinOperator& coin, const ShiftOperator& shift, Spin outcome) {
    const auto state = evolve(coin, shift, 2);
    const auto closed = outcome == Spin::Up ? analytic::psi_up_2(coin, shift) : analytic::psi_down_2(coin, shift);
    const auto collapse = measure_spin(state, outcome);

    Step2Comparison cmp;
    const double p_closed = closed.probability();
    cmp.probability = std::abs(collapse.probability - p_closed);
    if (collapse.degenerate() || p_closed == 0.0) return cmp;

    const double scale = 1.0 / std::sqrt(p_closed);
    Complex expected[2] = {closed.coeff_plus * scale, closed.coeff_minus * scale};
    const int sites[2] = {closed.plus_site(), closed.minus_site()};
    Complex got[2];
    for (int k = 0; k < 2; ++k) {
        const int idx = sites[k] - collapse.offset;
        got[k] = collapse.amps[static_cast<std::size_t>(idx)];
    }
    // Align the global phase on the larger closed-form coefficient.
    const int ref = std::abs(expected[0]) >= std::abs(expected[1]) ? 0 : 1;
    const Complex phase = got[ref] / expected[ref];
    const Complex unit = phase / std::abs(phase);
    for (int k = 0; k < 2; ++k) cmp.amplitude = std::max(cmp.amplitude, std::abs(got[k] - unit * expected[k]));
    // Nothing else in the window may carry weight.
    for (std::size_t i = 0; i < collapse.amps.size(); ++i) {
        const int site = collapse.offset + static_cast<int>(i);
        if (site != sites[0] && site != sites[1]) cmp.amplitude = std::max(cmp.amplitude, std::abs(collapse.amps[i]));
    }
    return cmp;
}

inline SuiteResult unitarity_suite(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SuiteResult r{"unitarity", true, 0.0, {}};
    for (const auto& c : {coin_hadamard(), coin_kempe(), coin_z()})
        r.worst = std::max(r.worst, unitarity_residual(coin_matrix(c)));
    for (int i = 0; i < samples; ++i) {
        const auto t = random_tuple(rng);
        r.worst = std::max(r.worst, unitarity_residual(coin_matrix(t.coin)));
        r.worst = std::max(r.worst, verify_shift_unitarity(t.shift).residual);
    }
    r.passed = r.worst < tol::kUnitary;
    r.detail = std::to_string(samples) + " random coins and shifts";
    return r;
}

inline SuiteResult oracle_suite(int samples, std::uint64_t seed, double tolerance = 1e-12) {
    std::mt19937_64 rng(seed);
    SuiteResult r{"oracle", true, 0.0, {}};
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const auto t = random_tuple(rng);
        const auto one = evolve(t.coin, t.shift, 1);
        const auto phi = analytic::phi1(t.coin, t.shift);
        double worst = std::max(std::abs(one.at(Spin::Up, 1) - phi.up), std::abs(one.at(Spin::Down, -1) - phi.down));
        for (Spin s : {Spin::Up, Spin::Down}) {
            const auto cmp = compare_step2(t.coin, t.shift, s);
            worst = std::max({worst, cmp.amplitude, cmp.probability});
        }
        r.worst = std::max(r.worst, worst);
        if (!(worst <= tolerance)) ++failures;
    }
    r.passed = failures == 0;
    r.detail = std::to_string(samples) + " samples, " + std::to_string(failures) + " outside tolerance";
    return r;
}

/// Fidelity |<s, site|state>|^2 against a single basis state.
inline double basis_fidelity(const WalkState& s, Spin spin, int site) { return std::norm(s.at(spin, site)); }

/// Basis state the walk occupies after `step` steps at a degenerate point.
struct ChainSite {
    Spin spin;
    int site;
};

/// The three degenerate parameter points. Hadamard with alpha = beta = 1/sqrt2
/// and Kempe with beta = -i/sqrt2 climb as |up>|n,n>. Kempe with
/// beta = +i/sqrt2 oscillates: |down>|-1,-1> after odd steps and |up>|0,0>
/// after even ones.
inline SuiteResult special_points_suite(int n_max) {
    SuiteResult r{"special-points", true, 0.0, {}};
    struct Chain {
        const char* label;
        CoinOperator coin;
        ShiftOperator shift;
        ChainSite (*expected)(int);
    };
    const Chain chains[] = {
        {"hadamard a=b=1/sqrt2", coin_hadamard(), ShiftOperator(kInvSqrt2, 0.0),
         [](int n) { return ChainSite{Spin::Up, n}; }},
        {"kempe argb=3pi/2", coin_kempe(), ShiftOperator(kInvSqrt2, 3.0 * kHalfPi),
         [](int n) { return ChainSite{Spin::Up, n}; }},
        {"kempe argb=pi/2", coin_kempe(), ShiftOperator(kInvSqrt2, kHalfPi),
         [](int n) { return n % 2 ? ChainSite{Spin::Down, -1} : ChainSite{Spin::Up, 0}; }},
    };
    std::ostringstream detail;
    for (const auto& ch : chains) {
        double worst = 0.0;
        for_each_step(ch.coin, ch.shift, n_max, [&](const WalkState& s) {
            const auto want = ch.expected(s.step);
            worst = std::max(worst, 1.0 - basis_fidelity(s, want.spin, want.site));
        });
        r.worst = std::max(r.worst, worst);
        detail << ch.label << ": 1-F=" << worst << "; ";
    }
    r.passed = r.worst < 1e-10;
    r.detail = detail.str();
    return r;
}

/// Parity and support violations, and the norm drift, of a state after n steps.
struct StateInvariants {
    double norm_drift = 0.0;
    double completeness = 0.0;  // |P(up) + P(down) - 1|
    bool support_ok = true;
};

inline StateInvariants check_state(const WalkState& s) {
    StateInvariants inv;
    const double n2 = s.norm_squared();
    inv.norm_drift = std::abs(std::sqrt(n2) - 1.0);
    inv.completeness = std::abs(measure_spin(s, Spin::Up).probability + measure_spin(s, Spin::Down).probability - 1.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const int site = s.offset + static_cast<int>(k);
        const bool allowed = std::abs(site) <= s.step && ((site - s.step) % 2 == 0);
        if (!allowed && (s.up[k] != Complex{} || s.down[k] != Complex{})) inv.support_ok = false;
    }
    return inv;
}

inline SuiteResult invariants_suite(int samples, int n_steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SuiteResult r{"invariants", true, 0.0, {}};
    bool support = true;
    double completeness = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto t = random_tuple(rng);
        for_each_step(t.coin, t.shift, n_steps, [&](const WalkState& s) {
            const auto inv = check_state(s);
            r.worst = std::max(r.worst, inv.norm_drift);
            completeness = std::max(completeness, inv.completeness);
            support = support && inv.support_ok;
        });
    }
    r.passed = r.worst < 1e-10 && completeness < 1e-10 && support;
    std::ostringstream d;
    d << samples << " walks x " << n_steps << " steps, completeness " << completeness
      << (support ? "" : ", support violated");
    r.detail = d.str();
    return r;
}

}  // namespace qrw::verify
