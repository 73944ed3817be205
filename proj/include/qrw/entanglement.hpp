#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrw/walk.hpp"

namespace qrw {

/// Von Neumann entropy -sum |c_i|^2 log2 |c_i|^2 of a normalized diagonal
/// position state, in bits. Zero-modulus entries contribute nothing.
inline double entropy(std::span<const Complex> amps) {
    double total = 0.0;
    double e = 0.0;
    for (const auto& c : amps) {
        const double w = std::norm(c);
        total += w;
        if (w > 0.0) e -= w * std::log2(w);
    }
    if (std::abs(total - 1.0) > tol::kNormalizedInput)
        throw std::invalid_argument("entropy: amplitudes not normalized (sum |c|^2 = " + std::to_string(total) + ")");
    return std::max(0.0, e);
}

/// E / log2(N) for N >= 2, else 0. Clamped to [0, 1].
inline double normalized_entanglement(double entropy_bits, int term_count) {
    if (term_count < 2) return 0.0;
    return std::clamp(entropy_bits / std::log2(static_cast<double>(term_count)), 0.0, 1.0);
}

inline double normalized_entanglement(std::span<const Complex> amps, int term_count) {
    if (term_count < 2) return 0.0;
    return normalized_entanglement(entropy(amps), term_count);
}

struct EntanglementRecord {
    int step = 0;
    Spin outcome = Spin::Up;
    double entropy = 0.0;     // E_n, bits
    double normalized = 0.0;  // normalized E_n in [0, 1]
    int term_count = 0;
    double probability = 0.0;
    bool degenerate = false;  // outcome had probability 0; E and normalized E set to 0

    bool maximal() const noexcept { return normalized > 1.0 - tol::kMaximal; }
};

inline EntanglementRecord entanglement_record(const CollapseResult& r, int step) {
    EntanglementRecord rec;
    rec.step = step;
    rec.outcome = r.outcome;
    rec.probability = r.probability;
    rec.term_count = r.term_count;
    rec.degenerate = r.degenerate();
    if (!rec.degenerate) {
        rec.entropy = entropy(r.amps);
        rec.normalized = normalized_entanglement(rec.entropy, rec.term_count);
    }
    return rec;
}

/// Same quantities as entanglement_record(measure_spin(s, outcome), s.step),
/// computed in place without materializing the collapsed state.
inline EntanglementRecord entanglement_record(const WalkState& s, Spin outcome) {
    const auto src = s.amplitudes(outcome);
    EntanglementRecord rec;
    rec.step = s.step;
    rec.outcome = outcome;
    double p = 0.0;
    for (const auto& c : src) p += std::norm(c);
    rec.probability = p;
    rec.degenerate = p == 0.0;
    if (rec.degenerate) return rec;
    const double scale = 1.0 / std::sqrt(p);
    double e = 0.0;
    int terms = 0;
    for (const auto& c : src) {
        const double w = std::norm(c * scale);
        if (w > tol::kTerm * tol::kTerm) ++terms;
        if (w > 0.0) e -= w * std::log2(w);
    }
    rec.term_count = terms;
    rec.entropy = std::max(0.0, e);
    rec.normalized = normalized_entanglement(rec.entropy, terms);
    return rec;
}

/// Records for steps 1..n_max, each from a hypothetical measurement of an
/// unmeasured walk. Equivalent to n_max independent replicas.
inline std::vector<EntanglementRecord> walk_entanglement_series(const CoinOperator& coin, const ShiftOperator& shift,
                                                                int n_max, Spin outcome) {
    if (n_max < 1) throw std::invalid_argument("walk_entanglement_series: n_max must be >= 1");
    std::vector<EntanglementRecord> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for_each_step(coin, shift, n_max, [&](const WalkState& s) { out.push_back(entanglement_record(s, outcome)); });
    return out;
}

struct BothOutcomes {
    std::vector<EntanglementRecord> up;
    std::vector<EntanglementRecord> down;

    const std::vector<EntanglementRecord>& operator[](Spin s) const { return s == Spin::Up ? up : down; }
};

/// Up and down series from a single evolution.
inline BothOutcomes walk_entanglement_series_both(const CoinOperator& coin, const ShiftOperator& shift, int n_max) {
    if (n_max < 1) throw std::invalid_argument("walk_entanglement_series: n_max must be >= 1");
    BothOutcomes out;
    out.up.reserve(static_cast<std::size_t>(n_max));
    out.down.reserve(static_cast<std::size_t>(n_max));
    for_each_step(coin, shift, n_max, [&](const WalkState& s) {
        out.up.push_back(entanglement_record(s, Spin::Up));
        out.down.push_back(entanglement_record(s, Spin::Down));
    });
    return out;
}

struct AveragedEntanglement {
    int n = 0;
    Spin outcome = Spin::Up;
    double value = 0.0;
};

/// Mean of normalized E over steps 2..n of a series that starts at step 1.
inline double average_from_step_two(std::span<const EntanglementRecord> series, int n) {
    if (n < 2) throw std::invalid_argument("averaged entanglement needs n >= 2");
    if (series.size() < static_cast<std::size_t>(n)) throw std::invalid_argument("series shorter than n");
    double sum = 0.0;
    for (int a = 2; a <= n; ++a) sum += series[static_cast<std::size_t>(a - 1)].normalized;
    return sum / static_cast<double>(n - 1);
}

inline AveragedEntanglement averaged_entanglement(const CoinOperator& coin, const ShiftOperator& shift, int n,
                                                  Spin outcome) {
    if (n < 2) throw std::invalid_argument("averaged_entanglement: n must be >= 2");
    const auto series = walk_entanglement_series(coin, shift, n, outcome);
    return {n, outcome, average_from_step_two(series, n)};
}

}  // namespace qrw
