#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrw/entanglement.hpp"
#include "qrw/parallel.hpp"
#include "qrw/walk.hpp"

namespace qrw {

enum class CoinFamily { Hadamard, Kempe, Z, General };

inline constexpr std::string_view to_string(CoinFamily f) {
    switch (f) {
        case CoinFamily::Hadamard: return "hadamard";
        case CoinFamily::Kempe: return "kempe";
        case CoinFamily::Z: return "z";
        case CoinFamily::General: return "general";
    }
    return "?";
}

inline CoinFamily parse_coin_family(std::string_view s) {
    if (s == "hadamard") return CoinFamily::Hadamard;
    if (s == "kempe") return CoinFamily::Kempe;
    if (s == "z") return CoinFamily::Z;
    if (s == "general") return CoinFamily::General;
    throw std::invalid_argument("unknown coin '" + std::string(s) + "'");
}

enum class Param { Rho, Theta, Eta, Alpha, BetaArg };

inline constexpr std::array<Param, 5> kAllParams = {Param::Rho, Param::Theta, Param::Eta, Param::Alpha,
                                                    Param::BetaArg};

inline constexpr std::string_view to_string(Param p) {
    switch (p) {
        case Param::Rho: return "rho";
        case Param::Theta: return "theta";
        case Param::Eta: return "eta";
        case Param::Alpha: return "alpha";
        case Param::BetaArg: return "beta_arg";
    }
    return "?";
}

inline Param parse_param(std::string_view s) {
    for (Param p : kAllParams)
        if (to_string(p) == s) return p;
    if (s == "beta-arg") return Param::BetaArg;
    throw std::invalid_argument("unknown parameter '" + std::string(s) + "'");
}

struct ParamDomain {
    double lo;
    double hi;
    bool periodic;  // hi excluded
};

inline constexpr ParamDomain domain(Param p) {
    switch (p) {
        case Param::Rho:
        case Param::Alpha: return {0.0, 1.0, false};
        case Param::Theta:
        case Param::Eta: return {0.0, kPi, false};
        case Param::BetaArg: return {0.0, kTwoPi, true};
    }
    return {0.0, 0.0, false};
}

inline bool in_domain(Param p, double v) {
    const auto d = domain(p);
    return std::isfinite(v) && v >= d.lo && (d.periodic ? v < d.hi : v <= d.hi);
}

/// Full coin + shift parameter tuple (phi = 0, p = +1, q = -1).
struct ParamPoint {
    double rho = 0.5;
    double theta = kHalfPi;
    double eta = kHalfPi;
    double alpha = kInvSqrt2;
    double beta_arg = 0.0;

    double get(Param p) const {
        switch (p) {
            case Param::Rho: return rho;
            case Param::Theta: return theta;
            case Param::Eta: return eta;
            case Param::Alpha: return alpha;
            case Param::BetaArg: return beta_arg;
        }
        return 0.0;
    }

    void set(Param p, double v) {
        switch (p) {
            case Param::Rho: rho = v; break;
            case Param::Theta: theta = v; break;
            case Param::Eta: eta = v; break;
            case Param::Alpha: alpha = v; break;
            case Param::BetaArg: beta_arg = v; break;
        }
    }

    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

inline CoinOperator family_coin(CoinFamily f, const ParamPoint& pt) {
    switch (f) {
        case CoinFamily::Hadamard: return coin_hadamard();
        case CoinFamily::Kempe: return coin_kempe();
        case CoinFamily::Z: return coin_z();
        case CoinFamily::General: break;
    }
    return CoinOperator(pt.rho, pt.theta, pt.eta, 0.0);
}

/// Replaces the coin parameters of a named family with its preset values.
inline ParamPoint canonical_point(CoinFamily f, ParamPoint pt) {
    if (f != CoinFamily::General) {
        const auto c = family_coin(f, pt);
        pt.rho = c.rho();
        pt.theta = c.theta();
        pt.eta = c.eta();
    }
    return pt;
}

inline bool coin_param(Param p) { return p == Param::Rho || p == Param::Theta || p == Param::Eta; }

/// Closed range sampled at a fixed step, plus explicitly listed extra points.
/// Both endpoints of a closed range are included; a periodic range drops
/// its upper end. start > stop gives no grid points.
struct Axis {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::vector<double> extra;

    static Axis single(double v) { return Axis{v, v, 1.0, {}}; }
    static Axis values(std::vector<double> vs) { return Axis{1.0, 0.0, 1.0, std::move(vs)}; }

    std::vector<double> points(bool periodic, double period = kTwoPi) const {
        std::vector<double> out;
        if (start <= stop) {
            const double slack = 1e-9 * step;
            for (long k = 0;; ++k) {
                double v = start + static_cast<double>(k) * step;
                if (v > stop + slack) break;
                if (v > stop) v = stop;
                if (periodic && v >= period - 1e-12) break;
                out.push_back(v);
            }
            if (!periodic && !out.empty() && stop - out.back() > slack) out.push_back(stop);
        }
        out.insert(out.end(), extra.begin(), extra.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

class SpecError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline std::vector<double> axis_points(Param p, const Axis& axis) {
    const auto d = domain(p);
    if (axis.start <= axis.stop) {
        if (!(std::isfinite(axis.step) && axis.step > 0.0))
            throw SpecError(std::string(to_string(p)) + ": grid step must be positive");
        if (!(axis.start >= d.lo && (d.periodic ? axis.stop <= d.hi : axis.stop <= d.hi)))
            throw SpecError(std::string(to_string(p)) + ": range outside its domain");
    }
    for (double v : axis.extra)
        if (!in_domain(p, v)) throw SpecError(std::string(to_string(p)) + ": point outside its domain");
    return axis.points(d.periodic, d.hi);
}

enum class SweepMode { Averaged, PerStep };

struct SweepSpec {
    CoinFamily coin_family = CoinFamily::Hadamard;
    ParamPoint fixed;
    Param swept = Param::Alpha;
    Axis axis;
    int n_steps = 200;
    std::vector<Spin> outcomes = {Spin::Down, Spin::Up};
    SweepMode mode = SweepMode::Averaged;
};

struct SweepRow {
    ParamPoint point;
    double value = 0.0;  // swept parameter value
    Spin outcome = Spin::Up;
    double averaged = 0.0;                    // Averaged mode
    std::vector<EntanglementRecord> series;  // PerStep mode, steps 1..n
};

inline void validate(const SweepSpec& spec) {
    if (spec.coin_family != CoinFamily::General && coin_param(spec.swept))
        throw SpecError("cannot sweep " + std::string(to_string(spec.swept)) + " of the " +
                        std::string(to_string(spec.coin_family)) + " coin");
    if (spec.mode == SweepMode::Averaged && spec.n_steps < 2) throw SpecError("averaged sweep needs n_steps >= 2");
    if (spec.n_steps < 1) throw SpecError("n_steps must be >= 1");
    if (spec.outcomes.empty()) throw SpecError("no outcomes requested");
    for (Param p : kAllParams) {
        if (p == spec.swept) continue;
        if (spec.coin_family != CoinFamily::General && coin_param(p)) continue;
        if (!in_domain(p, spec.fixed.get(p)))
            throw SpecError(std::string(to_string(p)) + " = " + std::to_string(spec.fixed.get(p)) +
                            " outside its domain");
    }
}

/// One row per grid point per outcome, in grid order.
inline std::vector<SweepRow> sweep_1d(const SweepSpec& spec, int workers = 0) {
    validate(spec);
    const auto values = axis_points(spec.swept, spec.axis);

    auto rows_for = [&](std::size_t i) {
        ParamPoint pt = spec.fixed;
        pt.set(spec.swept, values[i]);
        pt = canonical_point(spec.coin_family, pt);
        const auto coin = family_coin(spec.coin_family, pt);
        const ShiftOperator shift(pt.alpha, pt.beta_arg);
        const auto both = walk_entanglement_series_both(coin, shift, spec.n_steps);
        std::vector<SweepRow> rows;
        for (Spin s : spec.outcomes) {
            SweepRow row;
            row.point = pt;
            row.value = values[i];
            row.outcome = s;
            if (spec.mode == SweepMode::Averaged)
                row.averaged = average_from_step_two(both[s], spec.n_steps);
            else
                row.series = both[s];
            rows.push_back(std::move(row));
        }
        return rows;
    };

    const auto per_point = parallel_map<std::vector<SweepRow>>(values.size(), resolve_workers(workers), rows_for);
    std::vector<SweepRow> out;
    out.reserve(values.size() * spec.outcomes.size());
    for (const auto& rows : per_point)
        for (const auto& r : rows) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Maximal-entanglement search

enum class SearchCriterion { AveragedHigh, IsolatedMax };

struct MaxEntanglementHit {
    ParamPoint params;
    int step = 0;
    Spin outcome = Spin::Up;
    double normalized = 0.0;   // normalized E at `step`, or averaged value for AveragedHigh
    double probability = 0.0;  // P at `step`, or the smallest per-step P for AveragedHigh
    int term_count = 0;
};

struct SearchOptions {
    SearchCriterion criterion = SearchCriterion::IsolatedMax;
    int n_steps = 10;
    double p_threshold = 0.15;
    double averaged_threshold = 0.99;
    int min_step = 1;
};

/// Hits of a single parameter tuple, ordered by step then outcome (up, down).
///
/// IsolatedMax: every (step, outcome) with normalized E > 1 - 1e-9 and
/// P > p_threshold.
/// AveragedHigh: every outcome whose average over steps 2..n exceeds
/// averaged_threshold while P exceeds p_threshold at each of those steps.
inline std::vector<MaxEntanglementHit> point_hits(CoinFamily family, ParamPoint pt, const SearchOptions& opt) {
    pt = canonical_point(family, pt);
    const auto coin = family_coin(family, pt);
    const ShiftOperator shift(pt.alpha, pt.beta_arg);
    std::vector<MaxEntanglementHit> hits;

    if (opt.criterion == SearchCriterion::IsolatedMax) {
        for_each_step(coin, shift, opt.n_steps, [&](const WalkState& s) {
            if (s.step < opt.min_step) return;
            for (Spin o : {Spin::Up, Spin::Down}) {
                const auto rec = entanglement_record(s, o);
                if (rec.maximal() && rec.probability > opt.p_threshold)
                    hits.push_back({pt, rec.step, o, rec.normalized, rec.probability, rec.term_count});
            }
        });
        return hits;
    }

    if (opt.n_steps < 2) throw SpecError("averaged search needs n_steps >= 2");
    // An outcome drops out as soon as one of its steps 2..n has P at or below
    // the threshold, or its accumulated shortfall from 1 already rules out
    // the averaged threshold. The walk stops once both outcomes are out.
    struct Tally {
        bool alive = true;
        double sum = 0.0;
        double min_p = 1.0;
        int last_terms = 0;
    };
    Tally tally[2];
    const double steps_averaged = static_cast<double>(opt.n_steps - 1);
    const double max_shortfall = (1.0 - opt.averaged_threshold) * steps_averaged;
    const Mat2 c = coin_matrix(coin);
    WalkState cur = initial_state();
    WalkState next;
    for (int k = 1; k <= opt.n_steps; ++k) {
        detail::step_into(cur, c, shift, next);
        std::swap(cur, next);
        if (k < 2) continue;
        for (Spin o : {Spin::Up, Spin::Down}) {
            auto& t = tally[o == Spin::Up ? 0 : 1];
            if (!t.alive) continue;
            const auto rec = entanglement_record(cur, o);
            t.sum += rec.normalized;
            t.min_p = std::min(t.min_p, rec.probability);
            t.last_terms = rec.term_count;
            const double shortfall = static_cast<double>(k - 1) - t.sum;
            if (t.min_p <= opt.p_threshold || shortfall >= max_shortfall) t.alive = false;
        }
        if (!tally[0].alive && !tally[1].alive) break;
    }
    for (Spin o : {Spin::Up, Spin::Down}) {
        const auto& t = tally[o == Spin::Up ? 0 : 1];
        if (!t.alive) continue;
        const double avg = t.sum / steps_averaged;
        if (avg > opt.averaged_threshold && t.min_p > opt.p_threshold)
            hits.push_back({pt, opt.n_steps, o, avg, t.min_p, t.last_terms});
    }
    return hits;
}

/// Cartesian grid of explicit parameter values.
struct ParamGrid {
    std::vector<double> rho, theta, eta, alpha, beta_arg;

    const std::vector<double>& axis(Param p) const {
        switch (p) {
            case Param::Rho: return rho;
            case Param::Theta: return theta;
            case Param::Eta: return eta;
            case Param::Alpha: return alpha;
            case Param::BetaArg: return beta_arg;
        }
        return rho;
    }

    std::size_t size() const { return rho.size() * theta.size() * eta.size() * alpha.size() * beta_arg.size(); }

    /// Lexicographic in (rho, theta, eta, alpha, beta_arg), beta_arg fastest.
    ParamPoint point(std::size_t i) const {
        ParamPoint pt;
        pt.beta_arg = beta_arg[i % beta_arg.size()];
        i /= beta_arg.size();
        pt.alpha = alpha[i % alpha.size()];
        i /= alpha.size();
        pt.eta = eta[i % eta.size()];
        i /= eta.size();
        pt.theta = theta[i % theta.size()];
        i /= theta.size();
        pt.rho = rho[i];
        return pt;
    }
};

/// Uniform grid over the legal domains. Named coins only vary alpha and beta_arg.
inline ParamGrid uniform_grid(CoinFamily family, double step) {
    auto axis = [&](Param p) {
        const auto d = domain(p);
        return axis_points(p, Axis{d.lo, d.hi, step, {}});
    };
    ParamGrid g;
    if (family == CoinFamily::General) {
        g.rho = axis(Param::Rho);
        g.theta = axis(Param::Theta);
        g.eta = axis(Param::Eta);
    } else {
        const auto c = family_coin(family, {});
        g.rho = {c.rho()};
        g.theta = {c.theta()};
        g.eta = {c.eta()};
    }
    g.alpha = axis(Param::Alpha);
    g.beta_arg = axis(Param::BetaArg);
    return g;
}

/// uniform_grid plus the special points alpha = 1/sqrt2 and
/// beta_arg in {pi/2, pi, 3pi/2}.
inline ParamGrid case_grid(CoinFamily family, double step) {
    auto g = uniform_grid(family, step);
    auto add = [](std::vector<double>& v, std::initializer_list<double> extra) {
        v.insert(v.end(), extra);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    add(g.alpha, {kInvSqrt2});
    add(g.beta_arg, {kHalfPi, kPi, 3.0 * kHalfPi});
    return g;
}

struct SearchSummary {
    std::size_t points = 0;
    std::size_t hits = 0;
};

/// Scans every tuple of `grid` and streams hits to `sink` in grid order.
/// Work is split into blocks so memory stays bounded for large grids.
inline SearchSummary scan_grid(CoinFamily family, const ParamGrid& grid, const SearchOptions& opt, int workers,
                               const std::function<void(const MaxEntanglementHit&)>& sink) {
    constexpr std::size_t kBlock = std::size_t{1} << 15;
    const std::size_t total = grid.size();
    const unsigned nw = resolve_workers(workers);
    SearchSummary summary{total, 0};
    for (std::size_t begin = 0; begin < total; begin += kBlock) {
        const std::size_t n = std::min(kBlock, total - begin);
        const auto block = parallel_map<std::vector<MaxEntanglementHit>>(
            n, nw, [&](std::size_t i) { return point_hits(family, grid.point(begin + i), opt); });
        for (const auto& hs : block)
            for (const auto& h : hs) {
                sink(h);
                ++summary.hits;
            }
    }
    return summary;
}

struct GridSearchSpec {
    CoinFamily family = CoinFamily::General;
    double grid_step = 0.1;
    SearchOptions options;
};

inline SearchSummary grid_search(const GridSearchSpec& spec, int workers,
                                 const std::function<void(const MaxEntanglementHit&)>& sink) {
    if (!(spec.grid_step > 0.0)) throw SpecError("grid step must be positive");
    if (!(spec.options.p_threshold >= 0.0 && spec.options.p_threshold < 1.0))
        throw SpecError("p threshold must lie in [0, 1)");
    return scan_grid(spec.family, uniform_grid(spec.family, spec.grid_step), spec.options, workers, sink);
}

inline std::vector<MaxEntanglementHit> grid_search(const GridSearchSpec& spec, int workers = 0) {
    std::vector<MaxEntanglementHit> hits;
    grid_search(spec, workers, [&](const MaxEntanglementHit& h) { hits.push_back(h); });
    return hits;
}

/// Isolated maximal cases of a coin family over `grid`, steps 1..n_max.
inline std::vector<MaxEntanglementHit> find_max_cases(CoinFamily family, int n_max, double p_threshold,
                                                      const ParamGrid& grid, int workers = 0) {
    SearchOptions opt;
    opt.criterion = SearchCriterion::IsolatedMax;
    opt.n_steps = n_max;
    opt.p_threshold = p_threshold;
    std::vector<MaxEntanglementHit> hits;
    scan_grid(family, grid, opt, workers, [&](const MaxEntanglementHit& h) { hits.push_back(h); });
    return hits;
}

inline std::vector<MaxEntanglementHit> find_max_cases(CoinFamily family, int n_max, double p_threshold,
                                                      int workers = 0) {
    return find_max_cases(family, n_max, p_threshold, case_grid(family, 0.05), workers);
}

}  // namespace qrw
