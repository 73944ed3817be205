#pragma once

// Value parsing, figure presets and CSV emission for the qrw command line.

#include <charconv>
#include <cmath>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qrw/qrw.hpp"

namespace qrw::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Bad command-line value; `field` names the offending flag.
class UsageError : public std::runtime_error {
  public:
    UsageError(std::string field, const std::string& what) : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Plain decimal, `r2inv` (1/sqrt2), or a rational multiple of pi such as
/// `pi`, `pi/2`, `3pi/2`, `2*pi/3`.
inline double parse_real(const std::string& field, const std::string& text) {
    if (text == "r2inv") return kInvSqrt2;
    static const std::regex pi_form(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]+\.?[0-9]*))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        const double num = m[1].length() ? std::stod(m[1].str()) : 1.0;
        const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
        if (den == 0.0) throw UsageError(field, "invalid " + field + ": division by zero in '" + text + "'");
        // Quarter turns are formed exactly.
        if (num == std::floor(num) && (den == 1.0 || den == 2.0)) return num * (den == 1.0 ? kPi : kHalfPi);
        return num * kPi / den;
    }
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) throw UsageError(field, "invalid " + field + ": cannot parse '" + text + "'");
    return v;
}

/// Shortest round-trip representation; identical bytes for identical doubles.
inline std::string fmt_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string join_outcomes(const std::vector<Spin>& os) {
    std::string s;
    for (std::size_t i = 0; i < os.size(); ++i) {
        if (i) s += ',';
        s += to_string(os[i]);
    }
    return s;
}

inline std::vector<Spin> parse_outcomes(const std::string& text) {
    if (text == "both") return {Spin::Down, Spin::Up};
    try {
        return {parse_spin(text)};
    } catch (const std::invalid_argument&) {
        throw UsageError("outcome", "invalid outcome: '" + text + "' (expected up, down or both)");
    }
}

// ---------------------------------------------------------------------------
// Figure presets

struct FigurePreset {
    std::string tag;
    std::string description;
    std::vector<SweepSpec> specs;
    std::vector<Param> labels;  // fixed parameters that differ between specs
};

inline constexpr double kPlotResolution = 0.005;

inline Axis alpha_axis() { return Axis{0.0, 1.0, kPlotResolution, {kInvSqrt2}}; }
inline Axis phase_axis() { return Axis{0.0, kTwoPi, kPlotResolution, {kHalfPi, kPi, 3.0 * kHalfPi}}; }

inline FigurePreset figure_preset(const std::string& tag) {
    auto base = [](CoinFamily f) {
        SweepSpec s;
        s.coin_family = f;
        s.n_steps = 200;
        s.outcomes = {Spin::Down, Spin::Up};
        s.mode = SweepMode::Averaged;
        return s;
    };
    FigurePreset fp;
    fp.tag = tag;
    if (tag == "fig1" || tag == "fig6") {
        auto s = base(tag == "fig1" ? CoinFamily::Hadamard : CoinFamily::Z);
        s.swept = Param::Alpha;
        s.axis = alpha_axis();
        s.fixed.beta_arg = 0.0;
        fp.description = std::string(tag == "fig1" ? "hadamard" : "z") + " coin, real beta, averaged E over 200 steps vs alpha";
        fp.specs = {s};
    } else if (tag == "fig2") {
        auto s = base(CoinFamily::Hadamard);
        s.mode = SweepMode::PerStep;
        s.n_steps = 800;
        s.outcomes = {Spin::Down};
        s.swept = Param::Alpha;
        s.axis = Axis::values({0.37, 0.7071, 0.71});
        s.fixed.beta_arg = 0.0;
        fp.description = "hadamard coin, real beta, normalized E per step (800 steps), down outcome";
        fp.specs = {s};
    } else if (tag == "fig3" || tag == "fig4") {
        auto s = base(CoinFamily::Hadamard);
        s.swept = Param::BetaArg;
        s.axis = phase_axis();
        s.fixed.alpha = tag == "fig3" ? 0.37 : kInvSqrt2;
        fp.description = std::string("hadamard coin, alpha = ") + (tag == "fig3" ? "0.37" : "1/sqrt2") +
                         ", averaged E over 200 steps vs arg(beta)";
        fp.specs = {s};
    } else if (tag == "fig5") {
        for (double a : {kInvSqrt2, 0.37}) {
            auto s = base(CoinFamily::Kempe);
            s.swept = Param::BetaArg;
            s.axis = phase_axis();
            s.fixed.alpha = a;
            fp.specs.push_back(s);
        }
        fp.labels = {Param::Alpha};
        fp.description = "kempe coin, alpha in {1/sqrt2, 0.37}, averaged E over 200 steps vs arg(beta)";
    } else {
        throw UsageError("figure", "invalid figure: '" + tag + "' (expected fig1..fig6)");
    }
    return fp;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_meta(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta) {
    os << "# qrw " << kVersion << '\n';
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    os << "# tolerance.term: " << fmt_real(tol::kTerm) << '\n';
    os << "# tolerance.maximal: " << fmt_real(tol::kMaximal) << '\n';
}

inline std::string describe(const SweepSpec& s) {
    std::string d = "coin=" + std::string(to_string(s.coin_family));
    for (Param p : kAllParams) {
        if (p == s.swept) continue;
        if (s.coin_family != CoinFamily::General && coin_param(p)) continue;
        d += " " + std::string(to_string(p)) + "=" + fmt_real(s.fixed.get(p));
    }
    d += " swept=" + std::string(to_string(s.swept));
    if (s.axis.start <= s.axis.stop)
        d += " range=[" + fmt_real(s.axis.start) + "," + fmt_real(s.axis.stop) + "] step=" + fmt_real(s.axis.step);
    if (!s.axis.extra.empty()) {
        d += " points=";
        for (std::size_t i = 0; i < s.axis.extra.size(); ++i) d += (i ? "," : "") + fmt_real(s.axis.extra[i]);
    }
    d += " steps=" + std::to_string(s.n_steps);
    d += " outcomes=" + join_outcomes(s.outcomes);
    d += std::string(" mode=") + (s.mode == SweepMode::Averaged ? "averaged" : "per-step");
    return d;
}

inline void write_record_header(std::ostream& os) { os << "step,outcome,P,N,E_bits,normalized_E\n"; }

inline void write_record(std::ostream& os, const EntanglementRecord& r) {
    os << r.step << ',' << to_string(r.outcome) << ',' << fmt_real(r.probability) << ',' << r.term_count << ','
       << fmt_real(r.entropy) << ',' << fmt_real(r.normalized) << '\n';
}

/// Sweep rows for a list of specs sharing one mode and step count.
inline void write_sweep(std::ostream& os, const std::vector<SweepSpec>& specs, const std::vector<Param>& labels,
                        const std::vector<std::vector<SweepRow>>& results) {
    const auto& first = specs.front();
    for (Param p : labels) os << to_string(p) << ',';
    os << to_string(first.swept) << ",outcome,";
    if (first.mode == SweepMode::Averaged)
        os << "avg_E_" << first.n_steps << '\n';
    else
        os << "step,P,N,E_bits,normalized_E\n";

    for (const auto& rows : results) {
        for (const auto& row : rows) {
            std::string prefix;
            for (Param p : labels) prefix += fmt_real(row.point.get(p)) + ',';
            prefix += fmt_real(row.value) + ',' + std::string(to_string(row.outcome)) + ',';
            if (first.mode == SweepMode::Averaged) {
                os << prefix << fmt_real(row.averaged) << '\n';
            } else {
                for (const auto& r : row.series)
                    os << prefix << r.step << ',' << fmt_real(r.probability) << ',' << r.term_count << ','
                       << fmt_real(r.entropy) << ',' << fmt_real(r.normalized) << '\n';
            }
        }
    }
}

inline void write_hit_header(std::ostream& os) { os << "rho,theta,eta,alpha,beta_arg,step,outcome,normalized_E,P,N\n"; }

inline void write_hit(std::ostream& os, const MaxEntanglementHit& h) {
    os << fmt_real(h.params.rho) << ',' << fmt_real(h.params.theta) << ',' << fmt_real(h.params.eta) << ','
       << fmt_real(h.params.alpha) << ',' << fmt_real(h.params.beta_arg) << ',' << h.step << ','
       << to_string(h.outcome) << ',' << fmt_real(h.normalized) << ',' << fmt_real(h.probability) << ','
       << h.term_count << '\n';
}

}  // namespace qrw::cli
