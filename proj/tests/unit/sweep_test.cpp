#include "qrw/sweep.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qrw;

TEST(Axis, closed_range_includes_both_ends) {
    const auto pts = Axis{0.0, 1.0, 0.3, {}}.points(false);
    ASSERT_EQ(pts.size(), 5u);
    EXPECT_EQ(pts.front(), 0.0);
    EXPECT_EQ(pts.back(), 1.0);
}

TEST(Axis, periodic_range_drops_the_period) {
    const auto pts = axis_points(Param::BetaArg, Axis{0.0, kTwoPi, kHalfPi, {}});
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_LT(pts.back(), kTwoPi);
}

TEST(Axis, extra_points_are_merged_and_deduplicated) {
    const auto pts = Axis{0.0, 1.0, 0.5, {kInvSqrt2, 0.5}}.points(false);
    EXPECT_EQ(pts, (std::vector<double>{0.0, 0.5, kInvSqrt2, 1.0}));
    EXPECT_EQ(Axis::values({0.3, 0.1}).points(false), (std::vector<double>{0.1, 0.3}));
    EXPECT_TRUE((Axis{1.0, 0.0, 0.1, {}}.points(false)).empty());
}

TEST(Axis, invalid_axes_are_rejected) {
    EXPECT_THROW(axis_points(Param::Alpha, Axis{0.0, 1.0, 0.0, {}}), SpecError);
    EXPECT_THROW(axis_points(Param::Alpha, Axis{0.0, 1.5, 0.1, {}}), SpecError);
}

TEST(Grid, enumerates_every_tuple_once) {
    ParamGrid g{{0.0, 1.0}, {0.0, 1.0, 2.0}, {0.5}, {0.1, 0.2}, {0.0, 1.0, 2.0, 3.0}};
    ASSERT_EQ(g.size(), 2u * 3 * 1 * 2 * 4);
    std::set<std::tuple<double, double, double, double, double>> seen;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto p = g.point(i);
        seen.emplace(p.rho, p.theta, p.eta, p.alpha, p.beta_arg);
    }
    EXPECT_EQ(seen.size(), g.size());
    EXPECT_EQ(g.point(1).beta_arg, 1.0);
    EXPECT_EQ(g.point(4).alpha, 0.2);
}

TEST(Grid, named_coins_vary_only_shift_parameters) {
    const auto g = uniform_grid(CoinFamily::Hadamard, 0.1);
    EXPECT_EQ(g.rho.size(), 1u);
    EXPECT_EQ(g.alpha.size(), 11u);
    EXPECT_EQ(g.beta_arg.size(), 63u);
    const auto c = case_grid(CoinFamily::Z, 0.1);
    EXPECT_NE(std::find(c.alpha.begin(), c.alpha.end(), kInvSqrt2), c.alpha.end());
    EXPECT_NE(std::find(c.beta_arg.begin(), c.beta_arg.end(), kPi), c.beta_arg.end());
}

TEST(Sweep, hadamard_alpha_sweep_peaks_next_to_critical_point) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::Hadamard;
    spec.swept = Param::Alpha;
    spec.axis = Axis::values({0.6, 0.7, 0.7071, kInvSqrt2, 0.72, 0.8});
    spec.n_steps = 200;
    spec.outcomes = {Spin::Down};
    const auto rows = sweep_1d(spec, 2);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_GE(rows[2].averaged, 0.99);
    EXPECT_EQ(rows[3].averaged, 0.0);
    EXPECT_LT(rows[0].averaged, rows[1].averaged);
    EXPECT_LT(rows[1].averaged, rows[2].averaged);
    EXPECT_GT(rows[4].averaged, rows[5].averaged);
}

TEST(Sweep, z_coin_is_flat_in_beta_phase) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::Z;
    spec.fixed.alpha = 0.37;
    spec.swept = Param::BetaArg;
    spec.axis = Axis{0.0, kTwoPi, 0.5, {}};
    spec.n_steps = 200;
    const auto rows = sweep_1d(spec, 3);
    for (const auto& r : rows) {
        const auto& first = r.outcome == Spin::Down ? rows[0] : rows[1];
        EXPECT_NEAR(r.averaged, first.averaged, 1e-9);
    }
}

TEST(Sweep, hadamard_critical_phase_pi_gives_zero) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::Hadamard;
    spec.fixed.alpha = kInvSqrt2;
    spec.swept = Param::BetaArg;
    spec.axis = Axis::values({kPi});
    spec.n_steps = 200;
    for (const auto& r : sweep_1d(spec)) EXPECT_EQ(r.averaged, 0.0) << to_string(r.outcome);
}

TEST(Sweep, per_step_mode_keeps_the_series) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::Kempe;
    spec.swept = Param::Alpha;
    spec.axis = Axis::values({0.4});
    spec.n_steps = 12;
    spec.mode = SweepMode::PerStep;
    spec.outcomes = {Spin::Up};
    const auto rows = sweep_1d(spec);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].series.size(), 12u);
}

TEST(Sweep, rejects_coin_parameter_on_named_coin) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::Hadamard;
    spec.swept = Param::Rho;
    spec.axis = Axis{0.0, 1.0, 0.1, {}};
    EXPECT_THROW(sweep_1d(spec), SpecError);
}

TEST(Sweep, results_do_not_depend_on_worker_count) {
    SweepSpec spec;
    spec.coin_family = CoinFamily::General;
    spec.fixed = ParamPoint{0.3, 1.1, 0.4, 0.6, 0.0};
    spec.swept = Param::BetaArg;
    spec.axis = Axis{0.0, kTwoPi, 0.05, {}};
    spec.n_steps = 60;
    const auto a = sweep_1d(spec, 1);
    const auto b = sweep_1d(spec, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].point, b[i].point);
        ASSERT_EQ(a[i].outcome, b[i].outcome);
        ASSERT_EQ(a[i].averaged, b[i].averaged);
    }
}

TEST(Search, down_phase_slice_hits_at_step_two) {
    SearchOptions opt;
    opt.n_steps = 4;
    opt.p_threshold = 0.0;
    for (double th : {0.3, 1.2, 2.5})
        for (double et : {0.1, 1.7}) {
            const ParamPoint pt{0.5, th, et, 0.45, th + et};
            const auto hits = point_hits(CoinFamily::General, pt, opt);
            const bool found = std::any_of(hits.begin(), hits.end(), [](const MaxEntanglementHit& h) {
                return h.step == 2 && h.outcome == Spin::Down && h.term_count == 2;
            });
            EXPECT_TRUE(found) << th << " " << et;
        }
}

TEST(Search, hadamard_down_catalog_at_step_two) {
    const auto hits = find_max_cases(CoinFamily::Hadamard, 2, 0.15, case_grid(CoinFamily::Hadamard, 0.1));
    ASSERT_FALSE(hits.empty());
    for (const auto& h : hits) {
        EXPECT_EQ(h.step, 2);
        EXPECT_GT(h.probability, 0.15);
        EXPECT_GT(h.normalized, 1 - 1e-9);
    }
    EXPECT_TRUE(std::any_of(hits.begin(), hits.end(), [](const auto& h) { return h.outcome == Spin::Down; }));
}

TEST(Search, z_up_maximal_only_at_critical_alpha) {
    const auto hits = find_max_cases(CoinFamily::Z, 2, 0.15, case_grid(CoinFamily::Z, 0.1));
    int up = 0;
    for (const auto& h : hits) {
        if (h.outcome != Spin::Up) continue;
        ++up;
        EXPECT_EQ(h.params.alpha, kInvSqrt2);
        EXPECT_NEAR(h.probability, 0.5, 1e-6);
        EXPECT_EQ(h.term_count, 2);
    }
    EXPECT_GT(up, 0);
}

TEST(Search, hadamard_quarter_turn_has_no_late_hits) {
    ParamGrid g = case_grid(CoinFamily::Hadamard, 0.05);
    g.beta_arg = {kHalfPi};
    SearchOptions opt;
    opt.n_steps = 200;
    opt.min_step = 5;
    std::size_t hits = 0;
    scan_grid(CoinFamily::Hadamard, g, opt, 0, [&](const MaxEntanglementHit&) { ++hits; });
    EXPECT_EQ(hits, 0u);
}

TEST(Search, hits_revalidate_and_are_worker_independent) {
    GridSearchSpec spec;
    spec.family = CoinFamily::General;
    spec.grid_step = 0.5;
    spec.options.n_steps = 6;
    const auto a = grid_search(spec, 1);
    const auto b = grid_search(spec, 5);
    ASSERT_EQ(a.size(), b.size());
    ASSERT_FALSE(a.empty());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].params, b[i].params);
        ASSERT_EQ(a[i].step, b[i].step);
        ASSERT_EQ(a[i].outcome, b[i].outcome);
    }
    for (std::size_t i = 0; i < a.size(); i += 7) {
        const auto& h = a[i];
        const auto rec = entanglement_record(
            evolve(family_coin(spec.family, h.params), ShiftOperator(h.params.alpha, h.params.beta_arg), h.step),
            h.outcome);
        EXPECT_NEAR(rec.normalized, h.normalized, 1e-12);
        EXPECT_GT(rec.probability, spec.options.p_threshold);
    }
}

TEST(Search, averaged_criterion_matches_direct_evaluation) {
    SearchOptions opt;
    opt.criterion = SearchCriterion::AveragedHigh;
    opt.n_steps = 20;
    opt.averaged_threshold = 0.3;
    opt.p_threshold = 0.01;
    const ParamPoint pt{0.5, 1.0, 0.5, 0.45, 1.5};
    const auto hits = point_hits(CoinFamily::General, pt, opt);
    const auto coin = family_coin(CoinFamily::General, pt);
    const ShiftOperator shift(pt.alpha, pt.beta_arg);
    for (Spin o : {Spin::Up, Spin::Down}) {
        const auto series = walk_entanglement_series(coin, shift, 20, o);
        double min_p = 1.0;
        for (std::size_t a = 1; a < series.size(); ++a) min_p = std::min(min_p, series[a].probability);
        const double avg = average_from_step_two(series, 20);
        const bool expect_hit = avg > 0.3 && min_p > 0.01;
        const auto it = std::find_if(hits.begin(), hits.end(), [&](const auto& h) { return h.outcome == o; });
        EXPECT_EQ(it != hits.end(), expect_hit) << to_string(o);
        if (it != hits.end()) {
            EXPECT_NEAR(it->normalized, avg, 1e-12);
            EXPECT_EQ(it->probability, min_p);
        }
    }
}
