#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "bernbound/bounds.hpp"
#include "bernbound/ensembles.hpp"
#include "bernbound/numeric.hpp"
#include "bernbound/philox.hpp"

using namespace bernbound;

TEST_CASE("new_tail_bound frozen values and flags") {
    const TailBoundReport a = new_tail_bound(100, 50.0);
    CHECK(a.bound == doctest::Approx(4.8073895283902820e-4).epsilon(1e-14));
    CHECK(a.log_bound == doctest::Approx(std::log(2.0) - 2500.0 / 300.0).epsilon(1e-14));
    CHECK_FALSE(a.trivial);
    CHECK(a.n == 100);
    CHECK(a.t == 50.0);
    CHECK_FALSE(a.epsilon.has_value());
    CHECK(a.aux.at("lambda_star") == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

    const TailBoundReport b = new_tail_bound(1, 1.0);
    CHECK(b.bound == doctest::Approx(1.5576015661428097).epsilon(1e-14));
    CHECK(b.trivial);  // > 1 is reported as-is

    // t -> 0+ approaches the trivial constant 2.
    CHECK(new_tail_bound(100, 1e-9).bound == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_AS(new_tail_bound(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(new_tail_bound(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(new_tail_bound(10, -1.0), std::invalid_argument);
}

TEST_CASE("hoeffding_bound frozen values") {
    const BernoulliEnsemble half({0.5});
    const double t = 0.34657359027997264;  // support radius of a fair coin
    const TailBoundReport rep = hoeffding_bound(half, t);
    CHECK(rep.bound == doctest::Approx(1.2130613194252668).epsilon(1e-13));
    CHECK(rep.aux.at("sum_log_sq") == doctest::Approx(half.sum_log_sq()).epsilon(1e-15));

    // The blow-up case: tiny probabilities make the bound trivial.
    const BernoulliEnsemble tiny(std::vector<double>(100, std::exp(-100.0)));
    const TailBoundReport blow = hoeffding_bound(tiny, 50.0);
    CHECK(blow.bound == doctest::Approx(1.9900249583853646).epsilon(1e-13));
    CHECK(blow.trivial);

    // Large t drives the bound to 0.
    CHECK(hoeffding_bound(half, 100.0).bound == 0.0);
}

TEST_CASE("classical_bernstein_bound frozen values") {
    const BernoulliEnsemble half({0.5});
    const double t = 0.34657359027997264;
    // Exponent is exactly -0.3 at this t: (t^2/2) / (L^2/4 + L^2/6) with t = L/2.
    const TailBoundReport rep = classical_bernstein_bound(half, t);
    CHECK(rep.bound == doctest::Approx(2.0 * std::exp(-0.3)).epsilon(1e-13));
    CHECK(rep.aux.at("variance_sum") == doctest::Approx(half.variance_sum()).epsilon(1e-15));
    CHECK(rep.aux.at("abs_log_pmin") == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    const BernoulliEnsemble tiny(std::vector<double>(100, std::exp(-100.0)));
    const TailBoundReport blow = classical_bernstein_bound(tiny, 50.0);
    CHECK(blow.bound == doctest::Approx(0.94473310548202941).epsilon(1e-13));
    CHECK(blow.bound >= 0.94);
}

TEST_CASE("degenerate-only ensembles short-circuit the classical bounds to 0") {
    const BernoulliEnsemble degenerate({0.0, 1.0});
    for (const TailBoundReport& rep :
         {hoeffding_bound(degenerate, 1.0), classical_bernstein_bound(degenerate, 1.0)}) {
        CHECK(rep.bound == 0.0);
        CHECK(rep.degenerate);
        CHECK_FALSE(rep.trivial);
    }
    // The parameter-free bound is unaffected: it never sees the probabilities.
    CHECK(new_tail_bound(degenerate.size(), 1.0).degenerate == false);
}

TEST_CASE("multinoulli_bound frozen values and the union-bound identity") {
    const TailBoundReport rep = multinoulli_bound(100, 2, 0.5);
    CHECK(rep.bound == doctest::Approx(0.32833999449559518).epsilon(1e-13));
    CHECK(rep.epsilon.has_value());
    CHECK(*rep.epsilon == 0.5);
    CHECK(rep.t == doctest::Approx(50.0).epsilon(1e-15));  // t = n epsilon
    CHECK(rep.aux.at("K") == 2.0);
    CHECK(rep.aux.at("t_per_category") == doctest::Approx(25.0).epsilon(1e-15));

    // bound(n, K, eps) = K * per-category bound at t = n eps / K.
    for (std::int64_t n : {1, 7, 100, 5000}) {
        for (int k : {2, 3, 5, 10}) {
            for (double eps : {1e-3, 0.1, 0.5, 2.0}) {
                const double lhs = multinoulli_bound(n, k, eps).bound;
                const double rhs =
                    k * new_tail_bound(n, static_cast<double>(n) * eps / k).bound;
                CHECK(relative_gap(lhs, rhs) <= 1e-12);
            }
        }
    }

    // eps -> 0+ approaches the trivial constant 2K.
    CHECK(multinoulli_bound(100, 3, 1e-12).bound == doctest::Approx(6.0).epsilon(1e-9));

    CHECK_THROWS_AS(multinoulli_bound(100, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(multinoulli_bound(100, 2, 0.0), std::invalid_argument);
}

TEST_CASE("grouped bounds reuse the core formulas under their own tags") {
    const TailBoundReport grouped = grouped_tail_bound(100, 50.0);
    const TailBoundReport plain = new_tail_bound(100, 50.0);
    CHECK(grouped.bound == plain.bound);
    CHECK(grouped.log_bound == plain.log_bound);
    CHECK(grouped.method == Method::kGrouped);
    CHECK(method_name(grouped.method) == "grouped");

    const TailBoundReport gm = grouped_multinoulli_bound(300, 3, 0.3);
    CHECK(gm.bound == doctest::Approx(1.5343749594786037).epsilon(1e-13));
    CHECK(gm.trivial);
    CHECK(gm.method == Method::kGroupedMultinoulli);
    CHECK(gm.bound == multinoulli_bound(300, 3, 0.3).bound);
}

TEST_CASE("compare emits the three methods per t in input order") {
    const BernoulliEnsemble ens({0.3, 0.5, 0.9});
    const std::vector<double> t_list = {0.5, 1.5};
    const auto reports = compare(ens, t_list);
    REQUIRE(reports.size() == 6);
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        CHECK(reports[3 * i].method == Method::kNew);
        CHECK(reports[3 * i + 1].method == Method::kHoeffding);
        CHECK(reports[3 * i + 2].method == Method::kClassicalBernstein);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(reports[3 * i + j].t == t_list[i]);
            CHECK(reports[3 * i + j].n == 3);
        }
    }
}

TEST_CASE("new bound is parameter independent: same n, any probabilities") {
    const std::vector<double> t_list = {0.25, 1.0, 4.0};
    const auto a = compare(BernoulliEnsemble({0.5, 0.5, 0.5}), t_list);
    const auto b = compare(BernoulliEnsemble({1e-10, 0.999, 0.123}), t_list);
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        // Bit-identical, not merely close.
        CHECK(a[3 * i].bound == b[3 * i].bound);
        CHECK(a[3 * i].log_bound == b[3 * i].log_bound);
    }
}

TEST_CASE("every bound is non-increasing in t") {
    const BernoulliEnsemble ens({0.3, 0.9, 1e-8, 0.5});
    std::vector<double> t_grid;
    for (int i = 1; i <= 60; ++i) {
        t_grid.push_back(0.05 * i * i);  // increasing, uneven spacing
    }
    const auto reports = compare(ens, t_grid);
    for (std::size_t i = 3; i < reports.size(); ++i) {
        CHECK(reports[i].bound <= reports[i - 3].bound * (1.0 + 1e-15));
    }
    double prev = 1e9;
    for (double t : t_grid) {
        const double cur = multinoulli_bound(12, 3, t / 12.0).bound;
        CHECK(cur <= prev * (1.0 + 1e-15));
        prev = cur;
    }
}

TEST_CASE("chernoff_optimize reproduces the closed form") {
    SUBCASE("frozen examples") {
        const ChernoffSolution left = chernoff_optimize(100, 50.0, TailSide::kLeft);
        CHECK(left.lambda_star == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
        CHECK(std::abs(left.lambda_star - left.closed_form_lambda) <= 1e-6);
        CHECK(left.objective_value == doctest::Approx(-25.0 / 3.0).epsilon(1e-12));

        const ChernoffSolution unit = chernoff_optimize(1, 1.0, TailSide::kLeft);
        CHECK(unit.lambda_star == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(unit.objective_value == doctest::Approx(-0.25).epsilon(1e-12));

        const ChernoffSolution right = chernoff_optimize(100, 50.0, TailSide::kRight);
        CHECK(right.lambda_star == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(right.closed_form_lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(right.objective_value == doctest::Approx(left.objective_value).epsilon(1e-14));
    }
    SUBCASE("random (n, t) pairs agree with the closed form") {
        for (std::uint64_t c = 0; c < 200; ++c) {
            const double u1 = uniform01(71, c, 0);
            const double u2 = uniform01(71, c, 1);
            const auto n = static_cast<std::int64_t>(std::exp(u1 * std::log(1e6))) + 1;
            const double t = (u2 * 0.999 + 1e-3) * 10.0 * static_cast<double>(n);
            const TailSide side = (c % 2 == 0) ? TailSide::kLeft : TailSide::kRight;
            const ChernoffSolution sol = chernoff_optimize(n, t, side);
            CHECK(std::abs(sol.lambda_star - sol.closed_form_lambda) <= 1e-6);
            // exp(objective) equals half the two-sided bound; compare logs
            // because the exponent reaches ~-1e6 where exp underflows.
            const double expected = new_tail_bound(n, t).log_bound - std::log(2.0);
            CHECK(std::abs(sol.objective_value - expected) <=
                  1e-10 * std::max(1.0, std::abs(expected)));
            // The numeric minimum can't beat the closed form by more than slack.
            const double u_star = std::abs(sol.closed_form_lambda);
            const double closed_obj =
                (static_cast<double>(n) + t) * u_star * u_star / 2.0 - u_star * t;
            CHECK(sol.objective_value <= closed_obj + 1e-12 * std::max(1.0, std::abs(closed_obj)));
        }
    }
}
