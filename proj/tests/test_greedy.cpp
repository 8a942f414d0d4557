#include <doctest.h>

#include <random>
#include <set>

#include "test_util.hpp"
#include "unictrl/greedy.hpp"
#include "unictrl/subset.hpp"

using namespace unictrl;

namespace {

Matrix sample_network() {
    Matrix A(7, 7);
    A << 1, -4, 0, 0, 0, 0, 0,
         4, 1, 0, 0, 0, 0, 0,
         1, 0, 3, 0, -1, 0, -1,
         0, 0, 1, 4, 1, 0, 4,
         0, 0, 0, 0, 2, -3, 0,
         0, 0, 0, 0, 3, 2, 0,
         0, 0, 0, 0, -3, 0, 0;
    return A;
}

Matrix diag12() {
    Matrix A = Matrix::Zero(2, 2);
    A(0, 0) = 1;
    A(1, 1) = 2;
    return A;
}

}  // namespace

TEST_CASE("delta examples") {
    SUBCASE("sample network, first column -e6 gains a complex pair") {
        auto base = compute_spectrum(sample_network());
        CHECK(delta(base, InputMatrix(7, {}), {6, -1}) == 2);
    }
    SUBCASE("repeating an existing column gains nothing") {
        auto base = compute_spectrum(diag12());
        InputMatrix B(2, {{{1, +1}}});
        CHECK(delta(base, B, {1, +1}) == 0);
    }
    SUBCASE("pairing the sign closes the line") {
        auto base = compute_spectrum(diag12());
        InputMatrix B(2, {{{1, +1}}});
        CHECK(delta(base, B, {1, -1}) == 1);
    }
}

TEST_CASE("sample network step 1: the published picks are among the maximizers") {
    auto base = compute_spectrum(sample_network());
    auto sel = select_column(base, InputMatrix(7, {}));
    CHECK_FALSE(sel.pair);

    int best = 0;
    for (const auto& ev : sel.record.singles) best = std::max(best, ev.lineality);
    CHECK(best == 2);

    std::set<std::pair<int, int>> maximizers;
    for (const auto& ev : sel.record.singles)
        if (ev.lineality == best) maximizers.insert({ev.beta.node, ev.beta.sign});
    // the four published selections all maximize the gain
    CHECK(maximizers.count({2, +1}));
    CHECK(maximizers.count({2, -1}));
    CHECK(maximizers.count({6, +1}));
    CHECK(maximizers.count({6, -1}));
    // inputs on the twin coordinates of the same rotation planes do too
    CHECK(maximizers.count({1, +1}));
    CHECK(maximizers.count({5, +1}));

    // deterministic rule: lowest node, positive sign first
    CHECK(sel.beta == SignedVersor{1, +1});
}

TEST_CASE("sample network step 2 after -e6: -e2 attains the maximal gain") {
    auto base = compute_spectrum(sample_network());
    InputMatrix B1(7, {{{6, -1}}});
    auto sel = select_column(base, B1);
    CHECK_FALSE(sel.pair);

    int best = 0;
    std::set<std::pair<int, int>> argmax;
    for (const auto& ev : sel.record.singles) best = std::max(best, ev.lineality);
    for (const auto& ev : sel.record.singles)
        if (ev.lineality == best) argmax.insert({ev.beta.node, ev.beta.sign});

    CHECK(best == 5);
    CHECK(argmax.count({2, -1}));
    CHECK(delta(base, B1, {2, -1}) == 3);
}

TEST_CASE("pair branch fires when no single column raises the lineality") {
    auto base = compute_spectrum(diag12());
    auto sel = select_column(base, InputMatrix(2, {}));
    CHECK(sel.pair);
    CHECK(sel.beta.node == 1);  // lowest-node tie-break
    REQUIRE(sel.record.chosen.size() == 2);
    CHECK(sel.record.chosen[0].sign == -sel.record.chosen[1].sign);
}

TEST_CASE("closing branch with one slot left picks a zero-gain single") {
    auto res = place_inputs(diag12(), 3);
    CHECK(res.B.cols() == 3);
    REQUIRE(res.trace.size() == 2);
    CHECK(res.trace[0].pair_added);
    CHECK(res.trace[1].pair_branch_blocked);
    CHECK(res.trace[1].trailing_single);
    CHECK(res.trace[1].chosen.size() == 1);
}

TEST_CASE("place_inputs on diag(1,2) with budget 2 matches the exhaustive optimum") {
    const Matrix A = diag12();
    auto res = place_inputs(A, 2);
    CHECK(res.B.cols() == 2);
    CHECK(res.Vs.size() >= 1);
    CHECK(is_subset_controllable(res.cone, res.Vs));

    // exhaustive search over all column multisets of size 2
    int best = 0;
    testutil::enumerate_column_multisets(2, 2, [&](const std::vector<SignedVersor>& cols) {
        auto r = evaluate_placement(A, InputMatrix(2, cols));
        best = std::max(best, testutil::max_controllable_subset_size(r.cone));
    });
    CHECK(best == res.Vs.size());
}

TEST_CASE("full budget on diagonal systems controls every node") {
    for (int n : {2, 3}) {
        Matrix A = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) A(i, i) = i + 1;
        auto res = place_inputs(A, 2 * n);
        CHECK(res.cone.lineality_dim == n);
        std::vector<int> all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        CHECK(res.Vs.indices() == all);
    }
}

TEST_CASE("budget edge cases") {
    SUBCASE("zero budget: empty result") {
        auto res = place_inputs(diag12(), 0);
        CHECK(res.B.cols() == 0);
        CHECK(res.Vs.empty());
        CHECK(res.trace.empty());
    }
    SUBCASE("budget beyond 2n rejected") {
        CHECK_THROWS_AS(place_inputs(diag12(), 5), InputError);
    }
    SUBCASE("more overrides than budget rejected") {
        GreedyOptions opts;
        opts.overrides = {{1, +1}, {1, -1}};
        CHECK_THROWS_AS(place_inputs(diag12(), 1, opts), InputError);
    }
}

TEST_CASE("sample network replay with the published overrides") {
    GreedyOptions opts;
    opts.overrides = {{6, -1}, {2, -1}};
    auto res = place_inputs(sample_network(), 2, opts);

    REQUIRE(res.B.cols() == 2);
    CHECK(res.B.columns()[0] == SignedVersor{6, -1});
    CHECK(res.B.columns()[1] == SignedVersor{2, -1});

    CHECK(res.cone.lineality_dim == 5);
    CHECK(res.cone.lineality_basis.cols() == 5);
    CHECK(res.Vs1.size() == 5);
    CHECK_FALSE(res.Vs1.contains(3));  // left free for the enlargement step
    CHECK(res.Q.size() == 2);
    CHECK(res.Vs.indices() == std::vector<int>{1, 2, 3, 4, 5, 6});

    // the matching pairs satisfy the pairing conditions
    CHECK(is_subset_controllable(res.cone, res.Vs1));
    CHECK(is_subset_controllable(res.cone, res.Vs));

    // trace records the overridden picks with their gains
    REQUIRE(res.trace.size() == 2);
    CHECK(res.trace[0].overridden);
    CHECK(res.trace[0].singles[0].delta == 2);
    CHECK(res.trace[1].singles[0].delta == 3);
}

TEST_CASE("deterministic greedy on the sample network without overrides") {
    auto res = place_inputs(sample_network(), 2);
    CHECK(res.B.columns()[0] == SignedVersor{1, +1});
    CHECK(res.cone.lineality_dim == 5);
    CHECK(res.Vs.size() >= 5);
    CHECK(is_subset_controllable(res.cone, res.Vs));
    // identical reruns give identical results
    auto res2 = place_inputs(sample_network(), 2);
    CHECK(res.Vs.indices() == res2.Vs.indices());
    CHECK(res.B.columns() == res2.B.columns());
}

TEST_CASE("random tie-breaking stays within the maximizer set") {
    GreedyOptions opts;
    opts.random_seed = 99;
    auto res = place_inputs(sample_network(), 1, opts);
    REQUIRE(res.trace.size() == 1);
    const SignedVersor chosen = res.trace[0].chosen[0];
    int best = 0;
    for (const auto& ev : res.trace[0].singles) best = std::max(best, ev.lineality);
    for (const auto& ev : res.trace[0].singles)
        if (ev.beta == chosen) CHECK(ev.lineality == best);
}

TEST_CASE("greedy invariants on random systems") {
    std::mt19937 rng(61);
    int done = 0;
    while (done < 30) {
        const int n = 2 + static_cast<int>(rng() % 3u);
        Matrix A = testutil::random_int_matrix(rng, n);
        const int m = 1 + static_cast<int>(rng() % 3u);
        PlacementResult res;
        try {
            res = place_inputs(A, std::min(m, 2 * n));
        } catch (const SpectralError&) {
            continue;
        }
        ++done;

        CHECK(res.B.cols() == std::min(m, 2 * n));  // budget exactly spent
        CHECK(res.Vs.size() <= n);
        CHECK(res.Vs.size() >= res.cone.lineality_dim - (res.matching_saturated ? 0 : 1));
        CHECK(is_subset_controllable(res.cone, res.Vs));

        // lineality never decreases along the trace
        int prev = 0;
        for (const auto& rec : res.trace) {
            CHECK(rec.lineality_after >= prev);
            prev = rec.lineality_after;
        }
    }
}
