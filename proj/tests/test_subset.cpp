#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "unictrl/matching.hpp"
#include "unictrl/subset.hpp"

using namespace unictrl;

namespace {

Matrix cols2(std::initializer_list<std::initializer_list<double>> cols) {
    const int d = static_cast<int>(cols.begin()->size());
    Matrix M(d, static_cast<int>(cols.size()));
    int j = 0;
    for (const auto& c : cols) {
        int i = 0;
        for (double v : c) M(i++, j) = v;
        ++j;
    }
    return M;
}

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

ReachableCone cone_of(const Matrix& A, const InputMatrix& B) {
    auto dec = select_left_chains(compute_spectrum(A), B);
    return reachable_cone(dec, B);
}

}  // namespace

TEST_CASE("positive_span_is_full basics") {
    CHECK(positive_span_is_full(cols2({{1, 0}, {0, 1}, {-1, -1}}), 2));
    CHECK_FALSE(positive_span_is_full(cols2({{1, 0}, {0, 1}}), 2));
    CHECK(positive_span_is_full(cols2({{1, 1}, {-1, 0}, {0, -1}}), 2));
    // rank deficiency alone rules fullness out
    CHECK_FALSE(positive_span_is_full(cols2({{1, 0}, {-1, 0}}), 2));
    // degenerate dimension
    CHECK(positive_span_is_full(Matrix::Zero(0, 0), 0));
}

TEST_CASE("is_subset_controllable on the sample network") {
    const Matrix A = sample_network();
    InputMatrix B(7, {{{6, -1}, {2, -1}}});
    auto cone = cone_of(A, B);

    CHECK(is_subset_controllable(cone, NodeSubset({1, 2, 3, 4, 5, 6}, 7)));
    CHECK_FALSE(is_subset_controllable(cone, NodeSubset({1, 2, 3, 4, 5, 6, 7}, 7)));
    CHECK(is_subset_controllable(cone, NodeSubset({}, 7)));
}

TEST_CASE("projection loses fullness on a quadrant-plus-line cone") {
    // Span+{e1+e2, -e1}: projecting onto coordinate 2 leaves only the
    // nonnegative ray
    ReachableCone cone;
    cone.ambient_dim = 2;
    for (auto [x, y] : {std::pair{1.0, 1.0}, {-1.0, 0.0}}) {
        ConeGenerator g;
        g.vector = Vector(2);
        g.vector << x, y;
        g.vector.normalize();
        cone.generators.push_back(g);
    }
    cone.lineality_basis = Matrix::Zero(2, 0);
    CHECK_FALSE(is_subset_controllable(cone, NodeSubset({2}, 2)));
    CHECK(is_subset_controllable(cone, NodeSubset({1}, 2)));  // both signs present on coord 1
}

TEST_CASE("ray_pair_node_test") {
    QSet q;
    q.columns = cols2({{0, 1, -1}, {0.5, -0.5, 0}});
    SUBCASE("row with opposite signs") { CHECK(ray_pair_node_test(2, q)); }
    SUBCASE("row without") { CHECK_FALSE(ray_pair_node_test(1, q)); }

    QSet empty;
    empty.columns = Matrix::Zero(3, 0);
    CHECK_FALSE(ray_pair_node_test(1, empty));

    QSet single;
    single.columns = cols2({{1, 1, 1}});
    for (int i = 1; i <= 3; ++i) CHECK_FALSE(ray_pair_node_test(i, single));
}

TEST_CASE("monotone closure: subsets of a passing subset pass") {
    std::mt19937 rng(53);
    int done = 0;
    while (done < 25) {
        const int n = 3 + static_cast<int>(rng() % 2u);
        Matrix A = testutil::random_int_matrix(rng, n);
        InputMatrix B = testutil::random_input(rng, n, 2 + static_cast<int>(rng() % 2u));
        ReachableCone cone;
        try {
            cone = cone_of(A, B);
        } catch (const SpectralError&) {
            continue;
        }
        ++done;

        // find a passing subset (fall back to singletons)
        for (unsigned mask = (1u << n) - 1; mask > 0; --mask) {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) idx.push_back(i + 1);
            NodeSubset vs(idx, n);
            if (!is_subset_controllable(cone, vs)) continue;
            // drop each element in turn
            for (size_t drop = 0; drop < idx.size(); ++drop) {
                std::vector<int> sub;
                for (size_t t = 0; t < idx.size(); ++t)
                    if (t != drop) sub.push_back(idx[t]);
                CHECK(is_subset_controllable(cone, NodeSubset(sub, n)));
            }
            break;
        }
    }
}

TEST_CASE("corollary bound: matching subset certifies lineality and passes") {
    std::mt19937 rng(59);
    int done = 0;
    while (done < 30) {
        const int n = 2 + static_cast<int>(rng() % 4u);
        Matrix A = testutil::random_int_matrix(rng, n);
        InputMatrix B = testutil::random_input(rng, n, 1 + static_cast<int>(rng() % 3u));
        ReachableCone cone;
        try {
            cone = cone_of(A, B);
        } catch (const SpectralError&) {
            continue;
        }
        ++done;

        auto match = subset_from_lineality(cone.lineality_basis, n);
        if (match.saturated) CHECK(match.nodes.size() == cone.lineality_dim);
        CHECK(is_subset_controllable(cone, match.nodes));
    }
}
