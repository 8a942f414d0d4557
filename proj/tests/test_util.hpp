#pragma once

#include <functional>
#include <random>
#include <vector>

#include "unictrl/cone.hpp"
#include "unictrl/subset.hpp"
#include "unictrl/types.hpp"

namespace unictrl::testutil {

// platform-stable integer draw in [lo, hi]
inline int rand_int(std::mt19937& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

inline Matrix random_int_matrix(std::mt19937& rng, int n, int lo = -4, int hi = 4) {
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rand_int(rng, lo, hi);
    return A;
}

inline InputMatrix random_input(std::mt19937& rng, int n, int m) {
    std::vector<SignedVersor> cols;
    for (int j = 0; j < m; ++j)
        cols.push_back({rand_int(rng, 1, n), rand_int(rng, 0, 1) == 0 ? +1 : -1});
    return InputMatrix(n, cols);
}

// Exhaustive maximum controllable subset for one cone (test oracle; n <= 7).
inline int max_controllable_subset_size(const ReachableCone& cone, double tau_zero = 1e-9,
                                        double tau_lp = 1e-7) {
    const int n = cone.ambient_dim;
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best) continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i + 1);
        if (is_subset_controllable(cone, NodeSubset(idx, n), tau_zero, tau_lp)) best = size;
    }
    return best;
}

// All signed-versor multisets of size m over n nodes (order irrelevant).
inline void enumerate_column_multisets(int n, int m,
                                       const std::function<void(const std::vector<SignedVersor>&)>& fn) {
    std::vector<SignedVersor> all;
    for (int i = 1; i <= n; ++i) {
        all.push_back({i, +1});
        all.push_back({i, -1});
    }
    std::vector<SignedVersor> current;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(current.size()) == m) {
            fn(current);
            return;
        }
        for (size_t i = start; i < all.size(); ++i) {
            current.push_back(all[i]);
            rec(i);  // multisets: repetition allowed
            current.pop_back();
        }
    };
    rec(0);
}

}  // namespace unictrl::testutil
