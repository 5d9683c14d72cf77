#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wigner/linalg.hpp"

namespace wigner {

/// A perfect matching of {0,...,m-1}, m even.
using PairPartition = std::vector<std::pair<int, int>>;

/// All perfect matchings of {0,...,m-1}; (m-1)!! of them.
inline std::vector<PairPartition> pair_partitions(int m) {
    std::vector<PairPartition> out;
    if (m % 2 != 0) return out;
    std::vector<int> items(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) items[static_cast<std::size_t>(i)] = i;
    PairPartition current;
    std::vector<bool> used(static_cast<std::size_t>(m), false);

    std::function<void()> rec = [&]() {
        int first = -1;
        for (int i = 0; i < m; ++i)
            if (!used[static_cast<std::size_t>(i)]) { first = i; break; }
        if (first < 0) {
            out.push_back(current);
            return;
        }
        used[static_cast<std::size_t>(first)] = true;
        for (int j = first + 1; j < m; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            current.emplace_back(first, j);
            rec();
            current.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
        used[static_cast<std::size_t>(first)] = false;
    };
    rec();
    return out;
}

/// Joint Gaussian moment E[Z_{i_1} ... Z_{i_m}] for Z ~ N(0, cov): zero for
/// odd m, otherwise the sum over pair partitions of products of covariances.
/// Used as the ground truth in joint-Gaussianity tests.
inline double wick_moment(const Mat& cov, const std::vector<int>& indices) {
    if (cov.rows() != cov.cols()) throw std::invalid_argument("wick_moment: covariance must be square");
    for (std::size_t i = 0; i < cov.rows(); ++i)
        for (std::size_t j = i + 1; j < cov.cols(); ++j)
            if (cov.at(i, j) != cov.at(j, i))
                throw std::invalid_argument("wick_moment: covariance must be symmetric");
    for (int idx : indices)
        if (idx < 0 || static_cast<std::size_t>(idx) >= cov.rows())
            throw std::invalid_argument("wick_moment: index out of range");

    const int m = static_cast<int>(indices.size());
    if (m == 0) return 1.0;
    if (m % 2 == 1) return 0.0;

    // recursive pairing of the first unpaired index; (m-1)!! terms
    std::vector<bool> used(indices.size(), false);
    std::function<double()> rec = [&]() -> double {
        int first = -1;
        for (int i = 0; i < m; ++i)
            if (!used[static_cast<std::size_t>(i)]) { first = i; break; }
        if (first < 0) return 1.0;
        used[static_cast<std::size_t>(first)] = true;
        double total = 0.0;
        for (int j = first + 1; j < m; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            double c = cov.at(static_cast<std::size_t>(indices[static_cast<std::size_t>(first)]),
                              static_cast<std::size_t>(indices[static_cast<std::size_t>(j)]));
            if (c != 0.0) total += c * rec();
            used[static_cast<std::size_t>(j)] = false;
        }
        used[static_cast<std::size_t>(first)] = false;
        return total;
    };
    return rec();
}

}  // namespace wigner
