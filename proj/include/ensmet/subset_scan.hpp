#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ensmet {

// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// Evaluates fn(0..count-1) into a vector. map_indexed parallelizes the loop
// with OpenMP when compiled in; its output is element-for-element identical
// to map_indexed_serial, which is kept as the reference implementation for
// tests and for the kernel benchmark. fn must be safe to call concurrently.
std::vector<double> map_indexed(std::size_t count,
                                const std::function<double(std::size_t)>& fn);
std::vector<double> map_indexed_serial(
    std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace ensmet
