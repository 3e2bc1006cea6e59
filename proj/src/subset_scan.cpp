#include "ensmet/subset_scan.hpp"

#include <numeric>
#include <stdexcept>

namespace ensmet {

std::vector<std::vector<int>> combinations(int n, int k) {
    if (k < 0 || n < 0) throw std::invalid_argument("negative combination size");
    std::vector<std::vector<int>> out;
    if (k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<double> map_indexed_serial(
    std::size_t count, const std::function<double(std::size_t)>& fn) {
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = fn(i);
    return values;
}

std::vector<double> map_indexed(std::size_t count,
                                const std::function<double(std::size_t)>& fn) {
    std::vector<double> values(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i)
        values[i] = fn(static_cast<std::size_t>(i));
    return values;
}

}  // namespace ensmet
