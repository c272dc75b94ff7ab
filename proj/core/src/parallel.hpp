#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace aquant::detail {

// Runs f(k) for k in [0, n) on up to hardware_concurrency threads. Work
// items must be independent; the first exception is rethrown.
template <class F>
void parallel_for(int n, F&& f) {
    const int threads = std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
    if (threads <= 1) {
        for (int k = 0; k < n; ++k) f(k);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int k = w; k < n; k += threads) f(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace aquant::detail
