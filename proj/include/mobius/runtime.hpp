#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace mobius {

/// Worker count used by the root-splitting parallel enumerations. Results are
/// merged in fixed letter order, so outputs do not depend on this value.
void set_worker_threads(int threads);
int worker_threads();

/// Runs fn(i) for i in [0, count) and returns the results in index order,
/// on the configured number of workers.
template <typename Fn>
auto run_indexed(size_t count, Fn&& fn) {
    using T = decltype(fn(size_t{0}));
    std::vector<T> out(count);
    int workers = worker_threads();
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto drain = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) break;
            try {
                out[i] = fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    size_t spawn = std::min<size_t>(static_cast<size_t>(workers), count);
    for (size_t t = 1; t < spawn; ++t) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
    return out;
}

} // namespace mobius
