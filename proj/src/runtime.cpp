#include "mobius/runtime.hpp"

namespace mobius {

namespace {
std::atomic<int> g_threads{1};
}

void set_worker_threads(int threads) {
    g_threads.store(threads < 1 ? 1 : threads);
}

int worker_threads() {
    return g_threads.load();
}

} // namespace mobius
