#ifndef SPINDISCORD_PARALLEL_HPP
#define SPINDISCORD_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace spindiscord {

// Run f(i) for i in [0, count) on up to n_threads workers.  Work items are
// claimed from a shared counter; results must be written by index so the
// output does not depend on the schedule.
template <class F>
void parallel_for(std::size_t count, int n_threads, F&& f) {
    if (n_threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            f(i);
    };
    std::vector<std::thread> pool;
    const int workers = std::min<std::size_t>(n_threads, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace spindiscord

#endif
