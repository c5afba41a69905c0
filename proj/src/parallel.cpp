#include "flag/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace flag {

namespace {
std::atomic<int> g_max_threads{0};
thread_local bool t_in_worker = false;
}

void set_max_threads(int n)
{
    g_max_threads.store(n < 0 ? 0 : n);
}

int max_threads()
{
    int n = g_max_threads.load();
    if (n == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc ? static_cast<int>(hc) : 1;
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const int nthreads = max_threads();
    if (n == 0) return;
    if (t_in_worker || nthreads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        t_in_worker = true;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
        t_in_worker = false;
    };
    std::size_t nw = std::min<std::size_t>(nthreads, n);
    std::vector<std::thread> threads;
    threads.reserve(nw - 1);
    for (std::size_t t = 1; t < nw; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
}

} // namespace flag
