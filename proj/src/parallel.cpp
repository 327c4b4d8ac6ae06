#include "abreu/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace abreu {

namespace {

int resolve_default() {
    if (const char* env = std::getenv("ABREU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::atomic<int> g_cap{0}; // 0 = not yet resolved

} // namespace

void set_thread_cap(int n) { g_cap.store(n > 0 ? n : 1); }

int thread_cap() {
    int c = g_cap.load();
    if (c == 0) {
        c = resolve_default();
        g_cap.store(c);
    }
    return c;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_cap(), n);
    if (workers <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            const std::size_t chunk = 16;
            while (true) {
                const std::size_t start = next.fetch_add(chunk);
                if (start >= n) break;
                const std::size_t stop = std::min(n, start + chunk);
                try {
                    for (std::size_t i = start; i < stop; ++i) fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace abreu
