#include "geo/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geo {

namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int workers) { g_workers.store(workers < 1 ? 1 : workers); }
int worker_count() { return g_workers.load(); }

int hardware_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t base = n / kWorkChunks;
    const std::size_t rem = n % kWorkChunks;
    auto chunk_range = [&](std::size_t c) {
        const std::size_t begin = c * base + std::min(c, rem);
        const std::size_t end = begin + base + (c < rem ? 1 : 0);
        return std::pair<std::size_t, std::size_t>{begin, end};
    };

    const int workers = worker_count();
    if (workers <= 1 || n < 256) {
        for (std::size_t c = 0; c < kWorkChunks; ++c) {
            const auto [b, e] = chunk_range(c);
            if (b < e) fn(c, b, e);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
        while (true) {
            const std::size_t c = next.fetch_add(1);
            if (c >= kWorkChunks) return;
            const auto [b, e] = chunk_range(c);
            if (b >= e) continue;
            try {
                fn(c, b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, kWorkChunks);
    pool.reserve(spawn);
    for (int w = 0; w < spawn; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace geo
