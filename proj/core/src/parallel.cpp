#include "decosim/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace decosim::par {

namespace {

int detect_max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("DECOSIM_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) return std::min(hw, cap);
        } catch (const std::exception&) {
            // unusable value: fall through to the hardware default
        }
    }
    return hw;
}

thread_local bool t_inside_parallel = false;

} // namespace

int max_threads() {
    static const int cached = detect_max_threads();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int threads = t_inside_parallel ? 1 : std::min<std::size_t>(max_threads(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int k = 0; k < threads; ++k) {
        const std::size_t begin = n * static_cast<std::size_t>(k) / static_cast<std::size_t>(threads);
        const std::size_t end = n * static_cast<std::size_t>(k + 1) / static_cast<std::size_t>(threads);
        pool.emplace_back([&, begin, end] {
            t_inside_parallel = true;
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
            t_inside_parallel = false;
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace decosim::par
