#ifndef MBAR_PARALLEL_HPP
#define MBAR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mbar
{

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown by any task is rethrown on the calling thread.
template <typename Body> void parallel_for(std::size_t count, int jobs, Body body)
{
    const std::size_t width = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
    if (width <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < width; ++t)
        threads.emplace_back(worker);
    threads.clear();
    if (error)
        std::rethrow_exception(error);
}

} // namespace mbar

#endif // MBAR_PARALLEL_HPP
