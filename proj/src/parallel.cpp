// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qdrt {

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body)
{
    unsigned workers = resolve_threads(threads);
    if (workers > count)
        workers = static_cast<unsigned>(count == 0 ? 1 : count);

    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);

    for (unsigned t = 0; t < workers; ++t) {
        std::size_t begin = count * t / workers;
        std::size_t end = count * (t + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace qdrt
