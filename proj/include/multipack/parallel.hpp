#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

namespace multipack {

/// Worker count from MULTIPACK_THREADS, defaulting to 1.
inline unsigned default_threads() {
    const char* env = std::getenv("MULTIPACK_THREADS");
    if (env == nullptr) return 1;
    std::string_view s(env);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) return 1;
    return value;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers using a static
/// block partition. Callers write results into per-index slots, so output
/// does not depend on the schedule. The first exception (lowest block) is
/// rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned threads = default_threads()) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t begin = count * w / workers;
                const std::size_t end = count * (w + 1) / workers;
                try {
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace multipack
