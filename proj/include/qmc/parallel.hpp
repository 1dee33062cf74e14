#ifndef QMC_PARALLEL_HPP
#define QMC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qmc {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Results must be
/// written to slot i by the caller so the outcome does not depend on scheduling.
/// The first exception (lowest i) is rethrown.
inline void parallel_for(std::size_t n, unsigned workers, std::function<void(std::size_t)> const& fn)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::exception_ptr> errors(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < n;)
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
            });
        for (auto& t : pool)
            t.join();
    }
    for (auto const& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace qmc

#endif // QMC_PARALLEL_HPP
