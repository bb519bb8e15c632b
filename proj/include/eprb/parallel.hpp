#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace eprb
{

inline unsigned resolve_threads(unsigned requested) noexcept
{
    if (requested != 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/*!
 * Split [0, n) into contiguous chunks, one per worker, and call
 * body(begin, end, worker) on each. Chunk boundaries only depend on n and
 * the worker count.
 */
template<class Body>
void parallel_chunks(std::uint64_t n, unsigned threads, Body&& body)
{
    unsigned const workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n, 1)));
    if (workers <= 1)
    {
        body(std::uint64_t{0}, n, 0u);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
        {
            std::uint64_t const begin = n * w / workers;
            std::uint64_t const end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] {
                try
                {
                    body(begin, end, w);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto const& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
}

/*!
 * Reduce over [0, n) with one accumulator per worker, merged in worker
 * order. identity must be an empty accumulator; Acc provides merge().
 */
template<class Acc, class Body>
Acc parallel_reduce(std::uint64_t n, unsigned threads, Acc identity, Body&& body)
{
    unsigned const workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n, 1)));
    std::vector<Acc> partial(workers, identity);
    parallel_chunks(n, workers, [&](std::uint64_t begin, std::uint64_t end,
                                    unsigned w) {
        for (std::uint64_t i = begin; i < end; ++i)
            body(i, partial[w]);
    });
    Acc total = std::move(identity);
    for (auto const& acc : partial)
        total.merge(acc);
    return total;
}

}  // namespace eprb
