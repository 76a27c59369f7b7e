#ifndef ZONOREACH_PARALLEL_HPP_
#define ZONOREACH_PARALLEL_HPP_

#include <functional>
#include <thread>
#include <vector>

namespace zonoreach
{

/// Runs fn(0..n-1) across hardware threads. Each index must write only its
/// own slot of any shared output, so results are independent of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn)
{
    if (n <= 0)
        return;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    if (workers <= 1)
    {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers))
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace zonoreach

#endif
