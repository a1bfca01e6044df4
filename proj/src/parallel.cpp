#include "gravwell/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gravwell {
namespace {

std::atomic<int> g_default_threads{0};

} // namespace

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (char const* env = std::getenv("GRAVWELL_THREADS"))
    {
        int const v = std::atoi(env);
        if (v > 0)
            return v;
    }
    unsigned const hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_default_threads(int threads)
{
    g_default_threads = threads;
}

int default_threads()
{
    return resolve_threads(g_default_threads.load());
}

void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body, int threads)
{
    if (n == 0)
        return;
    int const workers = static_cast<int>(
        std::min<std::size_t>(n, static_cast<std::size_t>(threads > 0 ? threads : default_threads())));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = n;
    auto run = [&] {
        for (;;)
        {
            std::size_t const i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (i < error_index)
                {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t)
        pool.emplace_back(run);
    run();
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace gravwell
