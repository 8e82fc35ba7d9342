#include "emptyspace/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace emptyspace {

int thread_count()
{
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (char const* env = std::getenv("EMPTYSPACE_THREADS"))
    {
        try
        {
            int const cap = std::stoi(env);
            if (cap >= 1)
                n = std::min(n, cap);
        }
        catch (std::exception const&)
        {
            // unparsable value: keep the hardware default
        }
    }
    return n;
}

void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body)
{
    std::size_t const workers
        = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace emptyspace
