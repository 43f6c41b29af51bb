// parallel.hpp — tiny index-space parallel loop for embarrassingly parallel sweeps.
//
// Thread count comes from the SPS1D_THREADS environment variable when set,
// otherwise the hardware concurrency. Results must be written by index so that
// parallel runs are byte-identical to sequential ones; the first exception
// thrown by any worker is re-thrown on the calling thread.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sps::detail {

inline int thread_count_from_env() {
    if (const char* env = std::getenv("SPS1D_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) {
                return n;
            }
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
inline void parallel_for_index(int total, Fn&& fn) {
    const int threads = std::min(thread_count_from_env(), total < 1 ? 1 : total);
    if (threads <= 1 || total <= 1) {
        for (int i = 0; i < total; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= total) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace sps::detail
