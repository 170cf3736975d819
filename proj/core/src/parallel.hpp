#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace kicktop::detail {

// Split [0, n_items) into at most n_blocks contiguous ranges and run
// fn(block, begin, end) on each, one thread per range (the single-block case
// runs inline). The first worker exception, if any, is rethrown after join.
inline void parallel_blocks(int n_items, int n_blocks,
                            const std::function<void(int, int, int)>& fn) {
    if (n_items <= 0)
        return;
    n_blocks = std::clamp(n_blocks, 1, n_items);
    if (n_blocks == 1) {
        fn(0, 0, n_items);
        return;
    }

    std::vector<std::thread> workers;
    workers.reserve(n_blocks);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const int base = n_items / n_blocks;
    const int extra = n_items % n_blocks;
    int begin = 0;
    for (int b = 0; b < n_blocks; ++b) {
        const int end = begin + base + (b < extra ? 1 : 0);
        workers.emplace_back([&fn, &first_error, &error_mutex, b, begin, end] {
            try {
                fn(b, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (std::thread& w : workers)
        w.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace kicktop::detail
