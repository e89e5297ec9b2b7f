#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cmpoly/errors.hpp"

namespace cmpoly {

template <class R>
struct Outcome {
    std::optional<R> value;
    std::string rejected;  // reason, when value is empty
};

/// Runs f(0), ..., f(n-1) on up to `jobs` threads.  Results are returned in
/// index order; PrimeRejected is captured per item, anything else is
/// rethrown after all workers stop.
template <class R, class Fn>
std::vector<Outcome<R>> parallel_map(std::size_t n, Fn&& f, unsigned jobs) {
    std::vector<Outcome<R>> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i].value.emplace(f(i));
            } catch (const PrimeRejected& e) {
                out[i].rejected = e.what();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned t = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
    if (t <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace cmpoly
