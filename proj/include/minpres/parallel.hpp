#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "minpres/grade.hpp"

namespace minpres {

// Data-parallel loop over [0, n). Workers own disjoint index blocks, so the
// result is independent of the thread count. The first exception wins and is
// rethrown on the caller's thread.
template <class F>
void parallel_for(index_t n, unsigned threads, F&& body) {
	if (threads <= 1 || n < 2) {
		for (index_t i = 0; i < n; ++i) body(i);
		return;
	}
	unsigned t = threads;
	if (static_cast<index_t>(t) > n) t = static_cast<unsigned>(n);
	std::atomic<bool> failed{false};
	std::exception_ptr first_error;
	std::vector<std::exception_ptr> errors(t);
	std::vector<std::thread> pool;
	pool.reserve(t);
	index_t chunk = (n + t - 1) / t;
	for (unsigned w = 0; w < t; ++w) {
		index_t lo = static_cast<index_t>(w) * chunk;
		index_t hi = lo + chunk < n ? lo + chunk : n;
		pool.emplace_back([&, lo, hi, w] {
			try {
				for (index_t i = lo; i < hi && !failed.load(std::memory_order_relaxed); ++i) body(i);
			} catch (...) {
				errors[w] = std::current_exception();
				failed.store(true, std::memory_order_relaxed);
			}
		});
	}
	for (auto& th : pool) th.join();
	for (auto& e : errors)
		if (e) { first_error = e; break; }
	if (first_error) std::rethrow_exception(first_error);
}

} // namespace minpres
