#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <vector>

#include "minpres/grade.hpp"

namespace minpres {

// A column is a set of row indices, the non-zero entries over GF(2).
// All realizations are observationally equivalent: same index set, same
// pivot / emptiness / entries. Algorithms are templated on the realization.
template <class C>
concept column_store = std::movable<C> && std::copyable<C> && requires(C c, const C& cc, index_t i, const std::vector<index_t>& v) {
	C{index_t{0}};
	{ cc.empty() } -> std::convertible_to<bool>;
	{ cc.pivot() } -> std::convertible_to<index_t>; // largest index, no_index if empty
	c.pop_pivot();
	c.add(cc); // symmetric difference, in place
	{ cc.contains(i) } -> std::convertible_to<bool>;
	{ cc.entries() } -> std::convertible_to<std::vector<index_t>>; // ascending
	c.assign(v); // from ascending list
	c.clear();
};

// Sorted dynamic array. The default workhorse.
class vector_column {
	std::vector<index_t> idx_; // ascending

public:
	vector_column() = default;
	explicit vector_column(index_t /*row_capacity*/) {}

	bool empty() const { return idx_.empty(); }

	index_t pivot() const { return idx_.empty() ? no_index : idx_.back(); }

	void pop_pivot() {
		if (!idx_.empty()) idx_.pop_back();
	}

	void add(const vector_column& o) {
		if (&o == this) {
			idx_.clear();
			return;
		}
		std::vector<index_t> out;
		out.reserve(idx_.size() + o.idx_.size());
		std::set_symmetric_difference(idx_.begin(), idx_.end(), o.idx_.begin(), o.idx_.end(),
		                              std::back_inserter(out));
		idx_ = std::move(out);
	}

	bool contains(index_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

	std::vector<index_t> entries() const { return idx_; }

	void assign(const std::vector<index_t>& sorted) { idx_ = sorted; }

	void clear() { idx_.clear(); }
};

// Lazy binary max-heap. Additions append the source's raw multiset; an index
// present an even number of times counts as absent. Pairs of equal entries
// cancel when they surface at the top.
class heap_column {
	mutable std::vector<index_t> heap_; // max-heap, may contain duplicates

	void prune() const {
		std::sort(heap_.begin(), heap_.end(), std::greater<index_t>());
		std::vector<index_t> out;
		out.reserve(heap_.size());
		for (std::size_t i = 0; i < heap_.size();) {
			std::size_t j = i;
			while (j < heap_.size() && heap_[j] == heap_[i]) ++j;
			if ((j - i) % 2 != 0) out.push_back(heap_[i]);
			i = j;
		}
		// A strictly descending array already satisfies the heap property.
		heap_ = std::move(out);
	}

	index_t pop_max() const {
		std::pop_heap(heap_.begin(), heap_.end());
		index_t v = heap_.back();
		heap_.pop_back();
		return v;
	}

public:
	heap_column() = default;
	explicit heap_column(index_t /*row_capacity*/) {}

	bool empty() const { return pivot() == no_index; }

	index_t pivot() const {
		while (!heap_.empty()) {
			index_t t = pop_max();
			if (!heap_.empty() && heap_.front() == t) {
				pop_max(); // cancelled pair
			} else {
				heap_.push_back(t);
				std::push_heap(heap_.begin(), heap_.end());
				return t;
			}
		}
		return no_index;
	}

	void pop_pivot() {
		while (!heap_.empty()) {
			index_t t = pop_max();
			if (!heap_.empty() && heap_.front() == t) {
				pop_max();
			} else {
				return; // t removed for good
			}
		}
	}

	void add(const heap_column& o) {
		if (&o == this) {
			heap_.clear();
			return;
		}
		heap_.insert(heap_.end(), o.heap_.begin(), o.heap_.end());
		std::make_heap(heap_.begin(), heap_.end());
		if (heap_.size() > 1024) prune();
	}

	bool contains(index_t i) const {
		prune();
		// descending after prune
		return std::binary_search(heap_.begin(), heap_.end(), i, std::greater<index_t>());
	}

	std::vector<index_t> entries() const {
		prune();
		std::vector<index_t> out(heap_.rbegin(), heap_.rend());
		return out;
	}

	void assign(const std::vector<index_t>& sorted) { heap_.assign(sorted.rbegin(), sorted.rend()); }

	void clear() { heap_.clear(); }
};

// Dense bit set with a cached upper bound on the maximal set bit. The bound
// is only tightened on pivot queries, so additions stay O(words).
class bitset_column {
	std::vector<std::uint64_t> w_;
	mutable index_t bound_ = 0; // all set bits are < bound_

	void ensure(index_t bits) {
		std::size_t need = static_cast<std::size_t>(bits / 64 + 1);
		if (w_.size() < need) w_.resize(need, 0);
	}

public:
	bitset_column() = default;
	explicit bitset_column(index_t row_capacity) : w_(static_cast<std::size_t>(row_capacity / 64 + 1), 0) {}

	bool empty() const { return pivot() == no_index; }

	index_t pivot() const {
		if (bound_ == 0) return no_index;
		std::size_t word = static_cast<std::size_t>((bound_ - 1) / 64);
		if (word >= w_.size()) word = w_.size() - 1;
		for (std::size_t k = word + 1; k-- > 0;) {
			std::uint64_t m = w_[k];
			if (k == word) {
				unsigned top = static_cast<unsigned>((bound_ - 1) % 64);
				if (top < 63) m &= (std::uint64_t(2) << top) - 1;
			}
			if (m != 0) {
				index_t p = static_cast<index_t>(k) * 64 + (63 - static_cast<index_t>(__builtin_clzll(m)));
				bound_ = p + 1;
				return p;
			}
		}
		bound_ = 0;
		return no_index;
	}

	void pop_pivot() {
		index_t p = pivot();
		if (p == no_index) return;
		w_[static_cast<std::size_t>(p / 64)] ^= std::uint64_t(1) << (p % 64);
		bound_ = p;
	}

	void add(const bitset_column& o) {
		if (&o == this) {
			clear();
			return;
		}
		if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
		for (std::size_t k = 0; k < o.w_.size(); ++k) w_[k] ^= o.w_[k];
		if (o.bound_ > bound_) bound_ = o.bound_;
	}

	bool contains(index_t i) const {
		std::size_t word = static_cast<std::size_t>(i / 64);
		return word < w_.size() && ((w_[word] >> (i % 64)) & 1u) != 0;
	}

	std::vector<index_t> entries() const {
		std::vector<index_t> out;
		for (std::size_t k = 0; k < w_.size(); ++k) {
			std::uint64_t m = w_[k];
			while (m != 0) {
				unsigned b = static_cast<unsigned>(__builtin_ctzll(m));
				out.push_back(static_cast<index_t>(k) * 64 + b);
				m &= m - 1;
			}
		}
		return out;
	}

	void assign(const std::vector<index_t>& sorted) {
		std::fill(w_.begin(), w_.end(), 0);
		bound_ = 0;
		for (index_t i : sorted) {
			ensure(i);
			w_[static_cast<std::size_t>(i / 64)] |= std::uint64_t(1) << (i % 64);
		}
		if (!sorted.empty()) bound_ = sorted.back() + 1;
	}

	void clear() {
		std::fill(w_.begin(), w_.end(), 0);
		bound_ = 0;
	}
};

static_assert(column_store<vector_column>);
static_assert(column_store<heap_column>);
static_assert(column_store<bitset_column>);

} // namespace minpres
