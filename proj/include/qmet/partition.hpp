#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qmet/errors.hpp"

namespace qmet {

// Partition of {0, ..., n-1} into nonempty disjoint blocks.  Canonical
// form: blocks sorted by their minimum element, each block sorted.
class Partition {
  public:
    Partition() = default;

    static Partition from_blocks(std::size_t n, std::vector<std::vector<std::size_t>> blocks) {
        std::vector<bool> seen(n, false);
        for (auto& block : blocks) {
            if (block.empty()) throw input_error("partition block is empty");
            std::sort(block.begin(), block.end());
            for (std::size_t i : block) {
                if (i >= n) throw input_error("partition element out of range");
                if (seen[i]) throw input_error("partition blocks overlap");
                seen[i] = true;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i]) throw input_error("partition does not cover all points");
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        Partition p;
        p.n_ = n;
        p.blocks_ = std::move(blocks);
        p.rebuild_index();
        return p;
    }

    static Partition singletons(std::size_t n) {
        std::vector<std::vector<std::size_t>> blocks;
        blocks.reserve(n);
        for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
        return from_blocks(n, std::move(blocks));
    }

    static Partition trivial(std::size_t n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return from_blocks(n, {std::move(all)});
    }

    // Partition induced by an equivalence decision function.
    template <typename SameBlock>
    static Partition from_relation(std::size_t n, SameBlock&& same) {
        std::vector<std::vector<std::size_t>> blocks;
        std::vector<bool> assigned(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            std::vector<std::size_t> block{i};
            assigned[i] = true;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!assigned[j] && same(i, j)) {
                    block.push_back(j);
                    assigned[j] = true;
                }
            }
            blocks.push_back(std::move(block));
        }
        return from_blocks(n, std::move(blocks));
    }

    std::size_t size() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::size_t block_of(std::size_t i) const {
        if (i >= n_) throw input_error("partition index out of range");
        return block_index_[i];
    }
    bool same_block(std::size_t i, std::size_t j) const { return block_of(i) == block_of(j); }

    bool operator==(const Partition& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> block_index_;

    void rebuild_index() {
        block_index_.assign(n_, 0);
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (std::size_t i : blocks_[b]) block_index_[i] = b;
    }
};

// a refines b: every block of a lies inside a block of b.
inline bool refines(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw input_error("partition sizes differ");
    for (const auto& block : a.blocks())
        for (std::size_t i : block)
            if (!b.same_block(block.front(), i)) return false;
    return true;
}

// Coarsest partition refining both: blocks are nonempty intersections.
inline Partition common_refinement(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw input_error("partition sizes differ");
    return Partition::from_relation(
        a.size(), [&](std::size_t i, std::size_t j) { return a.same_block(i, j) && b.same_block(i, j); });
}

inline Partition common_refinement(const std::vector<Partition>& parts) {
    if (parts.empty()) throw input_error("common refinement of empty family");
    Partition acc = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) acc = common_refinement(acc, parts[k]);
    return acc;
}

}  // namespace qmet
