#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace reqcut::detail {

/// Union-find without path compression so unions can be undone in LIFO order.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        history_.push_back({b, rank_[a] == rank_[b]});
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

    void rollback() {
        auto [child, bumped] = history_.back();
        history_.pop_back();
        std::size_t root = parent_[child];
        parent_[child] = child;
        if (bumped) --rank_[root];
    }

private:
    struct Step {
        std::size_t child;
        bool bumped;
    };
    std::vector<std::size_t> parent_;
    std::vector<int> rank_;
    std::vector<Step> history_;
};

}  // namespace reqcut::detail
