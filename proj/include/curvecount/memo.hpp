#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "curvecount/count_value.hpp"
#include "curvecount/problem.hpp"

namespace curvecount {

/// Canonical memo key: n, d and the descending condition vector with no
/// codim-1 entries and no entries above n.
struct MemoKey {
    int n = 0;
    int d = 0;
    std::vector<int> conds;

    static MemoKey of(const Problem& p) { return {p.n, p.d, p.conds.codims()}; }

    std::string str() const {
        std::string s = std::to_string(n) + " " + std::to_string(d) + " ";
        for (std::size_t i = 0; i < conds.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(conds[i]);
        }
        return s;
    }

    friend bool operator==(const MemoKey&, const MemoKey&) = default;
    friend auto operator<=>(const MemoKey&, const MemoKey&) = default;
};

/// Shared store of computed counts. Concurrent readers are fine; writes
/// are idempotent (a key always maps to the same value), so last-write-wins
/// is safe.
class MemoStore {
  public:
    std::optional<Count> lookup(const MemoKey& key) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void store(const MemoKey& key, const Count& value) {
        internal_check(value >= 0, "memo: negative count");
        std::unique_lock lock(mu_);
        map_.insert_or_assign(key, value);
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

    /// Sorted snapshot, for persistence and inspection.
    std::vector<std::pair<MemoKey, Count>> entries() const {
        std::shared_lock lock(mu_);
        return {map_.begin(), map_.end()};
    }

    void merge_from(const MemoStore& other) {
        for (auto& [k, v] : other.entries()) store(k, v);
    }

  private:
    mutable std::shared_mutex mu_;
    std::map<MemoKey, Count> map_;
};

}  // namespace curvecount
