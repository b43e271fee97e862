#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "curvecount/errors.hpp"

namespace curvecount {

/// Multiset of codimensions a_i >= 1 of the incidence conditions, kept
/// descending-sorted. The "length" is the number of entries > 1;
/// codimension-1 entries (hyperplanes) are legal and factor out of counts.
class ConditionVector {
  public:
    ConditionVector() = default;

    explicit ConditionVector(std::vector<int> codims) : codims_(std::move(codims)) {
        for (int a : codims_)
            if (a < 1) throw InvalidInput("condition codimension must be >= 1, got " + std::to_string(a));
        std::sort(codims_.begin(), codims_.end(), std::greater<int>());
    }

    const std::vector<int>& codims() const { return codims_; }
    std::size_t size() const { return codims_.size(); }
    bool empty() const { return codims_.empty(); }
    int at(std::size_t i) const { return codims_.at(i); }

    /// Number of entries > 1.
    int length() const {
        int l = 0;
        for (int a : codims_)
            if (a > 1) ++l;
        return l;
    }

    /// Sum of (a_i - 1); the number of constraints the conditions impose.
    int weight() const {
        int w = 0;
        for (int a : codims_) w += a - 1;
        return w;
    }

    int max_codim() const { return codims_.empty() ? 0 : codims_.front(); }

    ConditionVector with_entry(int a) const {
        std::vector<int> v = codims_;
        v.push_back(a);
        return ConditionVector(std::move(v));
    }

    /// Entries i and j replaced by a single entry a_i + a_j.
    ConditionVector merged(std::size_t i, std::size_t j) const {
        internal_check(i != j && i < size() && j < size(), "merged: bad indices");
        std::vector<int> v;
        v.reserve(size() - 1);
        for (std::size_t t = 0; t < size(); ++t)
            if (t != i && t != j) v.push_back(codims_[t]);
        v.push_back(codims_[i] + codims_[j]);
        return ConditionVector(std::move(v));
    }

    ConditionVector incremented(std::size_t i) const {
        std::vector<int> v = codims_;
        v.at(i) += 1;
        return ConditionVector(std::move(v));
    }

    ConditionVector erased(std::size_t i) const {
        std::vector<int> v = codims_;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        return ConditionVector(std::move(v));
    }

    /// First index holding value a, skipping indices listed in `taken`.
    std::size_t index_of(int a, std::initializer_list<std::size_t> taken = {}) const {
        for (std::size_t i = 0; i < size(); ++i) {
            if (codims_[i] != a) continue;
            bool used = false;
            for (std::size_t t : taken) used = used || (t == i);
            if (!used) return i;
        }
        throw ConsistencyError("index_of: value not present");
    }

    std::string str(char sep = ',') const {
        std::ostringstream os;
        for (std::size_t i = 0; i < codims_.size(); ++i) {
            if (i) os << sep;
            os << codims_[i];
        }
        return os.str();
    }

    friend bool operator==(const ConditionVector& a, const ConditionVector& b) = default;
    friend auto operator<=>(const ConditionVector& a, const ConditionVector& b) = default;

  private:
    std::vector<int> codims_;
};

}  // namespace curvecount
