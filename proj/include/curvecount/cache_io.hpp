#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "curvecount/memo.hpp"
#include "curvecount/problem.hpp"

namespace curvecount {

// Text cache format, one record per line:
//
//   curvecount-cache v1
//   <n> <d> <comma-joined descending conds> <value>
//
// Records are canonical keys; duplicates are rejected, and every value is
// re-checked for integrality and nonnegativity on load.

inline constexpr const char* kCacheHeader = "curvecount-cache v1";

inline void save_cache(const MemoStore& memo, std::ostream& os) {
    os << kCacheHeader << '\n';
    for (const auto& [key, value] : memo.entries())
        os << key.str() << ' ' << to_string(value) << '\n';
}

/// Loads records into `memo`; throws CacheError naming the offending line.
inline void load_cache(MemoStore& memo, std::istream& is) {
    std::string line;
    long lineno = 0;
    if (!std::getline(is, line)) throw CacheError(1, "missing header");
    ++lineno;
    if (line == kCacheHeader + std::string("\r")) line = kCacheHeader;  // tolerate CRLF
    if (line != kCacheHeader) throw CacheError(lineno, "bad header: expected '" + std::string(kCacheHeader) + "'");

    std::set<MemoKey> seen;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        int n = 0, d = 0;
        std::string conds_field, value_field, extra;
        if (!(ls >> n >> d >> conds_field >> value_field)) throw CacheError(lineno, "expected '<n> <d> <conds> <value>'");
        if (ls >> extra) throw CacheError(lineno, "trailing fields");
        if (n < 3 || d < 1) throw CacheError(lineno, "invalid n or d");

        std::vector<int> conds;
        int prev = 0;
        std::istringstream cs(conds_field);
        std::string tok;
        while (std::getline(cs, tok, ',')) {
            int a = 0;
            try {
                std::size_t pos = 0;
                a = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw CacheError(lineno, "bad codimension '" + tok + "'");
            }
            if (a < 2 || a > n) throw CacheError(lineno, "non-canonical codimension " + std::to_string(a));
            if (prev != 0 && a > prev) throw CacheError(lineno, "conditions not descending");
            prev = a;
            conds.push_back(a);
        }
        Problem p(n, d, conds);
        if (excess_dimension(p) != 0) throw CacheError(lineno, "key is not a finite count (excess != 0)");

        auto value = parse_count(value_field);
        if (!value) throw CacheError(lineno, "bad integer value '" + value_field + "'");
        if (*value < 0) throw CacheError(lineno, "negative count");

        MemoKey key{n, d, std::move(conds)};
        if (!seen.insert(key).second) throw CacheError(lineno, "duplicate key '" + key.str() + "'");
        memo.store(key, *value);
    }
}

}  // namespace curvecount
