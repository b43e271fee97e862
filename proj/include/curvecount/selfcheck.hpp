#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "curvecount/degrees.hpp"
#include "curvecount/enumerate.hpp"
#include "curvecount/genera.hpp"
#include "curvecount/gw_oracle.hpp"
#include "curvecount/problem.hpp"
#include "curvecount/schubert.hpp"

namespace curvecount {

// Identity suites behind `curvecount selfcheck`. Each suite walks the
// canonical problems up to d_max and checks exact identities; the first
// failing problem key is reported verbatim.

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    bool ok = true;
    std::string failure;  // offending problem key, empty when ok
    double seconds = 0;
};

/// Envelope of the selfcheck command (bounded by the oracle sweep).
inline bool selfcheck_envelope_ok(int n, int d_max, std::string* why = nullptr) {
    if (n < 3) {
        if (why) *why = "n >= 3 required";
        return false;
    }
    if (d_max < 1) {
        if (why) *why = "d-max >= 1 required";
        return false;
    }
    if ((n == 3 && d_max <= 4) || (n == 4 && d_max <= 2)) return true;
    if (why) *why = "supported envelope: n = 3 with d-max <= 4, or n = 4 with d-max <= 2";
    return false;
}

namespace detail {

class SuiteRunner {
  public:
    explicit SuiteRunner(std::string name) : start_(clock_t::now()) { result_.name = std::move(name); }

    /// Records one named check; returns false once the suite has failed.
    bool check(bool ok, const std::string& key) {
        ++result_.checks;
        if (!ok && result_.ok) {
            result_.ok = false;
            result_.failure = key;
        }
        return result_.ok;
    }

    SuiteResult finish() {
        result_.seconds = std::chrono::duration<double>(clock_t::now() - start_).count();
        return result_;
    }

  private:
    using clock_t = std::chrono::steady_clock;
    SuiteResult result_;
    clock_t::time_point start_;
};

}  // namespace detail

/// Pieri chain versus the dense-table oracle on every canonical degree-1
/// vector, plus the Poincare pairing structure of the table itself.
inline SuiteResult suite_schubert_floor(int n) {
    detail::SuiteRunner run("schubert-floor");
    LineTable table(n);
    for (const auto& a : table.basis())
        for (const auto& b : table.basis()) {
            bool dual = (b == a.complement(n));
            bool ok = table.pairing(a, b) == Count(dual ? 1 : 0);
            if (!run.check(ok, "pairing sigma(" + std::to_string(a.l1) + "," + std::to_string(a.l2) + ")"))
                return run.finish();
        }
    for (const auto& v : canonical_vectors(n, 2 * (n - 1))) {
        Count pieri = line_count(n, v);
        Count brute = table.line_count(v);
        std::string key = "1 " + std::to_string(n) + " " + v.str();
        if (!run.check(pieri == brute && pieri >= 0, key)) return run.finish();
        // hyperplane entries are neutral at degree 1
        if (!run.check(line_count(n, v.with_entry(1)) == pieri, key + ",1")) return run.finish();
    }
    return run.finish();
}

/// Exact identities on every canonical one-dimensional family:
/// pair identity m_i + m_j = s_j.R_i - 2 N(merge), monodromy equality for
/// equal codimensions, the two-companion route against the three-section
/// route, symmetry of s_i.R_j, and the square identities.
inline SuiteResult suite_family_identities(CountEngine& engine, int n, int d_max) {
    detail::SuiteRunner run("family-identities");
    for (int d = 1; d <= d_max; ++d) {
        for (const auto& v : canonical_vectors(n, moduli_dimension(n, d) - 1)) {
            Problem p(n, d, v);
            const std::string key = p.key();
            const std::size_t k = v.size();
            std::vector<Count> m(k);
            for (std::size_t i = 0; i < k; ++i) m[i] = engine.m_section(p, i);

            if (k >= 2) {
                for (std::size_t i = 0; i < std::min<std::size_t>(k, 3); ++i)
                    for (std::size_t j = i + 1; j < std::min<std::size_t>(k, 4); ++j) {
                        Count lhs = m[i] + m[j];
                        Count rhs = engine.section_dot_R(p, j, i) -
                                    2 * engine.degree_count(Problem(n, d, v.merged(i, j)));
                        if (!run.check(lhs == rhs, key)) return run.finish();
                        if (!run.check(engine.section_dot_R(p, i, j) == engine.section_dot_R(p, j, i), key))
                            return run.finish();
                        if (v.at(i) == v.at(j)) {
                            if (!run.check(m[i] == m[j], key)) return run.finish();
                            if (!run.check(engine.m_section_symmetric(p, i, j) == m[i], key))
                                return run.finish();
                        }
                    }
            }
            if (k >= 3) {
                // companion independence, spot-checked on the first section
                Count ref = m[0];
                for (std::size_t j = 1; j < k; ++j)
                    for (std::size_t l = j + 1; l < k; ++l)
                        if (!run.check(engine.m_section_with(p, 0, j, l) == ref, key))
                            return run.finish();
            }
            if (!run.check(engine.square_identity_residual(p) == 0, key)) return run.finish();
            if (k >= 3 && v.at(0) == n && v.at(1) + v.at(2) > n) {
                if (!run.check(engine.point_square_identity_residual(p) == 0, key))
                    return run.finish();
            }
        }
    }
    return run.finish();
}

/// Input-normalization properties of degree_count: permutation invariance,
/// the hyperplane factor-d rule, and nonnegativity.
inline SuiteResult suite_count_properties(CountEngine& engine, int n, int d_max) {
    detail::SuiteRunner run("count-properties");
    for (int d = 1; d <= d_max; ++d) {
        for (const auto& p : excess0_problems(n, d)) {
            Count value = engine.degree_count(p);
            if (!run.check(value >= 0, p.key())) return run.finish();
            std::vector<int> shuffled(p.conds.codims().rbegin(), p.conds.codims().rend());
            if (!run.check(engine.degree_count(Problem(n, d, shuffled)) == value, p.key()))
                return run.finish();
            Count with_h = engine.degree_count(Problem(n, d, p.conds.with_entry(1)));
            if (!run.check(with_h == Count(d) * value, p.key())) return run.finish();
        }
    }
    return run.finish();
}

/// Agreement of different shift-chain pivot policies, each on a fresh
/// engine so no shared memo can mask a divergence.
inline SuiteResult suite_pivot_paths(int n, int d_max, std::size_t limit = 0) {
    detail::SuiteRunner run("pivot-paths");
    std::vector<Problem> sample;
    for (int d = 2; d <= d_max; ++d)
        for (const auto& p : excess0_problems(n, d)) sample.push_back(p);
    if (limit && sample.size() > limit) sample.resize(limit);
    const PivotPolicy policies[] = {PivotPolicy::LargestNext, PivotPolicy::LargestSmallest,
                                    PivotPolicy::SecondLargest, PivotPolicy::SmallestLargest};
    CountEngine engines[] = {CountEngine(policies[0]), CountEngine(policies[1]),
                             CountEngine(policies[2]), CountEngine(policies[3])};
    for (const auto& p : sample) {
        Count ref = engines[0].degree_count(p);
        for (int i = 1; i < 4; ++i)
            if (!run.check(engines[i].degree_count(p) == ref, p.key())) return run.finish();
    }
    return run.finish();
}

/// Main recursion against the associativity oracle on every canonical
/// finite count in the envelope; also pins the d = 1 floor.
inline SuiteResult suite_oracle_sweep(CountEngine& engine, int n, int d_max) {
    detail::SuiteRunner run("oracle-sweep");
    GwOracle oracle(n);
    for (int d = 1; d <= d_max; ++d) {
        for (const auto& p : excess0_problems(n, d)) {
            Count lhs = engine.degree_count(p);
            Count rhs = oracle.gw_invariant(d, p.conds);
            if (!run.check(lhs == rhs, p.key())) return run.finish();
            if (d == 1 && !run.check(lhs == line_count(n, p.conds), p.key())) return run.finish();
        }
    }
    return run.finish();
}

/// Genus data: thickening independence, independence of the evaluation
/// section, and even parity of deg K_B.
inline SuiteResult suite_genus(CountEngine& engine, int n, int d_max) {
    detail::SuiteRunner run("genus");
    for (int d = 1; d <= d_max; ++d) {
        for (const auto& p : excess1_problems(n, d)) {
            GenusReport report = genus_report(engine, p);
            if (!run.check(report.deg_K % 2 == 0, p.key())) return run.finish();
            for (const auto& t : enumerate_thickenings(engine, p))
                if (!run.check(canonical_degree(engine, p, t) == report.deg_K, p.key()))
                    return run.finish();
            ThickeningSpec greedy = choose_thickening(engine, p);
            for (std::size_t e = 1; e < std::min<std::size_t>(p.conds.size(), 3); ++e)
                if (!run.check(canonical_degree(engine, p, greedy, e) == report.deg_K, p.key()))
                    return run.finish();
        }
    }
    return run.finish();
}

/// The full selfcheck battery behind the CLI.
inline std::vector<SuiteResult> run_selfcheck(int n, int d_max) {
    std::string why;
    moduli_dimension(n, 1);  // n >= 3 gate (InvalidInput otherwise)
    if (!selfcheck_envelope_ok(n, d_max, &why)) throw InvalidInput(why);
    CountEngine engine;
    std::vector<SuiteResult> out;
    out.push_back(suite_schubert_floor(n));
    out.push_back(suite_family_identities(engine, n, d_max));
    out.push_back(suite_count_properties(engine, n, d_max));
    out.push_back(suite_pivot_paths(n, d_max));
    out.push_back(suite_oracle_sweep(engine, n, d_max));
    out.push_back(suite_genus(engine, n, std::min(d_max, 2)));
    return out;
}

}  // namespace curvecount
