#pragma once

#include <string>
#include <vector>

#include "lscrystal/analysis.hpp"

namespace lscrystal {

/// Outcome of one named verification suite: human-readable progress lines
/// plus the list of failures (empty means the suite passed).
struct SuiteResult {
    std::string name;
    std::vector<std::string> lines;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

struct VerifyOptions {
    long depth = 4;
    long n = 2;           // C(m, n) pattern width
    int workers = 1;
    long m_window = 12;   // orbit formula window
    long p_window = 25;   // sign dichotomy window
    long chain_window = 3;        // sigma-chain oracle: indices in [-w, w]
    long chain_denominator_max = 16;
};

/// Orbit-level checks: closed formula vs word oracle, sign dichotomy,
/// canonical form inequalities, valley shape, coprimality propagation,
/// cover labels, distances and sigma-chains against the brute-force oracle.
SuiteResult verify_orbit(const CartanData& cartan, const Weight& lambda, const VerifyOptions& opt);

/// Crystal axioms on a BFS ball around pi_lambda.
SuiteResult verify_crystal(const CartanData& cartan, const Weight& lambda,
                           const VerifyOptions& opt);

/// q-sequence identities, pi_n seeds, C(m, n) closure, component
/// disjointness and the length lower bound.
SuiteResult verify_cmn(const CartanData& cartan, const Weight& lambda, const VerifyOptions& opt);

/// Gap-class stability, gap location and half-point integrality on the
/// non-coprime d = 2 shapes.
SuiteResult verify_br(const CartanData& cartan, const Weight& lambda, const VerifyOptions& opt);

/// Connected case: every explored node returns to pi_lambda via
/// e_max / f_max strips.
SuiteResult verify_connect(const CartanData& cartan, const Weight& lambda,
                           const VerifyOptions& opt);

}  // namespace lscrystal
