#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "inlslab/model.hpp"
#include "inlslab/rational.hpp"

namespace inls::exponents {

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& m) : std::runtime_error(m) {}
};

enum class PairClass {
    SAdmissible,
    HsAdmissible,      // regularity level s > 0
    DualHsAdmissible,  // dual family at level -s
    RelationOnly,      // satisfies the Hs scaling relation with r >= 2 only
    NotAdmissible,
};

std::string to_string(PairClass c);

// Exponent pair (q, r); q may be +infinity. Values are exact rationals when
// the inputs allow it, doubles (1e-12 comparisons) otherwise.
struct PairQR {
    Scalar q;
    Scalar r;
    PairClass cls = PairClass::NotAdmissible;

    PairQR() = default;
    PairQR(Scalar q_, Scalar r_) : q(q_), r(r_) {}

    PairQR dual() const;  // Lebesgue-conjugate pair (q', r')
};

// 2/q = N/2 - N/r with 2 <= r <= 2N/(N-2).
bool is_s_admissible(const PairQR& p, int N);

// 2/q = N/2 - N/r - s with 2N/(N-2s) <= r < 2N/(N-2); the pair
// (inf, 2N/(N-2s)) is excluded.
bool is_hs_admissible(const PairQR& p, const Scalar& s, int N);

// Scaling relation at level -s (s > 0): 2/q = N/2 - N/r + s with
// 2N/(N+2s) <= r < 2N/(N-2) and q >= 1.
bool is_dual_hs_admissible(const PairQR& p, const Scalar& s, int N);

// Relation 2/q = N/2 - N/r - s together with r >= 2 only (the widened family
// used when the upper range bound is given up).
bool satisfies_hs_relation(const PairQR& p, const Scalar& s, int N);

PairClass classify(const PairQR& p, int N, std::optional<double> s = std::nullopt);

// r-interval on which the |x|^{-2}-potential Sobolev norms of order s are
// equivalent to the flat ones: (1, N/s) for a > 0, (N/(N-rho), N/(s+rho))
// for a < 0, (1, inf) for a = 0.
struct Window {
    double lo;
    double hi;  // +inf allowed
    bool contains(double r) const { return lo < r && r < hi; }
};

Window sobolev_equivalence_window(double s, const ModelParams& p);

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct NamedPairClaim {
    std::string name;
    PairQR pair;
    PairClass claim = PairClass::SAdmissible;
    double claim_level = 0.0;            // s for Hs/dual claims
    std::optional<double> window_s;      // require r inside the order-s window
    std::vector<CheckResult> extra;      // side conditions evaluated at build time
};

// Hoelder-split exponent bookkeeping for one lemma and one region.
struct HolderSplit {
    std::string name;
    std::string region;  // "B" or "Bc"
    std::map<std::string, double> exps;
    // (description, lhs, rhs) pairs; each must match to 1e-12.
    std::vector<std::tuple<std::string, double, double>> equations;
    // (description, value, must_be_positive): strict sign conditions.
    std::vector<std::tuple<std::string, double, bool>> signs;
    std::optional<std::pair<double, double>> window_check;  // (s, r)
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass = true;
    void add(const std::string& name, bool pass, const std::string& detail = "");
};

// The named pair families, instantiated at (theta, eps). Both parameters are
// capped per family to the feasible range; the effective values used are
// reported in the claim names. Throws HypothesisViolation when the governing
// parameter conditions fail.
std::vector<NamedPairClaim> build_named_pairs(const ModelParams& p, double theta, double eps);

std::vector<HolderSplit> build_holder_splits(const ModelParams& p, double theta, double eps);

VerifyReport verify_pair_claim(const NamedPairClaim& c, const ModelParams& p);
VerifyReport verify_holder_split(const HolderSplit& s, const ModelParams& p);

// Runs every applicable family at the given (theta, eps).
VerifyReport verify_all(const ModelParams& p, double theta, double eps);

}  // namespace inls::exponents
