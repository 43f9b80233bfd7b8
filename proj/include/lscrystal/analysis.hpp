#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "lscrystal/lspath.hpp"

namespace lscrystal {

enum class Connectedness { connected, infinitely_many_components, not_star };

std::string to_string(Connectedness c);

/// The crystal graph of B(lambda) is connected exactly when the orbit holds
/// an element with a coordinate of absolute value 1, i.e. when some |p_m| = 1.
/// Star orbits without such an element split into infinitely many components.
Connectedness decide_connectedness(const CartanData& cartan, const Weight& lambda);

/// Junction-ratio family q_m / p_m attached to the canonical representative
/// of a coprime star orbit with 1 < l < k < (a-1)l, or the mirrored family
/// when the canonical form is 1 < k < l < (b-1)k.  These ratios prescribe
/// the rigid cut-point patterns C(m, n) that pin down crystal components.
class QSequence {
  public:
    /// Normalizes lambda to its canonical orbit representative and derives
    /// the seed c with c/k < 1/l < (c+1)/k (or the mirror).  Throws
    /// FormViolation when the orbit is not a coprime star orbit of the
    /// disconnected kind (both coordinates of absolute value >= 2).
    QSequence(const CartanData& cartan, const Weight& lambda);

    const CartanData& cartan() const { return cartan_; }
    const Weight& canonical() const { return canonical_; }
    /// Orbit index translating shape indices to canonical ones:
    /// canonical = x_shift(lambda), so x_j(lambda) = x_{j - shift}(canonical).
    long canonical_shift() const { return shift_; }
    bool mirrored() const { return mirrored_; }
    const Integer& c() const { return c_; }
    const PSequence& pseq() const { return *pseq_; }

    /// Raw recursion values: q_m for the direct orientation, the mirrored
    /// sequence for form (ii) canonicals.
    Integer q(long m) const { return q_->at(m); }

    /// Numerator R_j of the cut ratio at the junction directly below x_j:
    /// q_j for the direct orientation, p_j - q~_{1-j} for the mirror.
    Integer ratio_numerator(long j) const;

    /// R_j / p_j; strictly decreasing in j, strictly between 0 and 1.
    Rational junction_ratio(long j) const;

  private:
    CartanData cartan_;
    Weight canonical_;
    long shift_;
    bool mirrored_;
    Integer c_;
    std::shared_ptr<PSequence> pseq_;
    std::shared_ptr<TwoSidedRecurrence> q_;
};

/// The seed path pi^(n) = (x_n, ..., x_0, ..., x_{-n};
/// 0, q_n/p_n, ..., q_{-n+1}/p_{-n+1}, 1) of shape canonical(lambda).
LSPath pi_n(const QSequence& qs, long n);

/// Condition C(m, n): the path has length >= 2n+1 and some position v with
/// n < v < u-n+1 whose direction is x_m (canonical indexing) and whose 2n
/// surrounding cut points equal the prescribed q/p ratios.
bool cmn_check(const LSPath& path, long m, long n);

/// All m for which C(m, n) holds.
std::set<long> cmn_classes(const LSPath& path, long n);

/// Stratum index of a path of shape 2*lambda' (lambda' coprime): 0 when all
/// direction gaps are 1, otherwise floor(g/2) for the unique gap g >= 2.
long z_gap_class(const LSPath& path);

struct ReachStep {
    bool raising;  // e_i^max if true, f_i^max otherwise
    int i;
    Integer count;  // number of single-operator applications
};

/// Transforms a path in a connected-type crystal into the straight path
/// pi_lambda by stripping the leading direction with e_i^max while it is
/// positive and the trailing direction with f_i^max while it is negative.
/// Returns the applied steps; throws NotApplicableForm when the shape's
/// crystal is not of the connected kind.
std::vector<ReachStep> reach_pi_lambda(const LSPath& path);

/// Keep the first two of d split factors and rejoin them: a surjection from
/// B(d*lambda') onto B(2*lambda') for d >= 2.
LSPath phi_projection(const LSPath& path, long d);

// ---------------------------------------------------------------------------
// Crystal-graph exploration
// ---------------------------------------------------------------------------

struct ExploreLimits {
    long max_depth = 6;
    std::size_t max_nodes = 200000;
    int workers = 1;
};

struct Violation {
    std::string checker;
    std::string message;
    std::size_t node;  // index into ComponentReport::visited
};

/// Named pure predicate on visited nodes; returns violation messages.
struct NodeChecker {
    std::string name;
    std::function<std::vector<std::string>(const LSPath&)> check;
};

/// Named pure predicate on f-oriented edges (from --f_i--> to).
struct EdgeChecker {
    std::string name;
    std::function<std::vector<std::string>(const LSPath& from, int i, const LSPath& to)> check;
};

struct ComponentReport {
    LSPath seed;
    std::vector<LSPath> visited;  // discovery order; visited[0] == seed
    struct Edge {
        std::size_t from;
        std::size_t to;
        int i;
        friend bool operator==(const Edge&, const Edge&) = default;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };
    std::vector<Edge> edges;  // f-oriented, deduplicated, discovery order
    bool frontier_exhausted = false;
    long depth_reached = 0;
    std::vector<Violation> violations;
    std::map<std::string, std::size_t> stats;

    std::size_t visited_count() const { return visited.size(); }
    std::size_t edge_count() const { return edges.size(); }
    bool clean() const { return violations.empty(); }
};

/// Breadth-first closure of {e1, e2, f1, f2} from the seed, deduplicating by
/// structural path equality.  Expansion runs in depth-synchronized rounds;
/// results are byte-identical for any worker count.  Hitting a limit is a
/// normal outcome reported via frontier_exhausted = false.
ComponentReport explore(const LSPath& seed, const ExploreLimits& limits,
                        const std::vector<NodeChecker>& node_checkers = {},
                        const std::vector<EdgeChecker>& edge_checkers = {});

// Stock checkers used by the verification suites.
NodeChecker crystal_axioms_checker();
NodeChecker dirs_dichotomy_checker();
NodeChecker min_length_checker(std::size_t min_u);
NodeChecker half_point_integral_checker();
NodeChecker cmn_membership_checker(long n);
NodeChecker br_gap_location_checker();
EdgeChecker cmn_closure_checker(long n);
EdgeChecker br_closure_checker();

}  // namespace lscrystal
