#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "geodiam/geometry.hpp"

namespace geodiam {

inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Levels P_0..P_delta; edges only between consecutive levels.
struct PartiteInstance {
  std::vector<std::vector<Point>> levels;

  int delta() const { return static_cast<int>(levels.size()) - 1; }
};

struct ScalarMapPair {
  std::vector<double> phi;  // indexed like levels[0]
  std::vector<double> psi;  // indexed like levels[delta]
};

// One coordinate of the high-dimensional mapping.
struct ComponentKey {
  int ax = 0;
  int ay = 0;
  int j = 0;
  int variant = 1;  // 1..4
  friend bool operator==(const ComponentKey&, const ComponentKey&) = default;
};

// Row-major |P_0| x dim and |P_delta| x dim matrices.
struct VectorMapPair {
  int dim = 0;
  std::vector<ComponentKey> keys;
  std::vector<double> phi;
  std::vector<double> psi;

  const double* phi_row(std::size_t i) const { return phi.data() + i * dim; }
  const double* psi_row(std::size_t i) const { return psi.data() + i * dim; }
};

inline int highdim_dimension(int delta) {
  return 4 * delta * (2 * delta + 1) * (2 * delta + 1);
}

// Lexicographic (ax, ay, j, variant) order over |alpha|_inf <= delta.
std::vector<ComponentKey> component_order(int delta);

// Trigger regions: p_j in (mu,1)x(0,1), p_{j+1} in ((0,mu) u (1,1+mu)) x (-1,1).
ScalarMapPair chain_mapping_1d(const PartiteInstance& inst, int j, double mu,
                               const PredicateConfig& cfg = {});

// One (alpha, j, variant) coordinate: the 1d mapping after shifting by -alpha,
// negating y (variants 2, 4) and reversing the levels (variants 3, 4).
ScalarMapPair component_mapping(const PartiteInstance& inst, const ComponentKey& key, double mu,
                                const PredicateConfig& cfg = {});

// Full mapping in component_order(delta). Requires P_0 inside (0,1)^2.
VectorMapPair chain_mapping_highdim(const PartiteInstance& inst, double mu,
                                    const PredicateConfig& cfg = {});

// Same semantics with coordinates that can never produce a non-dominated pair
// dropped (a component with min phi >= max psi is irrelevant).
VectorMapPair chain_mapping_highdim_pruned(const PartiteInstance& inst, double mu,
                                           const PredicateConfig& cfg = {});

// a >= b in every coordinate.
bool dominates(const double* a, const double* b, int dim);

enum class DominanceStrategy { Auto, AllPairs, BitsetSweep };

// Some (p, q) with rows_a[p] dominating rows_b[q], restricted to the given
// row subsets. Returns the first pair found.
std::optional<std::pair<int, int>> find_dominating_pair(const std::vector<double>& rows_a,
                                                        const std::vector<int>& subset_a,
                                                        const std::vector<double>& rows_b,
                                                        const std::vector<int>& subset_b,
                                                        int dim, DominanceStrategy strategy);

struct RecursionNode {
  PartiteInstance inst;
  int dim = 0;
  std::vector<double> f;  // |P_0| x dim
  std::vector<double> g;  // |P_delta| x dim
};

struct UnitSquareOptions {
  int branching = 0;        // 0: default_branching(n, delta)
  int base_case_size = 24;  // nodes with at most this many points are solved directly
  DominanceStrategy dominance = DominanceStrategy::Auto;
  PredicateConfig cfg{};
};

// ceil(2^sqrt(delta^3 log2 n log2 log2 n)) clamped to [2, n].
int analytic_branching(int n, int delta);
// Branching used when options.branching == 0.
int default_branching(int n, int delta);

inline double frac(double x) { return x - std::floor(x); }

// Cut values 0 = mu_0 < ... < mu_b = 1, placed between distinct x mod 1 values.
std::vector<double> compute_quantiles(const PartiteInstance& inst, int b);

// Every pair (p_0, p_delta) with f(p_0) dominating g(p_delta) is joined by a
// chain of pairwise intersecting unit squares through P_1..P_{delta-1}.
bool partite_all_connected(const RecursionNode& node, int b, const UnitSquareOptions& opt = {});
bool partite_all_connected(const RecursionNode& node, const UnitSquareOptions& opt = {});

// Direct layered reachability; used as the recursion's base case.
bool partite_all_connected_direct(const RecursionNode& node, const PredicateConfig& cfg = {});

bool unit_square_diam_at_most(const std::vector<Point>& centers, int delta,
                              const UnitSquareOptions& opt = {});

}  // namespace geodiam
