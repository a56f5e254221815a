#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"
#include "ramchord/regular_pairs.hpp"

namespace ramchord {

/// Host graph with equal-size clusters V_1..V_ell, pairwise disjoint except
/// that V_1 and V_ell may overlap.
struct ClusterChain {
  SimpleGraph host;
  std::vector<std::vector<int>> clusters;

  int ell() const { return static_cast<int>(clusters.size()); }
  int cluster_size() const { return clusters.empty() ? 0 : static_cast<int>(clusters.front().size()); }
  /// Throws InvalidInput on unequal sizes, foreign vertices or forbidden overlaps.
  void validate() const;
};

/// Path of `length` edges from start (in V_1) to end (in V_ell).
struct AnchoredPathSpec {
  int length = 0;
  int start = 0;
  int end = 0;
};

struct ChainEmbedOptions {
  /// Subpairs drawn per consecutive cluster pair for the regularity evidence.
  std::size_t regularity_samples = 200;
  std::uint64_t seed = 0;
};

struct ChainHypotheses {
  bool pairs_dense = false;      // every (V_j, V_{j+1}) has density >= 2 eps^(1/4)
  bool few_paths = false;        // k <= eps^(1/2)|V_1|
  bool long_paths = false;       // p^i >= 3 ell
  bool total_fits = false;       // sum p^i <= (1 - 2 eps^(1/4))(ell - 2)|V_1|
  bool anchors_typical = false;  // starts eps-typical toward V_2, ends toward V_(ell-1)
};

/// Size of the working set V_j - U when path i is embedded, with the bounds the argument needs.
struct WorkingSetReport {
  int path = 0;
  int j = 0;
  int size = 0;
  bool room = false;   // (1 - 2 eps^(1/4))|W| > (q_(2 floor(j/2)) + 1) / 2
  bool large = false;  // |W| > 4 eps^(1/2)|V_j|
  bool balanced = false;  // |W_j| = |W_(j+1)| for even j
};

struct ChainEmbedding {
  std::vector<std::vector<int>> paths;
  /// waypoints[i][j-1] is the image of the Q^i_j-th vertex of path i, in V_j.
  std::vector<std::vector<int>> waypoints;
  std::vector<RegularityVerdict> pair_reports;
  ChainHypotheses hypotheses;
  std::vector<WorkingSetReport> working_sets;
};

/// Raised when no waypoint qualifies or a segment cannot be embedded.
class ChainEmbedError : public std::runtime_error {
 public:
  ChainEmbedError(int path, int j, const std::string& what)
      : std::runtime_error("path " + std::to_string(path) + ", cluster " + std::to_string(j) + ": " + what),
        path_(path),
        j_(j) {}
  int path() const { return path_; }
  int j() const { return j_; }

 private:
  int path_;
  int j_;
};

/// Embeds the paths one after another. Path i gets waypoints w_j in V_j for
/// 2 <= j <= ell - 1, each adjacent to its partner across an odd-j pair and
/// eps^(1/2)-typical toward the unused parts of the neighbouring clusters,
/// lowest index first. Across each even-j pair the segment w_j..w_(j+1) of
/// q^i_j edges comes from pair_path_embed inside the unused vertices. Input
/// and allocation are validated before any work; failures throw ChainEmbedError.
ChainEmbedding chain_path_embed(const ClusterChain& chain, const std::vector<AnchoredPathSpec>& specs,
                                const ChunkAllocation& alloc, double eps, const ChainEmbedOptions& opts = {});

/// Every violated output condition: exact lengths, host edges, disjoint
/// interiors avoiding V_1 and V_ell, and waypoints in their clusters.
std::vector<std::string> verify_chain_embedding(const ClusterChain& chain, const std::vector<AnchoredPathSpec>& specs,
                                                const ChunkAllocation& alloc, const ChainEmbedding& emb);

/// Disjoint clusters of `cluster_size` consecutive labels with independent
/// edges of probability `density` between consecutive clusters.
ClusterChain random_cluster_chain(std::uint64_t seed, int ell, int cluster_size, double density);

/// Specs with the lowest-index eps-typical anchors, distinct within V_1 and within V_ell.
std::vector<AnchoredPathSpec> typical_anchor_specs(const ClusterChain& chain, const std::vector<int>& lengths,
                                                   double eps);

nlohmann::json chain_to_json(const ClusterChain& chain);
ClusterChain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_embedding_to_json(const ChainEmbedding& emb);

}  // namespace ramchord
