#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"

namespace ramchord {

/// Non-negative fraction in lowest terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long num, long long den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  bool operator==(const Rational&) const = default;
};

/// e(A,B) / (|A||B|). Throws InvalidInput on empty or overlapping sets.
Rational density(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b);

enum class RegularityMode { exact, sampled };

const char* to_string(RegularityMode m);

inline constexpr int kExactRegularityLimit = 16;

struct RegularityVerdict {
  Rational density;
  RegularityMode mode = RegularityMode::exact;
  /// Largest |d(A',B') - d(A,B)| seen over the examined subpairs.
  double max_deviation = 0.0;
  /// Exact mode: the pair is eps-regular. Sampled mode: no deviation of at
  /// least eps was found, which is evidence only.
  bool regular = true;
  std::size_t examined = 0;
  /// A subpair deviating by at least eps.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

/// Exact mode enumerates every A' with |A'| >= eps|A| and, for each size of
/// B', only the B' of extreme edge count, so |A|, |B| <= 16 is required.
/// Sampled mode draws `samples` uniform pairs of sizes ceil(eps|A|), ceil(eps|B|).
RegularityVerdict regularity_check(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b,
                                   double eps, RegularityMode mode, std::size_t samples = 0,
                                   std::uint64_t seed = 0);

/// {a in A : |N(a) & B| >= (d - eps)|B|}, in the order of A.
std::vector<int> typical_vertices(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b,
                                  double eps, double d);

struct PairPathOptions {
  /// Vertices no interior vertex may use.
  std::vector<int> forbidden;
  /// When positive, v1 and v2 need at least this fraction of the opposite side as neighbours.
  double min_deg_fraction = 0.0;
  /// Vertex trials before giving up; 0 picks 200 (|X1| + |X2|).
  std::size_t max_steps = 0;
};

/// A v1-v2 path with exactly `length` edges alternating between X1 and X2,
/// found by depth-first search that tries the candidate with the fewest
/// onward options first. None means the step budget ran out. Throws
/// InvalidInput for even lengths, anchors on the wrong side, or anchors below
/// the degree fraction.
std::optional<std::vector<int>> pair_path_embed(const SimpleGraph& host, const std::vector<int>& x1,
                                                const std::vector<int>& x2, int v1, int v2, int length,
                                                const PairPathOptions& opts = {});

/// Rows q^i_1..q^i_{ell-1}: how many edges of path i run across (V_j, V_{j+1}).
struct ChunkAllocation {
  int ell = 0;
  std::vector<std::vector<int>> q;
  /// Each p^i >= 3 ell.
  bool long_paths = false;
  /// Sum of p^i <= (1 - 2 eps^(1/4))(ell - 2)|V_1|.
  bool total_fits = false;
};

class AllocationError : public InvalidInput {
 public:
  enum class Kind { parity, floor, capacity };

  AllocationError(Kind kind, const std::string& what) : InvalidInput(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(AllocationError::Kind k);

/// Odd chunk lengths with q^i_j = 1 for odd j, q^i_j >= 3 for even j, row sums
/// p^i and, for even j, sum_i (q^i_j + 1) <= 2(1 - 2 eps^(1/4)) cluster_size.
/// Each row spreads p^i - ell/2 over the even slots as evenly as possible with
/// the leftmost slots taking the remainder; overfull slots are then relieved
/// by moving 2 at a time to the slot with the most room.
ChunkAllocation allocate_chunks(const std::vector<int>& path_lengths, int ell, int cluster_size, double eps);

/// Every violated allocation condition, as readable messages.
std::vector<std::string> allocation_violations(const ChunkAllocation& alloc, const std::vector<int>& path_lengths,
                                               int cluster_size, double eps);

nlohmann::json rational_to_json(const Rational& r);
nlohmann::json regularity_to_json(const RegularityVerdict& v);
nlohmann::json allocation_to_json(const ChunkAllocation& a);

}  // namespace ramchord
