#include "ramchord/regular_pairs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace ramchord {

using nlohmann::json;

Rational Rational::of(long long num, long long den) {
  if (den <= 0 || num < 0) throw InvalidInput("rational needs a non-negative numerator and positive denominator");
  const long long g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

namespace {

/// Side label per host vertex: 0 outside, 1 in `a`, 2 in `b`.
std::vector<signed char> sides(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<signed char> side(host.order(), 0);
  for (const auto* set : {&a, &b}) {
    const signed char label = set == &a ? 1 : 2;
    for (int v : *set) {
      if (v < 0 || v >= host.order()) throw InvalidInput("vertex " + std::to_string(v) + " is outside the host");
      if (side[v]) throw InvalidInput("vertex sets must be disjoint and free of repeats");
      side[v] = label;
    }
  }
  return side;
}

int degree_into(const SimpleGraph& host, int v, const std::vector<signed char>& side, signed char label) {
  int c = 0;
  for (int w : host.neighbors(v)) c += side[w] == label;
  return c;
}

int threshold_size(double eps, std::size_t n) {
  return std::max(1, static_cast<int>(std::ceil(eps * static_cast<double>(n) - 1e-12)));
}

}  // namespace

Rational density(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw InvalidInput("density needs two nonempty sets");
  const auto side = sides(host, a, b);
  long long e = 0;
  for (int v : a) e += degree_into(host, v, side, 2);
  return Rational::of(e, static_cast<long long>(a.size()) * static_cast<long long>(b.size()));
}

const char* to_string(RegularityMode m) { return m == RegularityMode::exact ? "exact" : "sampled"; }

RegularityVerdict regularity_check(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b,
                                   double eps, RegularityMode mode, std::size_t samples, std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidInput("eps must lie in (0,1]");
  RegularityVerdict v;
  v.density = density(host, a, b);
  v.mode = mode;
  const double d = v.density.value();
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int ta = threshold_size(eps, a.size());
  const int tb = threshold_size(eps, b.size());
  auto record = [&](double dev, auto&& make_witness) {
    ++v.examined;
    if (dev > v.max_deviation) v.max_deviation = dev;
    if (dev >= eps && !v.witness) {
      v.regular = false;
      v.witness = make_witness();
    }
  };

  if (mode == RegularityMode::exact) {
    if (na > kExactRegularityLimit || nb > kExactRegularityLimit) {
      throw InvalidInput("exact regularity check is limited to sets of at most 16 vertices");
    }
    std::vector<unsigned> nbr_mask(nb, 0);
    for (int j = 0; j < nb; ++j) {
      for (int i = 0; i < na; ++i) {
        if (host.has_edge(a[i], b[j])) nbr_mask[j] |= 1u << i;
      }
    }
    std::vector<std::pair<int, int>> deg(nb);
    for (unsigned mask = 1; mask < (1u << na); ++mask) {
      const int sa = std::popcount(mask);
      if (sa < ta) continue;
      for (int j = 0; j < nb; ++j) deg[j] = {std::popcount(nbr_mask[j] & mask), j};
      std::sort(deg.begin(), deg.end());
      // Prefix sums from the low end give the sparsest B' of each size, from the high end the densest.
      long long low = 0;
      long long high = 0;
      for (int t = 1; t <= nb; ++t) {
        low += deg[t - 1].first;
        high += deg[nb - t].first;
        if (t < tb) continue;
        const double denom = static_cast<double>(sa) * t;
        for (bool dense : {false, true}) {
          const double dev = std::abs((dense ? high : low) / denom - d);
          record(dev, [&] {
            std::vector<int> a_sub;
            for (int i = 0; i < na; ++i)
              if (mask >> i & 1) a_sub.push_back(a[i]);
            std::vector<int> b_sub;
            for (int s = 0; s < t; ++s) b_sub.push_back(b[deg[dense ? nb - 1 - s : s].second]);
            std::sort(b_sub.begin(), b_sub.end());
            return std::make_pair(a_sub, b_sub);
          });
        }
      }
    }
    return v;
  }

  if (samples == 0) throw InvalidInput("sampled regularity check needs a positive sample count");
  std::mt19937_64 rng(seed);
  std::vector<int> pa = a;
  std::vector<int> pb = b;
  for (std::size_t s = 0; s < samples; ++s) {
    for (int i = 0; i < ta; ++i) std::swap(pa[i], pa[i + rng() % (na - i)]);
    for (int i = 0; i < tb; ++i) std::swap(pb[i], pb[i + rng() % (nb - i)]);
    long long e = 0;
    for (int i = 0; i < ta; ++i)
      for (int j = 0; j < tb; ++j) e += host.has_edge(pa[i], pb[j]);
    const double dev = std::abs(static_cast<double>(e) / (static_cast<double>(ta) * tb) - d);
    record(dev, [&] {
      std::vector<int> a_sub(pa.begin(), pa.begin() + ta);
      std::vector<int> b_sub(pb.begin(), pb.begin() + tb);
      std::sort(a_sub.begin(), a_sub.end());
      std::sort(b_sub.begin(), b_sub.end());
      return std::make_pair(a_sub, b_sub);
    });
  }
  return v;
}

std::vector<int> typical_vertices(const SimpleGraph& host, const std::vector<int>& a, const std::vector<int>& b,
                                  double eps, double d) {
  const auto side = sides(host, a, b);
  const double need = (d - eps) * static_cast<double>(b.size());
  std::vector<int> out;
  for (int v : a) {
    if (degree_into(host, v, side, 2) >= need) out.push_back(v);
  }
  return out;
}

namespace {

class PairPathSearch {
 public:
  PairPathSearch(const SimpleGraph& host, std::vector<signed char> side, int v2, int length, std::size_t max_steps)
      : host_(host), side_(std::move(side)), used_(host.order(), 0), v2_(v2), length_(length), max_steps_(max_steps) {}

  std::optional<std::vector<int>> run(int v1) {
    path_.push_back(v1);
    used_[v1] = 1;
    used_[v2_] = 1;
    if (!extend()) return std::nullopt;
    path_.push_back(v2_);
    return path_;
  }

 private:
  /// Position t of the path lies on side 1 when t is even, side 2 when odd.
  static signed char side_of(int t) { return t % 2 == 0 ? 1 : 2; }

  int onward(int v, signed char next_side) const {
    int c = 0;
    for (int w : host_.neighbors(v)) c += side_[w] == next_side && !used_[w];
    return c;
  }

  bool extend() {
    const int t = static_cast<int>(path_.size());  // position to fill
    const int cur = path_.back();
    if (t == length_) return host_.has_edge(cur, v2_);
    const signed char s = side_of(t);
    std::vector<std::pair<int, int>> cand;
    for (int w : host_.neighbors(cur)) {
      if (side_[w] != s || used_[w]) continue;
      if (t == length_ - 1 && !host_.has_edge(w, v2_)) continue;
      cand.emplace_back(onward(w, side_of(t + 1)), w);
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [score, w] : cand) {
      if (t < length_ - 1 && score == 0) continue;
      if (++steps_ > max_steps_) return false;
      used_[w] = 1;
      path_.push_back(w);
      if (extend()) return true;
      path_.pop_back();
      used_[w] = 0;
      if (steps_ > max_steps_) return false;
    }
    return false;
  }

  const SimpleGraph& host_;
  std::vector<signed char> side_;
  std::vector<char> used_;
  std::vector<int> path_;
  int v2_;
  int length_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<std::vector<int>> pair_path_embed(const SimpleGraph& host, const std::vector<int>& x1,
                                                const std::vector<int>& x2, int v1, int v2, int length,
                                                const PairPathOptions& opts) {
  if (length < 1 || length % 2 == 0) {
    throw InvalidInput("a path between opposite sides needs an odd length, got " + std::to_string(length));
  }
  auto side = sides(host, x1, x2);
  if (side[v1] != 1) throw InvalidInput("v1 must lie in X1");
  if (side[v2] != 2) throw InvalidInput("v2 must lie in X2");
  if (opts.min_deg_fraction > 0.0) {
    if (degree_into(host, v1, side, 2) < opts.min_deg_fraction * static_cast<double>(x2.size()) ||
        degree_into(host, v2, side, 1) < opts.min_deg_fraction * static_cast<double>(x1.size())) {
      throw InvalidInput("an anchor has too few neighbours on the opposite side");
    }
  }
  for (int f : opts.forbidden) {
    if (f >= 0 && f < host.order() && f != v1 && f != v2) side[f] = 0;
  }
  const std::size_t steps = opts.max_steps ? opts.max_steps : 200 * (x1.size() + x2.size());
  return PairPathSearch(host, std::move(side), v2, length, steps).run(v1);
}

const char* to_string(AllocationError::Kind k) {
  switch (k) {
    case AllocationError::Kind::parity: return "parity";
    case AllocationError::Kind::floor: return "floor";
    case AllocationError::Kind::capacity: return "capacity";
  }
  return "?";
}

namespace {

double capacity_of(int cluster_size, double eps) { return 2.0 * (1.0 - 2.0 * std::pow(eps, 0.25)) * cluster_size; }

}  // namespace

ChunkAllocation allocate_chunks(const std::vector<int>& path_lengths, int ell, int cluster_size, double eps) {
  using Kind = AllocationError::Kind;
  if (ell < 4 || ell % 2 != 0) {
    throw AllocationError(Kind::parity, "ell must be even and at least 4 so that ell - 1 odd chunks can sum to an odd "
                                        "length, got " + std::to_string(ell));
  }
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0,1)");
  if (cluster_size <= 0) throw InvalidInput("cluster size must be positive");
  const int floor = 2 * ell - 3;
  for (int p : path_lengths) {
    if (p % 2 == 0) throw AllocationError(Kind::parity, "path length " + std::to_string(p) + " is even");
    if (p < floor) {
      throw AllocationError(Kind::floor, "path length " + std::to_string(p) + " is below the minimum " +
                                             std::to_string(floor) + " for ell = " + std::to_string(ell));
    }
  }

  ChunkAllocation alloc;
  alloc.ell = ell;
  const int slots = (ell - 2) / 2;
  for (int p : path_lengths) {
    const int t = (p - ell + 1) / 2;  // sum of (q - 1) / 2 over the even slots
    std::vector<int> row(ell - 1, 1);
    for (int s = 0; s < slots; ++s) {
      const int x = t / slots + (s < t % slots ? 1 : 0);
      row[2 * s + 1] = 2 * x + 1;
    }
    alloc.q.push_back(std::move(row));
  }

  const double cap = capacity_of(cluster_size, eps);
  auto load = [&](int s) {
    long long l = 0;
    for (const auto& row : alloc.q) l += row[2 * s + 1] + 1;
    return l;
  };
  for (;;) {
    int over = -1;
    for (int s = 0; s < slots && over < 0; ++s)
      if (load(s) > cap) over = s;
    if (over < 0) break;
    int room = -1;
    for (int s = 0; s < slots; ++s)
      if (s != over && load(s) + 2 <= cap && (room < 0 || load(s) < load(room))) room = s;
    std::size_t donor = alloc.q.size();
    for (std::size_t i = 0; i < alloc.q.size() && room >= 0; ++i) {
      if (alloc.q[i][2 * over + 1] >= 5 && (donor == alloc.q.size() || alloc.q[i][2 * over + 1] > alloc.q[donor][2 * over + 1])) {
        donor = i;
      }
    }
    if (room < 0 || donor == alloc.q.size()) {
      throw AllocationError(Kind::capacity, "chunks across (V_" + std::to_string(2 * over + 2) + ", V_" +
                                                std::to_string(2 * over + 3) + ") need " + std::to_string(load(over)) +
                                                " > " + std::to_string(cap));
    }
    alloc.q[donor][2 * over + 1] -= 2;
    alloc.q[donor][2 * room + 1] += 2;
  }

  long long total = 0;
  alloc.long_paths = true;
  for (int p : path_lengths) {
    total += p;
    alloc.long_paths = alloc.long_paths && p >= 3 * ell;
  }
  alloc.total_fits = total <= (1.0 - 2.0 * std::pow(eps, 0.25)) * (ell - 2) * cluster_size;
  return alloc;
}

std::vector<std::string> allocation_violations(const ChunkAllocation& alloc, const std::vector<int>& path_lengths,
                                               int cluster_size, double eps) {
  std::vector<std::string> out;
  const int ell = alloc.ell;
  if (alloc.q.size() != path_lengths.size()) {
    out.push_back("allocation has " + std::to_string(alloc.q.size()) + " rows for " +
                  std::to_string(path_lengths.size()) + " paths");
    return out;
  }
  for (std::size_t i = 0; i < alloc.q.size(); ++i) {
    const auto& row = alloc.q[i];
    const std::string tag = "path " + std::to_string(i);
    if (static_cast<int>(row.size()) != ell - 1) {
      out.push_back(tag + ": row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(ell - 1));
      continue;
    }
    long long sum = 0;
    for (int j = 1; j <= ell - 1; ++j) {
      const int q = row[j - 1];
      sum += q;
      if (j % 2 == 1 && q != 1) out.push_back(tag + ": q_" + std::to_string(j) + " = " + std::to_string(q) + ", expected 1");
      if (j % 2 == 0 && (q < 3 || q % 2 == 0)) {
        out.push_back(tag + ": q_" + std::to_string(j) + " = " + std::to_string(q) + " is not an odd number >= 3");
      }
    }
    if (sum != path_lengths[i]) {
      out.push_back(tag + ": chunks sum to " + std::to_string(sum) + ", expected " + std::to_string(path_lengths[i]));
    }
  }
  const double cap = capacity_of(cluster_size, eps);
  for (int j = 2; j <= ell - 2; j += 2) {
    long long load = 0;
    for (const auto& row : alloc.q)
      if (static_cast<int>(row.size()) == ell - 1) load += row[j - 1] + 1;
    if (load > cap) {
      out.push_back("pair " + std::to_string(j) + ": sum of (q + 1) is " + std::to_string(load) + " > " +
                    std::to_string(cap));
    }
  }
  return out;
}

json rational_to_json(const Rational& r) { return json{{"num", r.num}, {"den", r.den}, {"value", r.value()}}; }

json regularity_to_json(const RegularityVerdict& v) {
  json j{{"density", rational_to_json(v.density)},
         {"mode", to_string(v.mode)},
         {"max_deviation", v.max_deviation},
         {"regular", v.regular},
         {"examined", v.examined}};
  j["witness"] = v.witness ? json{{"A", v.witness->first}, {"B", v.witness->second}} : json(nullptr);
  return j;
}

json allocation_to_json(const ChunkAllocation& a) {
  return json{{"ell", a.ell}, {"q", a.q}, {"long_paths", a.long_paths}, {"total_fits", a.total_fits}};
}

}  // namespace ramchord
