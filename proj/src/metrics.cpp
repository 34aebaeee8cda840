#include "pctopo/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <queue>
#include <string>
#include <tuple>

namespace pctopo {

GroundMetric parse_metric(std::string_view name) {
  if (name == "chebyshev") return GroundMetric::chebyshev;
  if (name == "euclidean") return GroundMetric::euclidean;
  throw InvalidArgument("unknown ground metric '" + std::string(name) + "' (expected chebyshev or euclidean)");
}

std::string_view metric_name(GroundMetric metric) {
  return metric == GroundMetric::chebyshev ? "chebyshev" : "euclidean";
}

double point_cost(const Interval& a, const Interval& b, GroundMetric metric) {
  const double db = a.birth - b.birth;
  const double dd = a.death - b.death;
  if (metric == GroundMetric::chebyshev) return std::max(std::fabs(db), std::fabs(dd));
  return std::hypot(db, dd);
}

double diagonal_cost(const Interval& a, GroundMetric metric) {
  const double len = a.death - a.birth;
  if (metric == GroundMetric::chebyshev) return len / 2.0;
  return len / std::numbers::sqrt2;
}

double matching_cost(const PersistenceDiagram& a, const PersistenceDiagram& b, const Matching& m,
                     GroundMetric metric) {
  double worst = 0.0;
  for (auto [i, j] : m.pairs) {
    const Interval& x = a.intervals.at(i);
    const Interval& y = b.intervals.at(j);
    double c;
    if (x.infinite() && y.infinite()) {
      c = std::fabs(x.birth - y.birth);
    } else if (x.infinite() || y.infinite()) {
      c = kInfinity;
    } else {
      c = point_cost(x, y, metric);
    }
    worst = std::max(worst, c);
  }
  for (std::size_t i : m.diagonal_a) {
    const Interval& x = a.intervals.at(i);
    worst = std::max(worst, x.infinite() ? kInfinity : diagonal_cost(x, metric));
  }
  for (std::size_t j : m.diagonal_b) {
    const Interval& y = b.intervals.at(j);
    worst = std::max(worst, y.infinite() ? kInfinity : diagonal_cost(y, metric));
  }
  return worst;
}

namespace {

struct Split {
  std::vector<std::size_t> finite;
  std::vector<std::size_t> infinite;
};

Split split(const PersistenceDiagram& d) {
  Split s;
  for (std::size_t i = 0; i < d.intervals.size(); ++i) {
    (d.intervals[i].infinite() ? s.infinite : s.finite).push_back(i);
  }
  return s;
}

// Hopcroft-Karp on a dense adjacency predicate.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<std::uint32_t>> adjacency, std::size_t right_size)
      : adj_(std::move(adjacency)), match_left_(adj_.size(), kNone), match_right_(right_size, kNone),
        dist_(adj_.size()) {}

  std::size_t run() {
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kNone && dfs(u)) ++matched;
      }
    }
    return matched;
  }

  std::uint32_t partner_of_left(std::size_t u) const { return match_left_[u]; }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kNone) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::uint32_t v : adj_[u]) {
        const std::uint32_t w = match_right_[v];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kNone) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::uint32_t v : adj_[u]) {
      const std::uint32_t w = match_right_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = static_cast<std::uint32_t>(u);
        return true;
      }
    }
    dist_[u] = kNone;
    return false;
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> match_left_;
  std::vector<std::uint32_t> match_right_;
  std::vector<std::uint32_t> dist_;
};

// Finite parts only. Left: A points then one diagonal slot per B point.
// Right: B points then one diagonal slot per A point.
class GeneralSolver {
 public:
  GeneralSolver(const PersistenceDiagram& a, const PersistenceDiagram& b, const Split& sa, const Split& sb,
                GroundMetric metric)
      : a_(a), b_(b), fa_(sa.finite), fb_(sb.finite), metric_(metric) {
    const std::size_t m = fa_.size(), n = fb_.size();
    pair_cost_.resize(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        pair_cost_[i * n + j] = point_cost(a.intervals[fa_[i]], b.intervals[fb_[j]], metric);
      }
    }
    for (std::size_t i : fa_) diag_a_.push_back(diagonal_cost(a.intervals[i], metric));
    for (std::size_t j : fb_) diag_b_.push_back(diagonal_cost(b.intervals[j], metric));
  }

  // Smallest candidate cost admitting a perfect matching, with its witness.
  double solve(Matching& witness) {
    std::vector<double> candidates{0.0};
    candidates.insert(candidates.end(), pair_cost_.begin(), pair_cost_.end());
    candidates.insert(candidates.end(), diag_a_.begin(), diag_a_.end());
    candidates.insert(candidates.end(), diag_b_.begin(), diag_b_.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;  // all-to-diagonal is feasible at the top
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (feasible(candidates[mid], nullptr)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    feasible(candidates[lo], &witness);
    return candidates[lo];
  }

 private:
  bool feasible(double t, Matching* witness) const {
    const std::size_t m = fa_.size(), n = fb_.size();
    std::vector<std::vector<std::uint32_t>> adj(m + n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (pair_cost_[i * n + j] <= t) adj[i].push_back(static_cast<std::uint32_t>(j));
      }
      if (diag_a_[i] <= t) adj[i].push_back(static_cast<std::uint32_t>(n + i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto& row = adj[m + j];
      if (diag_b_[j] <= t) row.push_back(static_cast<std::uint32_t>(j));
      for (std::size_t i = 0; i < m; ++i) row.push_back(static_cast<std::uint32_t>(n + i));
    }
    BipartiteMatcher matcher(std::move(adj), n + m);
    const bool ok = matcher.run() == m + n;
    if (ok && witness != nullptr) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t v = matcher.partner_of_left(i);
        if (v < n) {
          witness->pairs.emplace_back(fa_[i], fb_[v]);
        } else {
          witness->diagonal_a.push_back(fa_[i]);
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (matcher.partner_of_left(m + j) == j) witness->diagonal_b.push_back(fb_[j]);
      }
    }
    return ok;
  }

  const PersistenceDiagram& a_;
  const PersistenceDiagram& b_;
  const std::vector<std::size_t>& fa_;
  const std::vector<std::size_t>& fb_;
  GroundMetric metric_;
  std::vector<double> pair_cost_;
  std::vector<double> diag_a_;
  std::vector<double> diag_b_;
};

// All finite births zero: points lie on the death axis and the threshold
// test is a greedy sweep from the longest bar down.
class LineSolver {
 public:
  LineSolver(const PersistenceDiagram& a, const PersistenceDiagram& b, const Split& sa, const Split& sb,
             GroundMetric metric)
      : a_(a), b_(b), metric_(metric) {
    for (std::size_t i : sa.finite) items_.push_back({a.intervals[i].death, 0, i, diagonal_cost(a.intervals[i], metric)});
    for (std::size_t j : sb.finite) items_.push_back({b.intervals[j].death, 1, j, diagonal_cost(b.intervals[j], metric)});
    std::sort(items_.begin(), items_.end(), [](const Item& x, const Item& y) {
      return std::tie(y.death, x.side, x.index) < std::tie(x.death, y.side, y.index);
    });
  }

  double solve(Matching& witness) {
    double top = 0.0;
    for (const Item& it : items_) top = std::max(top, it.diag);
    if (feasible(0.0, nullptr)) {
      feasible(0.0, &witness);
      return 0.0;
    }
    // Bisect over the ordered bit patterns of non-negative doubles; the
    // answer is the least double at which the sweep succeeds, which is
    // necessarily one of the candidate costs.
    std::uint64_t lo = std::bit_cast<std::uint64_t>(0.0);
    std::uint64_t hi = std::bit_cast<std::uint64_t>(top);
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (feasible(std::bit_cast<double>(mid), nullptr)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double t = std::bit_cast<double>(hi);
    feasible(t, &witness);
    return t;
  }

 private:
  struct Item {
    double death;
    int side;
    std::size_t index;
    double diag;
  };

  double cost(const Item& x, const Item& y) const {
    const Interval& ix = x.side == 0 ? a_.intervals[x.index] : b_.intervals[x.index];
    const Interval& iy = y.side == 0 ? a_.intervals[y.index] : b_.intervals[y.index];
    return point_cost(ix, iy, metric_);
  }

  bool feasible(double t, Matching* witness) const {
    std::deque<const Item*> pending[2];
    std::vector<std::pair<const Item*, const Item*>> pairs;
    std::vector<const Item*> diagonal;
    for (const Item& it : items_) {
      auto& other = pending[1 - it.side];
      if (!other.empty()) {
        const Item* front = other.front();
        if (cost(*front, it) > t) return false;
        other.pop_front();
        pairs.emplace_back(front, &it);
      } else if (it.diag > t) {
        pending[it.side].push_back(&it);
      } else {
        diagonal.push_back(&it);
      }
    }
    if (!pending[0].empty() || !pending[1].empty()) return false;
    if (witness != nullptr) {
      for (auto [x, y] : pairs) {
        const Item* ia = x->side == 0 ? x : y;
        const Item* ib = x->side == 0 ? y : x;
        witness->pairs.emplace_back(ia->index, ib->index);
      }
      for (const Item* d : diagonal) (d->side == 0 ? witness->diagonal_a : witness->diagonal_b).push_back(d->index);
    }
    return true;
  }

  const PersistenceDiagram& a_;
  const PersistenceDiagram& b_;
  GroundMetric metric_;
  std::vector<Item> items_;
};

bool births_all_zero(const PersistenceDiagram& d, const Split& s) {
  return std::all_of(s.finite.begin(), s.finite.end(), [&](std::size_t i) { return d.intervals[i].birth == 0.0; });
}

}  // namespace

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b,
                            const BottleneckOptions& options) {
  BottleneckResult result;
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.infinite.size() != sb.infinite.size()) {
    result.value = kInfinity;
    result.witness.cost = kInfinity;
    return result;
  }

  auto by_birth = [](const PersistenceDiagram& d) {
    return [&d](std::size_t x, std::size_t y) {
      if (d.intervals[x].birth != d.intervals[y].birth) return d.intervals[x].birth < d.intervals[y].birth;
      return x < y;
    };
  };
  std::vector<std::size_t> ia = sa.infinite, ib = sb.infinite;
  std::sort(ia.begin(), ia.end(), by_birth(a));
  std::sort(ib.begin(), ib.end(), by_birth(b));
  double infinite_cost = 0.0;
  for (std::size_t k = 0; k < ia.size(); ++k) {
    result.witness.pairs.emplace_back(ia[k], ib[k]);
    infinite_cost = std::max(infinite_cost, std::fabs(a.intervals[ia[k]].birth - b.intervals[ib[k]].birth));
  }

  double finite_cost;
  if (options.allow_fast_path && births_all_zero(a, sa) && births_all_zero(b, sb)) {
    finite_cost = LineSolver(a, b, sa, sb, options.metric).solve(result.witness);
  } else {
    finite_cost = GeneralSolver(a, b, sa, sb, options.metric).solve(result.witness);
  }
  result.value = std::max(infinite_cost, finite_cost);
  result.witness.cost = result.value;
  return result;
}

}  // namespace pctopo
