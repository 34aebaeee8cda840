#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pctopo/persistence.hpp"
#include "union_find.hpp"

namespace pctopo {

namespace {

constexpr std::uint32_t kLeafSize = 12;

struct Candidate {
  double length = kInfinity;
  std::size_t a = 0;
  std::size_t b = 0;

  bool improves_on(const Candidate& other) const noexcept {
    if (length != other.length) return length < other.length;
    if (a != other.a) return a < other.a;
    return b < other.b;
  }
};

class KdTree {
 public:
  explicit KdTree(const PointCloud& cloud) : cloud_(cloud), dim_(cloud.dim()) {
    const std::size_t n = cloud.size();
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<std::uint32_t>(i);
    nodes_.reserve(2 * (n / kLeafSize + 1));
    build(0, static_cast<std::uint32_t>(n));
  }

  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }

  // Lower bound on the distance from p to any point in the node, rounded so
  // that it never exceeds a distance computed by pctopo::distance.
  double box_distance(std::span<const double> p, std::size_t node) const noexcept {
    const double* lo = lo_.data() + node * dim_;
    const double* hi = hi_.data() + node * dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      double g = 0.0;
      if (p[k] < lo[k]) {
        g = lo[k] - p[k];
      } else if (p[k] > hi[k]) {
        g = p[k] - hi[k];
      }
      sum += g * g;
    }
    return std::sqrt(sum);
  }

 private:
  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({begin, end, -1, -1});
    lo_.resize(lo_.size() + dim_, kInfinity);
    hi_.resize(hi_.size() + dim_, -kInfinity);
    double* lo = lo_.data() + static_cast<std::size_t>(id) * dim_;
    double* hi = hi_.data() + static_cast<std::size_t>(id) * dim_;
    for (std::uint32_t i = begin; i < end; ++i) {
      auto p = cloud_.point(order_[i]);
      for (std::size_t k = 0; k < dim_; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    if (end - begin <= kLeafSize) return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (hi[k] - lo[k] > widest) {
        widest = hi[k] - lo[k];
        axis = k;
      }
    }
    if (!(widest > 0.0)) return id;  // all points coincide

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t x, std::uint32_t y) { return cloud_.point(x)[axis] < cloud_.point(y)[axis]; });
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  const PointCloud& cloud_;
  std::size_t dim_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

class Boruvka {
 public:
  explicit Boruvka(const PointCloud& cloud) : cloud_(cloud), tree_(cloud), uf_(cloud.size()) {}

  std::vector<MstEdge> run() {
    const std::size_t n = cloud_.size();
    std::vector<MstEdge> edges;
    edges.reserve(n == 0 ? 0 : n - 1);
    comp_.assign(n, 0);
    best_.assign(n, Candidate{});
    node_comp_.assign(tree_.nodes().size(), -1);
    while (uf_.sets() > 1) {
      for (std::size_t i = 0; i < n; ++i) comp_[i] = uf_.find(i);
      label_nodes();
      std::fill(best_.begin(), best_.end(), Candidate{});
      for (std::uint32_t p : tree_.order()) search(p);
      const std::size_t before = edges.size();
      for (std::size_t c = 0; c < n; ++c) {
        if (comp_[c] != c || best_[c].length == kInfinity) continue;
        const Candidate& e = best_[c];
        if (uf_.find(e.a) != uf_.find(e.b)) {
          uf_.unite(e.a, e.b);
          edges.push_back({e.a, e.b, e.length});
        }
      }
      if (edges.size() == before) throw InvalidArgument("euclidean_mst: non-finite coordinates");
    }
    std::sort(edges.begin(), edges.end(), edge_less);
    return edges;
  }

 private:
  void label_nodes() {
    const auto& nodes = tree_.nodes();
    const auto& order = tree_.order();
    // Children are created after their parent, so a reverse sweep is bottom-up.
    for (std::size_t id = nodes.size(); id-- > 0;) {
      const auto& node = nodes[id];
      if (node.left < 0) {
        std::int64_t label = static_cast<std::int64_t>(comp_[order[node.begin]]);
        for (std::uint32_t i = node.begin + 1; i < node.end; ++i) {
          if (static_cast<std::int64_t>(comp_[order[i]]) != label) {
            label = -1;
            break;
          }
        }
        node_comp_[id] = label;
      } else {
        const std::int64_t l = node_comp_[static_cast<std::size_t>(node.left)];
        const std::int64_t r = node_comp_[static_cast<std::size_t>(node.right)];
        node_comp_[id] = (l >= 0 && l == r) ? l : -1;
      }
    }
  }

  void search(std::size_t p) {
    const std::size_t c = comp_[p];
    visit(0, cloud_.point(p), p, c);
  }

  void visit(std::size_t id, std::span<const double> x, std::size_t p, std::size_t c) {
    if (node_comp_[id] == static_cast<std::int64_t>(c)) return;
    Candidate& best = best_[c];
    if (tree_.box_distance(x, id) > best.length) return;
    const auto& node = tree_.nodes()[id];
    if (node.left < 0) {
      const auto& order = tree_.order();
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::size_t q = order[i];
        if (comp_[q] == c) continue;
        Candidate cand{distance(x, cloud_.point(q)), std::min(p, q), std::max(p, q)};
        if (cand.improves_on(best)) best = cand;
      }
      return;
    }
    const auto l = static_cast<std::size_t>(node.left);
    const auto r = static_cast<std::size_t>(node.right);
    if (tree_.box_distance(x, l) <= tree_.box_distance(x, r)) {
      visit(l, x, p, c);
      visit(r, x, p, c);
    } else {
      visit(r, x, p, c);
      visit(l, x, p, c);
    }
  }

  const PointCloud& cloud_;
  KdTree tree_;
  detail::UnionFind uf_;
  std::vector<std::size_t> comp_;
  std::vector<Candidate> best_;
  std::vector<std::int64_t> node_comp_;
};

}  // namespace

std::vector<MstEdge> euclidean_mst(const PointCloud& cloud) {
  if (cloud.size() <= 1) return {};
  if (cloud.size() > UINT32_MAX) throw InvalidArgument("euclidean_mst: point cloud too large");
  return Boruvka(cloud).run();
}

}  // namespace pctopo
