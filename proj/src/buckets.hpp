#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pctopo/core.hpp"

namespace pctopo::detail {

// Axis-aligned bucketing of a point cloud into cubes of a fixed side. Bucket
// coordinates are packed into one 64-bit key; make() fails when they do not fit.
class BucketFrame {
 public:
  // Side is inflated slightly so that any two points within `reach` of each
  // other land in buckets at most one apart per axis despite rounding.
  static std::optional<BucketFrame> make(const PointCloud& cloud, double reach) {
    if (cloud.empty() || !(reach > 0.0) || !std::isfinite(reach)) return std::nullopt;
    const std::size_t dim = cloud.dim();
    BucketFrame f;
    f.dim_ = dim;
    f.side_ = reach * (1.0 + 1e-6);
    f.lo_.assign(dim, kInfinity);
    std::vector<double> hi(dim, -kInfinity);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      auto p = cloud.point(i);
      for (std::size_t k = 0; k < dim; ++k) {
        if (!std::isfinite(p[k])) return std::nullopt;
        f.lo_[k] = std::min(f.lo_[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    f.extent_.resize(dim);
    double total = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double span = std::floor((hi[k] - f.lo_[k]) / f.side_) + 1.0;
      if (!(span < 4.0e9)) return std::nullopt;
      f.extent_[k] = static_cast<std::uint64_t>(span);
      total *= span;
    }
    if (!(total < 9.0e18)) return std::nullopt;
    f.total_ = static_cast<std::uint64_t>(total);
    return f;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t total() const noexcept { return total_; }

  void coords(std::span<const double> p, std::int64_t* out) const noexcept {
    for (std::size_t k = 0; k < dim_; ++k) {
      double c = std::floor((p[k] - lo_[k]) / side_);
      if (c < 0.0) c = 0.0;
      const double top = static_cast<double>(extent_[k] - 1);
      if (c > top) c = top;
      out[k] = static_cast<std::int64_t>(c);
    }
  }

  // Packs bucket coordinates; returns false when out of range.
  bool pack(const std::int64_t* c, std::uint64_t& key) const noexcept {
    std::uint64_t acc = 0;
    for (std::size_t k = dim_; k-- > 0;) {
      if (c[k] < 0 || static_cast<std::uint64_t>(c[k]) >= extent_[k]) return false;
      acc = acc * extent_[k] + static_cast<std::uint64_t>(c[k]);
    }
    key = acc;
    return true;
  }

  // Calls visit(key) for every in-range bucket in the 3^N block around c.
  template <class Visit>
  void for_each_neighbor(const std::int64_t* c, std::vector<std::int64_t>& scratch, Visit&& visit) const {
    scratch.assign(2 * dim_, -1);
    std::int64_t* offset = scratch.data();
    std::int64_t* at = scratch.data() + dim_;
    while (true) {
      for (std::size_t k = 0; k < dim_; ++k) at[k] = c[k] + offset[k];
      std::uint64_t key;
      if (pack(at, key)) visit(key);
      std::size_t k = 0;
      while (k < dim_ && offset[k] == 1) offset[k++] = -1;
      if (k == dim_) break;
      ++offset[k];
    }
  }

 private:
  std::size_t dim_ = 0;
  double side_ = 0.0;
  std::vector<double> lo_;
  std::vector<std::uint64_t> extent_;
  std::uint64_t total_ = 0;
};

// Bucket-key -> head-of-list table; dense when the frame is small.
class BucketHeads {
 public:
  BucketHeads(const BucketFrame& frame, std::size_t expected) {
    if (frame.total() <= std::max<std::uint64_t>(1u << 22, 4 * static_cast<std::uint64_t>(expected))) {
      dense_.assign(frame.total(), -1);
    } else {
      sparse_.reserve(expected);
    }
  }

  std::int64_t get(std::uint64_t key) const {
    if (!dense_.empty()) return dense_[key];
    auto it = sparse_.find(key);
    return it == sparse_.end() ? -1 : it->second;
  }

  // Sets the head and returns the previous one.
  std::int64_t exchange(std::uint64_t key, std::int64_t value) {
    if (!dense_.empty()) {
      std::int64_t old = dense_[key];
      dense_[key] = value;
      return old;
    }
    auto [it, inserted] = sparse_.try_emplace(key, value);
    if (inserted) return -1;
    std::int64_t old = it->second;
    it->second = value;
    return old;
  }

 private:
  std::vector<std::int64_t> dense_;
  std::unordered_map<std::uint64_t, std::int64_t> sparse_;
};

}  // namespace pctopo::detail
