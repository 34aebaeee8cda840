#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace pctopo::detail {

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& c) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::int64_t v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Lookup from integer lattice coordinates to position in a cell list.
class CellIndex {
 public:
  CellIndex() = default;
  CellIndex(std::span<const std::int64_t> flat, std::size_t dim) {
    const std::size_t n = dim == 0 ? 0 : flat.size() / dim;
    map_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
      map_.emplace(std::vector<std::int64_t>(flat.begin() + i * dim, flat.begin() + (i + 1) * dim), i);
    }
  }

  // Returns true when the key was new.
  bool insert(const std::vector<std::int64_t>& key, std::size_t value) {
    return map_.emplace(key, value).second;
  }

  std::optional<std::size_t> find(const std::vector<std::int64_t>& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::vector<std::int64_t>& key) const { return map_.count(key) != 0; }
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::unordered_map<std::vector<std::int64_t>, std::size_t, CellHash> map_;
};

}  // namespace pctopo::detail
