#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace connsum {

/// Largest supported vertex count. Faces are stored as 64-bit masks; bit
/// (i - 1) represents vertex i.
inline constexpr int kMaxVertices = 63;

/// A finite subset of {1..m} stored as a bitmask.
class Face {
 public:
  constexpr Face() = default;
  constexpr explicit Face(std::uint64_t bits) : bits_(bits) {}

  /// Builds a face from 1-based vertex labels.
  static Face of(std::initializer_list<int> vertices);
  static Face of(const std::vector<int>& vertices);
  static constexpr Face vertex(int v) { return Face(std::uint64_t{1} << (v - 1)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  /// Dimension |σ| - 1; the empty face has dimension -1.
  constexpr int dim() const { return size() - 1; }
  constexpr bool contains(int v) const { return (bits_ >> (v - 1)) & 1U; }
  constexpr bool subset_of(Face other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(Face other) const { return (bits_ & other.bits_) == 0; }
  /// Highest vertex label present, 0 for the empty face.
  constexpr int max_vertex() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }

  constexpr Face operator|(Face o) const { return Face(bits_ | o.bits_); }
  constexpr Face operator&(Face o) const { return Face(bits_ & o.bits_); }
  constexpr Face minus(Face o) const { return Face(bits_ & ~o.bits_); }

  /// Vertex labels in increasing order.
  std::vector<int> vertices() const;
  /// "{1,4}" style rendering; "{}" for the empty face.
  std::string to_string() const;

  friend constexpr bool operator==(Face, Face) = default;
  friend constexpr auto operator<=>(Face a, Face b) {
    // Order by size first, then by mask, so sorted face lists read naturally.
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Mask with all vertices 1..m set.
constexpr Face full_face(int m) {
  return Face(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
}

/// Calls fn on every subset of `face` (including the empty set and `face`).
template <typename Fn>
void for_each_subset(Face face, Fn&& fn) {
  const std::uint64_t bits = face.bits();
  std::uint64_t sub = bits;
  while (true) {
    fn(Face(sub));
    if (sub == 0) break;
    sub = (sub - 1) & bits;
  }
}

}  // namespace connsum

template <>
struct std::hash<connsum::Face> {
  std::size_t operator()(connsum::Face f) const noexcept { return std::hash<std::uint64_t>{}(f.bits()); }
};
