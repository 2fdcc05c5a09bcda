#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace mixpack {

/// Fixed-capacity set of small non-negative indices, stored as a 64-bit mask.
///
/// Used for vertex sets and root-index sets. The tag parameter keeps the two
/// from being mixed up at compile time.
template <class Tag>
class IndexSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::size_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr IndexSet() = default;

  static constexpr IndexSet from_bits(std::uint64_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }
  static constexpr IndexSet single(std::size_t i) { return from_bits(std::uint64_t{1} << i); }
  /// {0, 1, ..., n-1}
  static constexpr IndexSet prefix(std::size_t n) {
    return from_bits(n >= kCapacity ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  template <class Range>
  static IndexSet of(const Range& items) {
    IndexSet s;
    for (auto i : items) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return i < kCapacity && ((bits_ >> i) & 1U) != 0; }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }
  constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(IndexSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<std::size_t> to_vector() const { return {begin(), end()}; }

  constexpr IndexSet operator|(IndexSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr IndexSet operator-(IndexSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr IndexSet& operator|=(IndexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr IndexSet& operator&=(IndexSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr IndexSet& operator-=(IndexSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr bool operator==(const IndexSet&) const = default;
  constexpr auto operator<=>(const IndexSet& o) const { return bits_ <=> o.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

struct VertexTag {};
struct RootTag {};

using VertexSet = IndexSet<VertexTag>;
using RootSet = IndexSet<RootTag>;

/// Visits every subset of `s`, the empty set included, in ascending mask order.
template <class Tag, class Fn>
void for_each_subset(IndexSet<Tag> s, Fn&& fn) {
  const std::uint64_t all = s.bits();
  std::uint64_t sub = 0;
  do {
    fn(IndexSet<Tag>::from_bits(sub));
    sub = (sub - all) & all;
  } while (sub != 0);
}

/// Number of subsets of a set with `n` elements; callers bound `n` first.
constexpr std::uint64_t subset_count(std::size_t n) { return std::uint64_t{1} << n; }

}  // namespace mixpack
