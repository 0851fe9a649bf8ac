#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

namespace survsim {

/// Mission-wide dense index of a data item (assigned in creation order).
using ItemId = std::uint32_t;

/// Growable bitset over ItemIds. Per-robot storage is kept this way because a
/// dense network can end up with tens of thousands of items on every robot.
class ItemSet {
 public:
  /// Returns true if the id was not present before.
  bool insert(ItemId id) {
    const std::size_t word = id >> 6;
    if (word >= words_.size()) words_.resize(word + 1, 0);
    const std::uint64_t mask = std::uint64_t{1} << (id & 63);
    if (words_[word] & mask) return false;
    words_[word] |= mask;
    ++size_;
    return true;
  }

  bool contains(ItemId id) const {
    const std::size_t word = id >> 6;
    return word < words_.size() && (words_[word] >> (id & 63)) & 1;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        fn(static_cast<ItemId>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const ItemSet& a, const ItemSet& b) {
    if (a.size_ != b.size_) return false;
    const auto& small = a.words_.size() < b.words_.size() ? a.words_ : b.words_;
    const auto& large = a.words_.size() < b.words_.size() ? b.words_ : a.words_;
    for (std::size_t i = 0; i < large.size(); ++i) {
      const std::uint64_t s = i < small.size() ? small[i] : 0;
      if (s != large[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Repository index advertised in a HELLO. Either a short window of recent
/// ids or a snapshot of the whole local storage.
class RepoDigest {
 public:
  static std::shared_ptr<const RepoDigest> window(std::vector<ItemId> ids) {
    auto d = std::make_shared<RepoDigest>();
    d->recent_ = std::move(ids);
    return d;
  }
  static std::shared_ptr<const RepoDigest> full(ItemSet snapshot) {
    auto d = std::make_shared<RepoDigest>();
    d->full_ = std::move(snapshot);
    d->is_full_ = true;
    return d;
  }

  bool contains(ItemId id) const {
    if (is_full_) return full_.contains(id);
    for (ItemId r : recent_)
      if (r == id) return true;
    return false;
  }

  std::size_t size() const { return is_full_ ? full_.size() : recent_.size(); }
  bool is_full() const { return is_full_; }
  const std::vector<ItemId>& recent() const { return recent_; }

 private:
  std::vector<ItemId> recent_;
  ItemSet full_;
  bool is_full_ = false;
};

}  // namespace survsim
