#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dialens {

using ObjId = std::uint32_t;

/// A morphism of a finite category, addressed by its hom-set and its
/// position inside that hom-set. Positions are dense: 0 <= index < |Hom(src,dst)|.
struct Arrow {
  ObjId src = 0;
  ObjId dst = 0;
  std::uint32_t index = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct ArrowHash {
  std::size_t operator()(const Arrow& a) const noexcept {
    std::uint64_t h = (std::uint64_t{a.src} << 40) ^ (std::uint64_t{a.dst} << 20) ^ a.index;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

std::string to_string(const Arrow& a);

// Errors. Every failure mode the CLI distinguishes has its own type.

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised whenever a construction over a finite-set skeleton would need a
/// set larger than the skeleton provides.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t size, std::size_t cap, const std::string& what);
  std::size_t size() const { return size_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// The base category lacks a limit the construction requires.
class UnsupportedBase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single failed law or structural defect with a concrete witness.
struct Violation {
  enum class Kind { kStructural, kLaw };
  Kind kind = Kind::kLaw;
  std::string law;
  std::string witness;
};

/// Empty iff everything checked holds.
struct LawReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has_structural() const;
  void law(std::string name, std::string witness);
  void structural(std::string name, std::string witness);
  void merge(const LawReport& other, const std::string& prefix = {});
};

/// Write-once slots, filled on first access. Safe to share between threads.
template <typename T>
class LazySlots {
 public:
  explicit LazySlots(std::size_t n = 0) : n_(n), slots_(n ? std::make_unique<Slot[]>(n) : nullptr) {}

  std::size_t size() const { return n_; }

  template <typename Fn>
  const T& get(std::size_t i, Fn&& make) const {
    Slot& s = slots_[i];
    std::call_once(s.flag, [&] { s.value = make(); });
    return s.value;
  }

 private:
  struct Slot {
    std::once_flag flag;
    T value{};
  };
  std::size_t n_;
  std::unique_ptr<Slot[]> slots_;
};

/// Mutex-guarded memo table for per-call caches keyed by arbitrary values.
template <typename Map>
class Memo {
 public:
  template <typename Key, typename Fn>
  typename Map::mapped_type get(const Key& key, Fn&& make) const {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto value = make();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::mutex mu_;
  mutable Map map_;
};

/// Per object pair cache. Sparse, so it scales to large object sets;
/// references stay valid for the cache's lifetime.
template <typename V>
class PairCache {
 public:
  template <typename Fn>
  const V& get(std::uint32_t a, std::uint32_t b, Fn&& make) const {
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return *it->second;
    }
    auto value = std::make_unique<V>(make());
    std::lock_guard lock(mu_);
    return *map_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<V>> map_;
};

}  // namespace dialens
