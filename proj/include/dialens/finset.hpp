#pragma once

#include <array>

#include "dialens/fincat.hpp"

namespace dialens {

/// A function {0..dom-1} -> {0..cod-1} as an explicit image table.
struct FnTable {
  static constexpr std::size_t kMaxDomain = 32;
  std::uint32_t dom = 0;
  std::uint32_t cod = 0;
  std::array<std::uint8_t, kMaxDomain> img{};

  std::uint8_t operator()(std::size_t i) const { return img[i]; }
  friend bool operator==(const FnTable& a, const FnTable& b) {
    if (a.dom != b.dom || a.cod != b.cod) return false;
    for (std::size_t i = 0; i < a.dom; ++i)
      if (a.img[i] != b.img[i]) return false;
    return true;
  }
  bool injective() const;
  std::string str() const;
};

/// n^m with 0^0 = 1; throws CapExceeded past 2^32 - 1.
std::uint32_t checked_pow(std::uint64_t base, std::uint64_t exp);

/// Mixed-radix codec: digit i of the code is the image of i.
FnTable decode_fn(std::uint32_t code, std::uint32_t dom, std::uint32_t cod);
std::uint32_t encode_fn(const FnTable& f);
FnTable identity_fn(std::uint32_t n);
/// Diagrammatic: apply f then g.
FnTable compose_fn(const FnTable& f, const FnTable& g);

/// The skeleton F-cap: objects 0..cap standing for {0..n-1}, all functions.
FinCategory finset(std::size_t cap);
/// Cap of a FinSet skeleton, or nullopt for any other category.
std::optional<std::size_t> finset_cap(const FinCategory& c);
FnTable as_fn(const Arrow& f);
Arrow fn_arrow(const FnTable& f);

/// Finite sets of size <= cap with injections.
FinCategory finset_injections(std::size_t cap);

}  // namespace dialens
