#pragma once

#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialens/core.hpp"

namespace dialens {

class FinCategory;
FinCategory opposite(const FinCategory& c);

/// Backing implementation of a finite category. Hom-sets are addressed
/// densely, so derived categories can compute them lazily.
class CategoryImpl {
 public:
  virtual ~CategoryImpl() = default;

  virtual std::size_t object_count() const = 0;
  virtual std::uint32_t hom_size(ObjId a, ObjId b) const = 0;
  virtual Arrow identity(ObjId a) const = 0;
  /// Diagrammatic composite f ⨟ g. Callers guarantee f.dst == g.src.
  virtual Arrow compose(const Arrow& f, const Arrow& g) const = 0;

  virtual std::string object_label(ObjId a) const { return std::to_string(a); }
  virtual std::string arrow_label(const Arrow& f) const;
  /// Defects in the raw presentation (only table categories have any).
  virtual std::vector<Violation> structural_errors() const { return {}; }

  /// identity(a), memoized per object for categories of moderate size.
  Arrow cached_identity(ObjId a) const;

 private:
  friend FinCategory opposite(const FinCategory& c);
  mutable std::once_flag ids_once_;
  mutable std::unique_ptr<LazySlots<Arrow>> ids_;
  mutable std::mutex op_mu_;
  mutable std::weak_ptr<const CategoryImpl> op_;
};

class FinCategory {
 public:
  FinCategory() = default;
  explicit FinCategory(std::shared_ptr<const CategoryImpl> impl) : impl_(std::move(impl)) {}

  std::size_t object_count() const { return impl_->object_count(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const;
  auto hom(ObjId a, ObjId b) const {
    return std::views::iota(std::uint32_t{0}, hom_size(a, b)) |
           std::views::transform([a, b](std::uint32_t i) { return Arrow{a, b, i}; });
  }
  auto objects() const { return std::views::iota(ObjId{0}, static_cast<ObjId>(object_count())); }

  Arrow identity(ObjId a) const;
  /// Throws StructuralError when dst(f) != src(g).
  Arrow compose(const Arrow& f, const Arrow& g) const;
  Arrow compose(std::initializer_list<Arrow> chain) const;
  bool is_identity(const Arrow& f) const { return f.src == f.dst && f == identity(f.src); }
  bool contains(const Arrow& f) const;

  std::uint64_t arrow_count() const;
  std::string object_label(ObjId a) const { return impl_->object_label(a); }
  std::string arrow_label(const Arrow& f) const { return impl_->arrow_label(f); }
  std::optional<ObjId> find_object(const std::string& label) const;

  template <typename Fn>
  void for_each_arrow(Fn&& fn) const {
    for (ObjId a : objects())
      for (ObjId b : objects())
        for (const Arrow& f : hom(a, b)) fn(f);
  }

  const CategoryImpl& impl() const { return *impl_; }
  const std::shared_ptr<const CategoryImpl>& impl_ptr() const { return impl_; }
  bool valid() const { return static_cast<bool>(impl_); }
  /// Identity of the underlying value (categories are immutable).
  bool same_as(const FinCategory& other) const { return impl_ == other.impl_; }

 private:
  std::shared_ptr<const CategoryImpl> impl_;
};

/// Label-level presentation of a category: the on-disk format.
struct CategoryTable {
  struct Morphism {
    std::string id, src, dst;
  };
  struct Entry {
    std::string f, g, result;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;
  std::vector<Entry> compose;
};

/// Builds a category from an explicit table. Unknown ids throw
/// StructuralError; law-level defects (missing or ill-typed composites)
/// are kept and surface in check_category.
FinCategory make_table_category(const CategoryTable& table);

/// Materializes every composite. Only sensible for small categories.
CategoryTable to_table(const FinCategory& c);
/// Morphism ids used by to_table: the arrow label, qualified by its
/// endpoints when the same label occurs in another hom-set.
std::unordered_map<Arrow, std::string, ArrowHash> arrow_ids(const FinCategory& c);

/// Subcategory on a subset of objects and the arrows accepted by `keep`.
/// `keep` must contain identities and be closed under composition.
FinCategory subcategory(const FinCategory& parent, std::vector<ObjId> objects,
                        std::function<bool(const Arrow&)> keep, std::string name = {});

/// Maps an arrow of a subcategory back to its parent.
Arrow subcategory_inclusion(const FinCategory& sub, const Arrow& f);
ObjId subcategory_object(const FinCategory& sub, ObjId a);
/// Local id of a parent object or arrow, if the subcategory contains it.
std::optional<ObjId> subcategory_local_object(const FinCategory& sub, ObjId parent_object);
std::optional<Arrow> subcategory_restrict(const FinCategory& sub, const Arrow& parent_arrow);

/// Canonical: repeated calls on the same category share one value, and
/// the opposite of an opposite is the original.
FinCategory opposite(const FinCategory& c);

/// Identity and associativity laws, plus structural defects.
LawReport check_category(const FinCategory& c);

/// Same objects, same hom sizes, same composites and identities.
bool categories_equal(const FinCategory& a, const FinCategory& b);

// Small named categories.
FinCategory discrete_category(std::vector<std::string> objects);
/// Poset category from a reflexive-transitive relation leq[i][j].
FinCategory poset_category(std::vector<std::string> objects, const std::vector<std::vector<bool>>& leq);
/// The walking arrow a -> b.
FinCategory walking_arrow();
/// The one-object category of a monoid given by its multiplication table.
/// Composite f ⨟ g is mult[g][f] (apply f first).
FinCategory monoid_category(const std::vector<std::vector<std::size_t>>& mult, std::size_t unit,
                            std::vector<std::string> labels = {});

}  // namespace dialens
