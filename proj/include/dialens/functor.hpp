#pragma once

#include <map>
#include <unordered_map>

#include "dialens/fincat.hpp"

namespace dialens {

class FunctorImpl {
 public:
  virtual ~FunctorImpl() = default;
  virtual ObjId map_object(ObjId a) const = 0;
  virtual Arrow map_arrow(const Arrow& f) const = 0;
  /// Arrows a -> b of the source mapped onto x, ascending by index.
  /// The default scans Hom(a, b); structured functors answer directly.
  virtual std::vector<Arrow> arrows_over(const FinCategory& source, ObjId a, ObjId b, const Arrow& x) const;
  /// True when arrows_over answers without scanning; otherwise FinFunctor
  /// buckets a whole hom-set on first use.
  virtual bool indexed() const { return false; }
  virtual std::vector<Violation> structural_errors() const { return {}; }
};

class FinFunctor {
 public:
  FinFunctor() = default;
  FinFunctor(FinCategory source, FinCategory target, std::shared_ptr<const FunctorImpl> impl);

  const FinCategory& source() const { return source_; }
  const FinCategory& target() const { return target_; }
  ObjId operator()(ObjId a) const { return impl_->map_object(a); }
  Arrow operator()(const Arrow& f) const { return impl_->map_arrow(f); }

  /// Objects of the source over x, ascending. Memoized.
  const std::vector<ObjId>& objects_over(ObjId x) const;
  /// Memoized arrows a -> b over x, ascending by index.
  const std::vector<Arrow>& arrows_over(ObjId a, ObjId b, const Arrow& x) const;
  /// Arrows a -> b over the identity of F(a) (requires F(a) == F(b)).
  const std::vector<Arrow>& vertical(ObjId a, ObjId b) const;
  bool is_vertical(const Arrow& f) const;
  /// Position of f in arrows_over(f.src, f.dst, F(f)).
  std::uint32_t position_over(const Arrow& f) const;

  const FunctorImpl& impl() const { return *impl_; }
  const std::shared_ptr<const FunctorImpl>& impl_ptr() const { return impl_; }
  bool valid() const { return static_cast<bool>(impl_); }
  bool same_as(const FinFunctor& o) const { return impl_ == o.impl_; }

 private:
  struct Cache;
  FinCategory source_, target_;
  std::shared_ptr<const FunctorImpl> impl_;
  std::shared_ptr<Cache> cache_;
};

/// Functor given by explicit maps (the on-disk format, and small programmatic ones).
struct FunctorTable {
  std::vector<ObjId> object_map;
  std::unordered_map<Arrow, Arrow, ArrowHash> arrow_map;
};
FinFunctor make_table_functor(FinCategory source, FinCategory target, FunctorTable table);
/// Materializes the maps of any functor.
FunctorTable to_table(const FinFunctor& f);

/// Functor from callables.
FinFunctor make_functor(FinCategory source, FinCategory target, std::function<ObjId(ObjId)> on_objects,
                        std::function<Arrow(const Arrow&)> on_arrows);

FinFunctor identity_functor(const FinCategory& c);
FinFunctor constant_functor(const FinCategory& source, const FinCategory& target, ObjId value);
/// Diagrammatic composite: apply f, then g.
FinFunctor compose(const FinFunctor& f, const FinFunctor& g);
/// The same functor between opposite categories.
FinFunctor opposite(const FinFunctor& f);

/// Preservation of src/dst, identities and all binary composites.
LawReport check_functor(const FinFunctor& f);

}  // namespace dialens
