#include "dialens/functor.hpp"

#include <algorithm>

namespace dialens {

std::vector<Arrow> FunctorImpl::arrows_over(const FinCategory& source, ObjId a, ObjId b, const Arrow& x) const {
  std::vector<Arrow> out;
  for (const Arrow& f : source.hom(a, b))
    if (map_arrow(f) == x) out.push_back(f);
  return out;
}

struct FinFunctor::Cache {
  explicit Cache(std::size_t target_objects) : objects_over(target_objects) {}
  LazySlots<std::vector<ObjId>> objects_over;
  std::mutex mu;
  std::unordered_map<Arrow, std::unique_ptr<std::vector<Arrow>>, ArrowHash> over;  // key: (a, b, x.index)
  PairCache<std::unordered_map<std::uint32_t, std::vector<Arrow>>> buckets;
};

FinFunctor::FinFunctor(FinCategory source, FinCategory target, std::shared_ptr<const FunctorImpl> impl)
    : source_(std::move(source)),
      target_(std::move(target)),
      impl_(std::move(impl)),
      cache_(std::make_shared<Cache>(target_.object_count())) {}

const std::vector<ObjId>& FinFunctor::objects_over(ObjId x) const {
  return cache_->objects_over.get(x, [&] {
    std::vector<ObjId> out;
    for (ObjId a : source_.objects())
      if (impl_->map_object(a) == x) out.push_back(a);
    return out;
  });
}

const std::vector<Arrow>& FinFunctor::arrows_over(ObjId a, ObjId b, const Arrow& x) const {
  if (!impl_->indexed()) {
    const auto& buckets = cache_->buckets.get(a, b, [&] {
      std::unordered_map<std::uint32_t, std::vector<Arrow>> out;
      for (const Arrow& f : source_.hom(a, b)) out[impl_->map_arrow(f).index].push_back(f);
      return out;
    });
    static const std::vector<Arrow> empty;
    auto it = buckets.find(x.index);
    return it == buckets.end() ? empty : it->second;
  }
  // Hom(F a, F b) is fixed by (a, b), so (a, b, x.index) identifies the query.
  const Arrow key{a, b, x.index};
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->over.find(key);
    if (it != cache_->over.end()) return *it->second;
  }
  auto list = std::make_unique<std::vector<Arrow>>(impl_->arrows_over(source_, a, b, x));
  std::lock_guard lock(cache_->mu);
  auto [it, inserted] = cache_->over.emplace(key, std::move(list));
  return *it->second;
}

const std::vector<Arrow>& FinFunctor::vertical(ObjId a, ObjId b) const {
  const ObjId x = impl_->map_object(a);
  if (impl_->map_object(b) != x) {
    static const std::vector<Arrow> empty;
    return empty;
  }
  return arrows_over(a, b, target_.identity(x));
}

bool FinFunctor::is_vertical(const Arrow& f) const { return target_.is_identity(impl_->map_arrow(f)); }

std::uint32_t FinFunctor::position_over(const Arrow& f) const {
  const auto& l = arrows_over(f.src, f.dst, impl_->map_arrow(f));
  auto it = std::lower_bound(l.begin(), l.end(), f);
  if (it == l.end() || *it != f) throw StructuralError("arrow not found over its image");
  return static_cast<std::uint32_t>(it - l.begin());
}

namespace {

class TableFunctor final : public FunctorImpl {
 public:
  TableFunctor(const FinCategory& source, const FinCategory& target, FunctorTable t) : t_(std::move(t)) {
    if (t_.object_map.size() != source.object_count())
      defects_.push_back({Violation::Kind::kStructural, "object map", "object map is not total"});
    for (ObjId o : t_.object_map)
      if (o >= target.object_count())
        defects_.push_back({Violation::Kind::kStructural, "object map", "image outside target"});
    source.for_each_arrow([&](const Arrow& f) {
      auto it = t_.arrow_map.find(f);
      if (it == t_.arrow_map.end())
        defects_.push_back({Violation::Kind::kStructural, "morphism map", "no image for " + source.arrow_label(f)});
      else if (!target.contains(it->second))
        defects_.push_back({Violation::Kind::kStructural, "morphism map",
                            "image of " + source.arrow_label(f) + " lands outside target"});
    });
  }
  ObjId map_object(ObjId a) const override { return t_.object_map.at(a); }
  Arrow map_arrow(const Arrow& f) const override {
    auto it = t_.arrow_map.find(f);
    if (it == t_.arrow_map.end()) throw StructuralError("functor undefined on arrow " + to_string(f));
    return it->second;
  }
  std::vector<Violation> structural_errors() const override { return defects_; }

 private:
  FunctorTable t_;
  std::vector<Violation> defects_;
};

class LambdaFunctor final : public FunctorImpl {
 public:
  LambdaFunctor(std::function<ObjId(ObjId)> o, std::function<Arrow(const Arrow&)> a)
      : o_(std::move(o)), a_(std::move(a)) {}
  ObjId map_object(ObjId x) const override { return o_(x); }
  Arrow map_arrow(const Arrow& f) const override { return a_(f); }

 private:
  std::function<ObjId(ObjId)> o_;
  std::function<Arrow(const Arrow&)> a_;
};

class Composite final : public FunctorImpl {
 public:
  Composite(FinFunctor f, FinFunctor g) : f_(std::move(f)), g_(std::move(g)) {}
  ObjId map_object(ObjId a) const override { return g_(f_(a)); }
  Arrow map_arrow(const Arrow& x) const override { return g_(f_(x)); }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& x) const override {
    std::vector<Arrow> out;
    for (const Arrow& y : g_.arrows_over(f_(a), f_(b), x)) {
      const auto& l = f_.arrows_over(a, b, y);
      out.insert(out.end(), l.begin(), l.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FinFunctor f_, g_;
};

class OppositeFunctor final : public FunctorImpl {
 public:
  explicit OppositeFunctor(FinFunctor f) : f_(std::move(f)) {}
  ObjId map_object(ObjId a) const override { return f_(a); }
  Arrow map_arrow(const Arrow& x) const override { return flip(f_(flip(x))); }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& x) const override {
    std::vector<Arrow> out;
    for (const Arrow& y : f_.arrows_over(b, a, flip(x))) out.push_back(flip(y));
    return out;
  }

 private:
  static Arrow flip(const Arrow& f) { return {f.dst, f.src, f.index}; }
  FinFunctor f_;
};

}  // namespace

FinFunctor make_table_functor(FinCategory source, FinCategory target, FunctorTable table) {
  auto impl = std::make_shared<TableFunctor>(source, target, std::move(table));
  return FinFunctor(std::move(source), std::move(target), std::move(impl));
}

FunctorTable to_table(const FinFunctor& f) {
  FunctorTable t;
  for (ObjId a : f.source().objects()) t.object_map.push_back(f(a));
  f.source().for_each_arrow([&](const Arrow& x) { t.arrow_map.emplace(x, f(x)); });
  return t;
}

FinFunctor make_functor(FinCategory source, FinCategory target, std::function<ObjId(ObjId)> on_objects,
                        std::function<Arrow(const Arrow&)> on_arrows) {
  return FinFunctor(std::move(source), std::move(target),
                    std::make_shared<LambdaFunctor>(std::move(on_objects), std::move(on_arrows)));
}

FinFunctor identity_functor(const FinCategory& c) {
  return make_functor(c, c, [](ObjId a) { return a; }, [](const Arrow& f) { return f; });
}

FinFunctor constant_functor(const FinCategory& source, const FinCategory& target, ObjId value) {
  const Arrow id = target.identity(value);
  return make_functor(source, target, [value](ObjId) { return value; }, [id](const Arrow&) { return id; });
}

FinFunctor compose(const FinFunctor& f, const FinFunctor& g) {
  if (!f.target().same_as(g.source())) throw StructuralError("functor composite: mismatched categories");
  return FinFunctor(f.source(), g.target(), std::make_shared<Composite>(f, g));
}

FinFunctor opposite(const FinFunctor& f) {
  return FinFunctor(opposite(f.source()), opposite(f.target()), std::make_shared<OppositeFunctor>(f));
}

LawReport check_functor(const FinFunctor& F) {
  LawReport report;
  for (auto& v : F.impl().structural_errors()) report.violations.push_back(v);
  if (report.has_structural()) return report;
  const auto& S = F.source();
  const auto& T = F.target();
  try {
    for (ObjId a : S.objects()) {
      if (F(a) >= T.object_count()) {
        report.structural("object map", "image of " + S.object_label(a) + " outside target");
        return report;
      }
      if (F(S.identity(a)) != T.identity(F(a)))
        report.law("preserves identities", "at " + S.object_label(a));
    }
    std::unordered_map<Arrow, Arrow, ArrowHash> image;
    S.for_each_arrow([&](const Arrow& f) {
      const Arrow Ff = F(f);
      if (!T.contains(Ff) || Ff.src != F(f.src) || Ff.dst != F(f.dst))
        report.structural("morphism map", "image of " + S.arrow_label(f) + " has wrong endpoints");
      image.emplace(f, Ff);
    });
    if (report.has_structural()) return report;
    S.for_each_arrow([&](const Arrow& f) {
      const Arrow Ff = image.at(f);
      for (ObjId c : S.objects())
        for (const Arrow& g : S.hom(f.dst, c))
          if (image.at(S.compose(f, g)) != T.compose(Ff, image.at(g)))
            report.law("preserves composition", S.arrow_label(f) + " ; " + S.arrow_label(g));
    });
  } catch (const StructuralError& e) {
    report.structural("functor", e.what());
  }
  return report;
}

}  // namespace dialens
