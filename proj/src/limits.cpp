#include "dialens/limits.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "dialens/finset.hpp"

namespace dialens {

namespace {

bool cone_commutes(const FinCategory& c, LimitShape shape, const LimitDiagram& d, const std::vector<Arrow>& legs) {
  if (shape != LimitShape::kPullback) return true;
  return c.compose(legs[0], d.arrows[0]) == c.compose(legs[1], d.arrows[1]);
}

std::vector<ObjId> diagram_objects(LimitShape shape, const LimitDiagram& d) {
  switch (shape) {
    case LimitShape::kTerminal:
      return {};
    case LimitShape::kProduct:
      return {d.objects.at(0), d.objects.at(1)};
    case LimitShape::kPullback:
      return {d.arrows.at(0).src, d.arrows.at(1).src};
  }
  return {};
}

/// All cones from apex w, as leg tuples.
template <typename Fn>
void for_each_cone(const FinCategory& c, LimitShape shape, const LimitDiagram& d, ObjId w, Fn&& fn) {
  auto objs = diagram_objects(shape, d);
  if (objs.empty()) {
    fn(std::vector<Arrow>{});
    return;
  }
  for (const Arrow& p : c.hom(w, objs[0]))
    for (const Arrow& q : c.hom(w, objs[1])) {
      std::vector<Arrow> legs{p, q};
      if (cone_commutes(c, shape, d, legs)) fn(legs);
    }
}

}  // namespace

bool is_limit(const FinCategory& c, LimitShape shape, const LimitDiagram& d, const Cone& cone) {
  if (!cone_commutes(c, shape, d, cone.legs)) return false;
  for (ObjId w : c.objects()) {
    // m |-> (m ⨟ legs) must be a bijection Hom(w, apex) -> cones from w.
    std::set<std::vector<Arrow>> images;
    for (const Arrow& m : c.hom(w, cone.apex)) {
      std::vector<Arrow> legs;
      for (const Arrow& l : cone.legs) legs.push_back(c.compose(m, l));
      if (!images.insert(legs).second) return false;
    }
    std::size_t cones = 0;
    for_each_cone(c, shape, d, w, [&](const std::vector<Arrow>&) { ++cones; });
    if (cones != images.size()) return false;
  }
  return true;
}

std::optional<Cone> limit_search_exhaustive(const FinCategory& c, LimitShape shape, const LimitDiagram& d) {
  for (ObjId z : c.objects()) {
    std::optional<Cone> found;
    for_each_cone(c, shape, d, z, [&](const std::vector<Arrow>& legs) {
      if (found) return;
      Cone cone{z, legs};
      if (is_limit(c, shape, d, cone)) found = cone;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<Cone> limit_search(const FinCategory& c, LimitShape shape, const LimitDiagram& d) {
  auto cap = finset_cap(c);
  if (!cap) return limit_search_exhaustive(c, shape, d);
  switch (shape) {
    case LimitShape::kTerminal:
      if (*cap < 1) return std::nullopt;
      return Cone{1, {}};
    case LimitShape::kProduct: {
      const std::uint32_t m = d.objects.at(0), n = d.objects.at(1);
      if (m * n > *cap) throw CapExceeded(m * n, *cap, "product");
      FnTable p, q;
      p.dom = q.dom = m * n;
      p.cod = m;
      q.cod = n;
      for (std::uint32_t i = 0; i < m * n; ++i) {
        p.img[i] = static_cast<std::uint8_t>(i / n);
        q.img[i] = static_cast<std::uint8_t>(i % n);
      }
      return Cone{m * n, {fn_arrow(p), fn_arrow(q)}};
    }
    case LimitShape::kPullback: {
      const FnTable f = as_fn(d.arrows.at(0)), g = as_fn(d.arrows.at(1));
      // Canonical subset of A x B in lexicographic order, re-indexed 0..k-1.
      std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
      for (std::uint32_t a = 0; a < f.dom; ++a)
        for (std::uint32_t b = 0; b < g.dom; ++b)
          if (f(a) == g(b)) pairs.emplace_back(a, b);
      if (pairs.size() > *cap) throw CapExceeded(pairs.size(), *cap, "pullback apex");
      FnTable p, q;
      p.dom = q.dom = static_cast<std::uint32_t>(pairs.size());
      p.cod = f.dom;
      q.cod = g.dom;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        p.img[i] = pairs[i].first;
        q.img[i] = pairs[i].second;
      }
      return Cone{p.dom, {fn_arrow(p), fn_arrow(q)}};
    }
  }
  return std::nullopt;
}

std::optional<Cone> pullback(const FinCategory& c, const Arrow& f, const Arrow& g) {
  return limit_search(c, LimitShape::kPullback, {{}, {f, g}});
}

bool has_all_pullbacks(const FinCategory& c) {
  bool ok = true;
  try {
    for (ObjId x : c.objects())
      for (ObjId a : c.objects())
        for (ObjId b : c.objects())
          for (const Arrow& f : c.hom(a, x))
            for (const Arrow& g : c.hom(b, x))
              if (!pullback(c, f, g)) return false;
  } catch (const CapExceeded&) {
    ok = false;
  }
  return ok;
}

bool is_mono(const FinCategory& c, const Arrow& f) {
  for (ObjId z : c.objects()) {
    std::set<Arrow> images;
    for (const Arrow& x : c.hom(z, f.src))
      if (!images.insert(c.compose(x, f)).second) return false;
  }
  return true;
}

std::optional<Arrow> inverse(const FinCategory& c, const Arrow& f) {
  for (const Arrow& g : c.hom(f.dst, f.src))
    if (c.is_identity(c.compose(f, g)) && c.is_identity(c.compose(g, f))) return g;
  return std::nullopt;
}

bool is_iso(const FinCategory& c, const Arrow& f) { return inverse(c, f).has_value(); }

std::optional<Arrow> factor_through(const FinCategory& c, const Arrow& target, const Arrow& through) {
  if (target.dst != through.dst) return std::nullopt;
  for (const Arrow& k : c.hom(target.src, through.src))
    if (c.compose(k, through) == target) return k;
  return std::nullopt;
}

std::optional<std::size_t> SubobjectPoset::class_of(const Arrow& mono) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::find(classes[i].members.begin(), classes[i].members.end(), mono) != classes[i].members.end())
      return i;
  return std::nullopt;
}

SubobjectPoset subobject_poset(const FinCategory& c, ObjId a) {
  SubobjectPoset poset;
  poset.carrier = a;
  for (ObjId b : c.objects())
    for (const Arrow& m : c.hom(b, a)) {
      if (!is_mono(c, m)) continue;
      bool placed = false;
      for (auto& cls : poset.classes) {
        const Arrow& r = cls.representative;
        if (factor_through(c, m, r) && factor_through(c, r, m)) {
          cls.members.push_back(m);
          placed = true;
          break;
        }
      }
      if (!placed) poset.classes.push_back({a, m, {m}});
    }
  const std::size_t n = poset.classes.size();
  poset.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      poset.leq[i][j] = factor_through(c, poset.classes[i].representative, poset.classes[j].representative).has_value();
  return poset;
}

// ---------------------------------------------------------------------------
// Arrow category

namespace {

class ArrowCategoryImpl final : public CategoryImpl {
 public:
  explicit ArrowCategoryImpl(FinCategory base) : base_(std::move(base)) {
    base_.for_each_arrow([&](const Arrow& f) {
      index_.emplace(f, static_cast<ObjId>(arrows_.size()));
      arrows_.push_back(f);
    });
  }

  std::size_t object_count() const override { return arrows_.size(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override {
    return static_cast<std::uint32_t>(squares(a, b).size());
  }
  Arrow identity(ObjId a) const override {
    return square(a, a, base_.identity(arrows_[a].src), base_.identity(arrows_[a].dst));
  }
  Arrow compose(const Arrow& s, const Arrow& t) const override {
    auto [x1, y1] = edges(s);
    auto [x2, y2] = edges(t);
    return square(s.src, t.dst, base_.compose(x1, x2), base_.compose(y1, y2));
  }
  std::string object_label(ObjId a) const override { return base_.arrow_label(arrows_[a]); }
  std::string arrow_label(const Arrow& s) const override {
    auto [x, y] = edges(s);
    return "[" + base_.arrow_label(x) + " | " + base_.arrow_label(y) + "]";
  }

  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& squares(ObjId a, ObjId b) const {
    return squares_.get(a, b, [&] {
      const Arrow& f = arrows_[a];
      const Arrow& g = arrows_[b];
      std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
      for (const Arrow& x : base_.hom(f.src, g.src)) {
        const Arrow xg = base_.compose(x, g);
        for (const Arrow& y : base_.hom(f.dst, g.dst))
          if (base_.compose(f, y) == xg) out.emplace_back(x.index, y.index);
      }
      return out;
    });
  }
  std::pair<Arrow, Arrow> edges(const Arrow& s) const {
    const Arrow& f = arrows_[s.src];
    const Arrow& g = arrows_[s.dst];
    auto [x, y] = squares(s.src, s.dst)[s.index];
    return {Arrow{f.src, g.src, x}, Arrow{f.dst, g.dst, y}};
  }
  Arrow square(ObjId a, ObjId b, const Arrow& x, const Arrow& y) const {
    const auto& l = squares(a, b);
    auto it = std::lower_bound(l.begin(), l.end(), std::make_pair(x.index, y.index));
    if (it == l.end() || *it != std::make_pair(x.index, y.index))
      throw StructuralError("square does not commute: " + base_.arrow_label(x) + ", " + base_.arrow_label(y));
    return {a, b, static_cast<std::uint32_t>(it - l.begin())};
  }
  const Arrow& arrow(ObjId a) const { return arrows_[a]; }
  ObjId object(const Arrow& f) const { return index_.at(f); }
  const FinCategory& base() const { return base_; }

 private:
  FinCategory base_;
  std::vector<Arrow> arrows_;
  std::unordered_map<Arrow, ObjId, ArrowHash> index_;
  PairCache<std::vector<std::pair<std::uint32_t, std::uint32_t>>> squares_;
};

const ArrowCategoryImpl& arrow_impl(const FinCategory& c) {
  auto* impl = dynamic_cast<const ArrowCategoryImpl*>(&c.impl());
  if (!impl) throw StructuralError("not an arrow category");
  return *impl;
}

class ProjectionDom final : public FunctorImpl {
 public:
  explicit ProjectionDom(const ArrowCategoryImpl* c) : c_(c) {}
  ObjId map_object(ObjId a) const override { return c_->arrow(a).src; }
  Arrow map_arrow(const Arrow& s) const override { return c_->edges(s).first; }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& x) const override {
    const auto& l = c_->squares(a, b);
    auto lo = std::lower_bound(l.begin(), l.end(), std::make_pair(x.index, std::uint32_t{0}));
    std::vector<Arrow> out;
    for (auto it = lo; it != l.end() && it->first == x.index; ++it)
      out.push_back({a, b, static_cast<std::uint32_t>(it - l.begin())});
    return out;
  }

 private:
  const ArrowCategoryImpl* c_;
};

class ProjectionCod final : public FunctorImpl {
 public:
  explicit ProjectionCod(const ArrowCategoryImpl* c) : c_(c) {}
  ObjId map_object(ObjId a) const override { return c_->arrow(a).dst; }
  Arrow map_arrow(const Arrow& s) const override { return c_->edges(s).second; }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& y) const override {
    const auto& l = c_->squares(a, b);
    std::vector<Arrow> out;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i].second == y.index) out.push_back({a, b, static_cast<std::uint32_t>(i)});
    return out;
  }

 private:
  const ArrowCategoryImpl* c_;
};

}  // namespace

ArrowCategory arrow_category(const FinCategory& c) {
  auto impl = std::make_shared<ArrowCategoryImpl>(c);
  const ArrowCategoryImpl* raw = impl.get();
  FinCategory cat(impl);
  return {cat, FinFunctor(cat, c, std::make_shared<ProjectionDom>(raw)),
          FinFunctor(cat, c, std::make_shared<ProjectionCod>(raw))};
}

Arrow arrow_of(const FinCategory& arrow_cat, ObjId object) { return arrow_impl(arrow_cat).arrow(object); }
ObjId object_of(const FinCategory& arrow_cat, const Arrow& f) { return arrow_impl(arrow_cat).object(f); }
std::pair<Arrow, Arrow> square_edges(const FinCategory& arrow_cat, const Arrow& s) {
  return arrow_impl(arrow_cat).edges(s);
}
Arrow make_square(const FinCategory& arrow_cat, ObjId from, ObjId to, const Arrow& top, const Arrow& bottom) {
  return arrow_impl(arrow_cat).square(from, to, top, bottom);
}
const FinCategory& arrow_category_base(const FinCategory& arrow_cat) { return arrow_impl(arrow_cat).base(); }

}  // namespace dialens
