#include "dialens/dual.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace dialens {

namespace {

class DualCategory final : public CategoryImpl {
 public:
  explicit DualCategory(ClovenFibration f) : f_(std::move(f)) {}

  std::size_t object_count() const override { return f_.total().object_count(); }
  std::uint32_t hom_size(ObjId e, ObjId d) const override { return prefix(e, d).back(); }
  Arrow identity(ObjId e) const override {
    return encode(e, e, {base().identity(f_(e)), total().identity(e)});
  }
  Arrow compose(const Arrow& a, const Arrow& b) const override {
    const DualMorphism m1 = decode(a);
    const DualMorphism m2 = decode(b);
    const Arrow& f = m1.base;
    const Arrow& g = m2.base;
    const ObjId B = b.dst;
    const Arrow c = comparison(f, g, B);
    const Arrow k = reindex_vertical(f, m2.backward);
    const FinCategory& E = total();
    return encode(a.src, b.dst, {base().compose(f, g), E.compose(E.compose(c, k), m1.backward)});
  }
  std::string object_label(ObjId e) const override { return total().object_label(e); }
  std::string arrow_label(const Arrow& a) const override {
    const DualMorphism m = decode(a);
    return "<" + total().arrow_label(m.backward) + " | " + base().arrow_label(m.base) + ">";
  }

  const ClovenFibration& fibration() const { return f_; }
  const FinCategory& total() const { return f_.total(); }
  const FinCategory& base() const { return f_.base(); }

  /// pre[i]: arrows over the first i base arrows P(e) -> P(d); parts[i]:
  /// the backward parts over base arrow i.
  struct HomIndex {
    std::vector<std::uint32_t> pre;
    std::vector<const std::vector<Arrow>*> parts;
  };
  const HomIndex& index(ObjId e, ObjId d) const {
    return index_.get(e, d, [&] {
      HomIndex out;
      out.pre.push_back(0);
      std::uint64_t total = 0;
      for (const Arrow& f : base().hom(f_(e), f_(d))) {
        out.parts.push_back(&backward_parts(f, e, d));
        total += out.parts.back()->size();
        if (total > 0xffffffffULL) throw CapExceeded(total, 0xffffffffULL, "dual hom-set");
        out.pre.push_back(static_cast<std::uint32_t>(total));
      }
      return out;
    });
  }
  const std::vector<std::uint32_t>& prefix(ObjId e, ObjId d) const { return index(e, d).pre; }
  const std::vector<Arrow>& backward_parts(const Arrow& f, ObjId e, ObjId d) const {
    return f_.functor().vertical(f_.reindex(f, d), e);
  }
  DualMorphism decode(const Arrow& a) const {
    const HomIndex& h = index(a.src, a.dst);
    auto it = std::upper_bound(h.pre.begin(), h.pre.end(), a.index);
    const std::uint32_t fi = static_cast<std::uint32_t>(it - h.pre.begin()) - 1;
    return {Arrow{f_(a.src), f_(a.dst), fi}, (*h.parts[fi])[a.index - h.pre[fi]]};
  }
  Arrow encode(ObjId e, ObjId d, const DualMorphism& m) const {
    const HomIndex& h = index(e, d);
    const auto& parts = *h.parts.at(m.base.index);
    auto it = std::lower_bound(parts.begin(), parts.end(), m.backward);
    if (it == parts.end() || *it != m.backward)
      throw StructuralError("dual: " + total().arrow_label(m.backward) + " is not a backward part over " +
                            base().arrow_label(m.base));
    return {e, d, h.pre[m.base.index] + static_cast<std::uint32_t>(it - parts.begin())};
  }

  /// (f;g)*B -> f*(g*B), the vertical iso comparing chosen lifts.
  Arrow comparison(const Arrow& f, const Arrow& g, ObjId B) const {
    return comparisons_.get(std::make_tuple(f, g, B), [&] {
      const FinCategory& E = total();
      const Arrow lg = f_.lift(g, B);
      const Arrow two = E.compose(f_.lift(f, lg.src), lg);
      const Arrow one = f_.lift(base().compose(f, g), B);
      if (one == two) return E.identity(one.src);
      auto c = vertical_factor(f_.functor(), one, two);
      if (!c) throw StructuralError("dual: chosen lifts are not cartesian");
      return *c;
    });
  }
  /// f*(t): the vertical k with k ⨟ lift(f, D) = lift(f, src t) ⨟ t.
  Arrow reindex_vertical(const Arrow& f, const Arrow& t) const {
    return reindexed_.get(std::make_pair(f, t), [&] {
      const FinCategory& E = total();
      const Arrow lt = f_.lift(f, t.src);
      if (t == E.identity(t.src)) return E.identity(lt.src);
      auto k = vertical_factor(f_.functor(), E.compose(lt, t), f_.lift(f, t.dst));
      if (!k) throw StructuralError("dual: chosen lifts are not cartesian");
      return *k;
    });
  }

 private:
  ClovenFibration f_;
  PairCache<HomIndex> index_;
  Memo<std::map<std::tuple<Arrow, Arrow, ObjId>, Arrow>> comparisons_;
  Memo<std::map<std::pair<Arrow, Arrow>, Arrow>> reindexed_;
};

const DualCategory* dual_impl_or_null(const FinCategory& c) { return dynamic_cast<const DualCategory*>(&c.impl()); }

const DualCategory& dual_impl(const FinCategory& c) {
  auto* d = dual_impl_or_null(c);
  if (!d) throw StructuralError("not a dual category");
  return *d;
}

class DualProjection final : public FunctorImpl {
 public:
  explicit DualProjection(const DualCategory* c) : c_(c) {}
  ObjId map_object(ObjId e) const override { return c_->fibration()(e); }
  Arrow map_arrow(const Arrow& a) const override { return c_->decode(a).base; }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId e, ObjId d, const Arrow& f) const override {
    const auto& pre = c_->prefix(e, d);
    std::vector<Arrow> out;
    for (std::uint32_t i = pre[f.index]; i < pre[f.index + 1]; ++i) out.push_back({e, d, i});
    return out;
  }

 private:
  const DualCategory* c_;
};

}  // namespace

ClovenFibration dual_fibration(const ClovenFibration& f, bool verify) {
  if (verify) {
    LawReport r = check_fibration(f);
    if (!r.ok()) throw StructuralError("dual_fibration: input is not a fibration (" + r.violations.front().law + ")");
  }
  auto impl = std::make_shared<DualCategory>(f);
  const DualCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor p(total, f.base(), std::make_shared<DualProjection>(raw));
  auto lift = [raw](const Arrow& g, ObjId d) {
    const ObjId src = raw->fibration().reindex(g, d);
    return raw->encode(src, d, {g, raw->total().identity(src)});
  };
  return ClovenFibration(p, make_cleavage(lift));
}

bool is_dual(const FinCategory& c) { return dual_impl_or_null(c) != nullptr; }
const ClovenFibration& dual_of(const FinCategory& dual_total) { return dual_impl(dual_total).fibration(); }
DualMorphism dual_parts(const FinCategory& dual_total, const Arrow& a) { return dual_impl(dual_total).decode(a); }
Arrow dual_arrow(const FinCategory& dual_total, ObjId e, ObjId d, const DualMorphism& m) {
  return dual_impl(dual_total).encode(e, d, m);
}

DualMorphism normalize_span(const ClovenFibration& F, const VertCartSpan& s) {
  const Arrow f = F(s.cart);
  const Arrow l = F.lift(f, s.cart.dst);
  const FinFunctor& P = F.functor();
  if (!P.is_vertical(s.vert)) throw StructuralError("normalize_span: left leg is not vertical");
  auto theta = vertical_factor(P, s.cart, l);
  std::optional<Arrow> inv = theta ? vertical_inverse(P, *theta) : std::nullopt;
  if (!inv) throw StructuralError("normalize_span: right leg is not cartesian");
  return {f, F.total().compose(*inv, s.vert)};
}

VertCartSpan span_compose(const ClovenFibration& F, const VertCartSpan& s1, const VertCartSpan& s2) {
  if (s1.cart.dst != s2.vert.dst) throw StructuralError("span_compose: feet do not match");
  const FinCategory& E = F.total();
  const VertCartSquare sq = vertcart_pullback(F, s2.vert, s1.cart);
  return {sq.apex, E.compose(sq.vert, s1.vert), E.compose(sq.cart, s2.cart)};
}

VertCartSpan span_of(const ClovenFibration& F, const DualMorphism& m, ObjId d) {
  return {m.backward.src, m.backward, F.lift(m.base, d)};
}

FinFunctor dual_map(const FinFunctor& g, const ClovenFibration& q, const ClovenFibration& p,
                    const ClovenFibration& dual_q, const ClovenFibration& dual_p) {
  const FinCategory src = dual_q.total();
  const FinCategory dst = dual_p.total();
  auto memo = std::make_shared<Memo<std::unordered_map<Arrow, Arrow, ArrowHash>>>();
  return make_functor(
      src, dst, [g](ObjId e) { return g(e); },
      [g, q, p, src, dst, memo](const Arrow& a) {
        return memo->get(a, [&] {
          const DualMorphism m = dual_parts(src, a);
          const VertCartSpan s{g(m.backward.src), g(m.backward), g(q.lift(m.base, a.dst))};
          return dual_arrow(dst, g(a.src), g(a.dst), normalize_span(p, s));
        });
      });
}

FinFunctor involution_comparison(const ClovenFibration& F, const ClovenFibration& dd) {
  const FinCategory ddc = dd.total();
  const FinCategory dc = dual_of(ddc).total();
  return make_functor(
      ddc, F.total(), [](ObjId e) { return e; },
      [F, ddc, dc](const Arrow& a) {
        const DualMorphism outer = dual_parts(ddc, a);
        const DualMorphism inner = dual_parts(dc, outer.backward);
        return F.total().compose(inner.backward, F.lift(outer.base, a.dst));
      });
}

LawReport check_involution_report(const ClovenFibration& F) {
  LawReport report;
  const ClovenFibration dd = dual_fibration(dual_fibration(F));
  const FinFunctor K = involution_comparison(F, dd);
  report.merge(check_functor(K), "comparison: ");
  const FinCategory& E = F.total();
  for (ObjId e : E.objects())
    for (ObjId d : E.objects()) {
      if (dd.total().hom_size(e, d) != E.hom_size(e, d)) {
        report.law("comparison bijective on homs", E.object_label(e) + " -> " + E.object_label(d));
        continue;
      }
      std::vector<Arrow> images;
      for (const Arrow& a : dd.total().hom(e, d)) {
        images.push_back(K(a));
        if (F(images.back()) != dd(a))
          report.law("comparison over the base", dd.total().arrow_label(a));
      }
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end())
        report.law("comparison bijective on homs", E.object_label(e) + " -> " + E.object_label(d));
    }
  return report;
}

bool check_involution(const ClovenFibration& F) { return check_involution_report(F).ok(); }

}  // namespace dialens
