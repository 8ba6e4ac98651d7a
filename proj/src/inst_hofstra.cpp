#include <algorithm>

#include "dialens/instances.hpp"

namespace dialens {

ClovenFibration sum_completion(const SkeletonFibration& p, std::size_t index_cap, std::size_t fibre_cap) {
  ClovenFibration s = simple_fib(index_cap, fibre_cap);
  ClovenFibration base_p = p(finset(index_cap * fibre_cap));
  return compose_fib(pullback_fib(base_p, product_functor(s, base_p.base())), s);
}

LawReport check_simple_sums(const ClovenFibration& sum) {
  LawReport report;
  const FinCategory& C = sum.base();
  const FinCategory& T = sum.total();
  const FinFunctor& P = sum.functor();
  const FinCategory simple = pullback_along(T).source();
  const auto cap = finset_cap(C);
  if (!cap) {
    report.structural("simple sums", "the base is not a finite-set skeleton");
    return report;
  }
  const std::size_t fibre_cap = simple.object_count() / (*cap + 1) - 1;
  for (std::uint32_t i = 0; i <= *cap; ++i)
    for (std::uint32_t k = 0; i * k <= *cap && k <= *cap; ++k) {
      FnTable pi;
      pi.dom = i * k;
      pi.cod = i;
      for (std::uint32_t q = 0; q < pi.dom; ++q) pi.img[q] = static_cast<std::uint8_t>(q / k);
      const Arrow proj = fn_arrow(pi);
      for (ObjId e : P.objects_over(proj.src)) {
        const ObjId x = simple_object(simple, pullback_object(T, e).first).second;
        if (k * x > fibre_cap) continue;
        bool found = false;
        for (ObjId d : P.objects_over(proj.dst)) {
          for (const Arrow& phi : P.arrows_over(e, d, proj))
            if (is_opcartesian(P, phi)) {
              found = true;
              break;
            }
          if (found) break;
        }
        if (!found) report.law("sum along projection", C.arrow_label(proj) + " at " + T.object_label(e));
      }
    }
  return report;
}

Hofstra hofstra_dial(const SkeletonFibration& p, std::size_t index_cap, std::size_t fibre_cap) {
  ClovenFibration q1 = simple_fib(index_cap, fibre_cap);
  ClovenFibration s2 = simple_fib(finset(index_cap * fibre_cap), fibre_cap);
  ClovenFibration q2 = pullback_fib(s2, product_functor(q1, s2.base()));
  ClovenFibration pred = p(finset(index_cap * fibre_cap * fibre_cap));
  ClovenFibration sum_p = pullback_fib(pred, product_functor(s2, pred.base()));
  ClovenFibration q3 = pullback_fib(sum_p, pullback_projection(q2));
  Hofstra h;
  h.tower = Tower{{q3, q2, q1}};
  h.dual = iterated_dual(Tower{{q3, q2}});
  return h;
}

HofstraObject hofstra_object(const Hofstra& h, ObjId o) {
  const FinCategory& top = h.tower.category(3);
  const FinCategory& mid = h.tower.category(2);
  const auto [a, e] = pullback_object(top, o);
  const auto [s, s2] = pullback_object(mid, a);
  const auto [i, x] = simple_object(h.tower.category(1), s);
  const ObjId u = simple_object(pullback_of(mid).source(), s2).second;
  return {i, x, u, pullback_object(pullback_of(top).source(), e).second};
}

HofstraMorphism hofstra_morphism(const Hofstra& h, const Arrow& a) {
  const FinCategory& top = h.tower.category(3);
  const FinCategory& mid = h.tower.category(2);
  const DialensMorphism m = dialens_decompose(h.category(), 2, a);
  const SimpleArrow base = simple_arrow(h.tower.category(1), m.parts[0]);
  const SimpleArrow back = simple_arrow(pullback_of(mid).source(), pullback_arrow(mid, m.parts[1]).second);
  const Arrow upper = pullback_arrow(top, m.parts[2]).second;
  return {base.u, base.f, back.f, pullback_arrow(pullback_of(top).source(), upper).second};
}

BijectionReport check_hofstra_parts(const Hofstra& h, std::optional<std::size_t> max_product) {
  BijectionReport out;
  LawReport& report = out.report;
  const FinCategory& D = h.category();
  const FinFunctor& pred = pullback_of(pullback_of(h.tower.category(3)).source());
  const auto fits = [&](std::size_t n) { return !max_product || n <= *max_product; };
  std::vector<ObjId> objs;
  for (ObjId o : D.objects()) {
    const HofstraObject s = hofstra_object(h, o);
    if (fits(s.i * s.x * s.u)) objs.push_back(o);
  }
  out.objects = objs.size();
  for (ObjId a : objs)
    for (ObjId b : objs) {
      const HofstraObject s = hofstra_object(h, a);
      const HofstraObject t = hofstra_object(h, b);
      if (!fits(s.i * s.x * t.u)) continue;
      const std::string w = D.object_label(a) + " -> " + D.object_label(b);
      std::vector<HofstraMorphism> seen;
      for (const Arrow& f : D.hom(a, b)) {
        const HofstraMorphism m = hofstra_morphism(h, f);
        if (m.f0.dom != s.i || m.f0.cod != t.i) report.law("f_0: I -> J", w);
        if (m.f.dom != s.i * s.x || m.f.cod != t.x) report.law("f: I x X -> Y", w);
        if (m.fsharp.dom != s.i * s.x * t.u || m.fsharp.cod != s.u) report.law("f#: I x X x V -> U", w);
        const Arrow over = pred(m.fnat);
        if (over.src != s.i * s.x * t.u || !pred.target().is_identity(over)) report.law("f-natural vertical", w);
        const DialensMorphism parts = dialens_decompose(D, 2, f);
        if (dialens_recompose(D, 2, a, b, parts.parts) != f) report.law("recomposes", D.arrow_label(f));
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) report.law("parts injective", D.arrow_label(f));
        seen.push_back(m);
        ++out.morphisms;
      }
    }
  return out;
}

ClovenFibration cofam(const ClovenFibration& p) { return dual_fibration(family_fib(dual_fibration(p))); }

DependentDial dependent_dial(const ClovenFibration& p) {
  const ArrowCategory ac = arrow_category(p.base());
  ClovenFibration cod = codomain_fib(ac);
  ClovenFibration q2 = pullback_fib(cod, ac.dom);
  ClovenFibration fam_p = pullback_fib(p, ac.dom);
  ClovenFibration q3 = pullback_fib(fam_p, pullback_projection(q2));
  DependentDial d;
  d.tower = Tower{{q3, q2, cod}};
  d.dual = iterated_dual(Tower{{q3, q2}});
  return d;
}

Tower cube_tower(const FinCategory& c, std::size_t n) {
  if (n == 0) throw StructuralError("cube_tower: height must be positive");
  Tower t;
  t.levels.push_back(codomain_fib(c));
  for (std::size_t k = 1; k < n; ++k) t.levels.insert(t.levels.begin(), codomain_fib(t.levels.front().total()));
  return t;
}

}  // namespace dialens
