#include <map>

#include "dialens/instances.hpp"

namespace dialens {

Tower dialectica_tower(std::size_t cap) {
  ClovenFibration simple = simple_fib(cap, cap);
  const FinCategory squares = finset(cap * cap);
  ClovenFibration pred = pullback_fib(subobject_fib(squares), product_functor(simple, squares));
  return Tower{{pred, simple}};
}

Dialectica dialectica(std::size_t cap) {
  Dialectica d;
  d.cap = cap;
  d.tower = dialectica_tower(cap);
  d.dual = iterated_dual(d.tower);
  return d;
}

DialecticaObject dialectica_object(const Dialectica& d, ObjId o) {
  const FinCategory& top = d.tower.top();
  auto [a, e] = pullback_object(top, o);
  auto [u, x] = simple_object(d.tower.category(1), a);
  return {u, x, subset_object(pullback_of(top).source(), e).second};
}

ObjId dialectica_object_of(const Dialectica& d, const DialecticaObject& o) {
  const FinCategory& top = d.tower.top();
  const ObjId a = simple_object_of(d.tower.category(1), o.u, o.x);
  return pullback_object_of(top, a, subset_object_of(pullback_of(top).source(), o.u * o.x, o.alpha));
}

DialecticaMorphism dialectica_morphism(const Dialectica& d, const Arrow& a) {
  const DialensMorphism m = dialens_decompose(d.category(), 2, a);
  return {as_fn(m.parts[0]), simple_arrow(d.tower.category(1), m.parts[1]).f};
}

std::optional<Arrow> dialectica_arrow_of(const Dialectica& d, ObjId a, ObjId b, const DialecticaMorphism& m) {
  for (const Arrow& f : d.category().hom(a, b))
    if (dialectica_morphism(d, f) == m) return f;
  return std::nullopt;
}

std::vector<DialecticaMorphism> dialectica_direct_hom(const DialecticaObject& a, const DialecticaObject& b) {
  std::vector<DialecticaMorphism> out;
  const std::uint32_t nf = checked_pow(b.u, a.u);
  const std::uint32_t ns = checked_pow(a.x, a.u * b.x);
  for (std::uint32_t fc = 0; fc < nf; ++fc) {
    const FnTable f = decode_fn(fc, a.u, b.u);
    for (std::uint32_t sc = 0; sc < ns; ++sc) {
      const FnTable s = decode_fn(sc, a.u * b.x, a.x);
      bool ok = true;
      for (std::uint32_t u = 0; u < a.u && ok; ++u)
        for (std::uint32_t y = 0; y < b.x && ok; ++y) {
          const bool in_alpha = a.alpha >> (u * a.x + s(u * b.x + y)) & 1U;
          const bool in_beta = b.alpha >> (f(u) * b.x + y) & 1U;
          ok = !in_alpha || in_beta;
        }
      if (ok) out.push_back({f, s});
    }
  }
  return out;
}

DialecticaMorphism dialectica_direct_compose(const DialecticaMorphism& m, const DialecticaMorphism& n,
                                             const DialecticaObject& a, const DialecticaObject& c) {
  const std::uint32_t v = m.f.cod;
  const std::uint32_t y = v ? n.fsharp.cod : 0;
  FnTable s;
  s.dom = a.u * c.x;
  s.cod = a.x;
  for (std::uint32_t u = 0; u < a.u; ++u)
    for (std::uint32_t z = 0; z < c.x; ++z) {
      const std::uint32_t yy = n.fsharp(m.f(u) * c.x + z);
      s.img[u * c.x + z] = m.fsharp(u * y + yy);
    }
  return {compose_fn(m.f, n.f), s};
}

BijectionReport check_dialectica_bijection(const Dialectica& d) {
  BijectionReport out;
  LawReport& report = out.report;
  const FinCategory& D = d.category();
  std::vector<DialecticaObject> objs;
  std::map<std::tuple<ObjId, ObjId, std::uint32_t>, ObjId> seen;
  for (ObjId o : D.objects()) {
    const DialecticaObject t = dialectica_object(d, o);
    objs.push_back(t);
    if (!seen.emplace(std::make_tuple(t.u, t.x, t.alpha), o).second)
      report.law("objects injective", D.object_label(o));
    if (dialectica_object_of(d, t) != o) report.law("objects round-trip", D.object_label(o));
  }
  std::uint64_t expected = 0;
  for (std::size_t u = 0; u <= d.cap; ++u)
    for (std::size_t x = 0; x <= d.cap; ++x) expected += std::uint64_t{1} << (u * x);
  if (expected != objs.size())
    report.law("objects surjective", std::to_string(objs.size()) + " objects, expected " + std::to_string(expected));
  out.objects = objs.size();

  const std::size_t n = objs.size();
  std::vector<std::vector<DialecticaMorphism>> decoded(n * n);
  for (ObjId a : D.objects())
    for (ObjId b : D.objects()) {
      auto& dec = decoded[a * n + b];
      for (const Arrow& f : D.hom(a, b)) dec.push_back(dialectica_morphism(d, f));
      auto direct = dialectica_direct_hom(objs[a], objs[b]);
      const std::string w = D.object_label(a) + " -> " + D.object_label(b);
      if (direct.size() != dec.size())
        report.law("hom cardinality", w + ": " + std::to_string(dec.size()) + " vs " + std::to_string(direct.size()));
      for (const auto& m : dec)
        if (std::find(direct.begin(), direct.end(), m) == direct.end()) report.law("morphism satisfies condition", w);
      for (std::size_t i = 0; i < dec.size(); ++i)
        for (std::size_t j = i + 1; j < dec.size(); ++j)
          if (dec[i] == dec[j]) report.law("homs injective", w);
      out.morphisms += dec.size();
    }

  for (ObjId a : D.objects())
    for (ObjId b : D.objects())
      for (ObjId c : D.objects())
        for (const Arrow& f : D.hom(a, b))
          for (const Arrow& g : D.hom(b, c)) {
            const auto& raw = decoded[a * n + c][D.compose(f, g).index];
            const auto direct =
                dialectica_direct_compose(decoded[a * n + b][f.index], decoded[b * n + c][g.index], objs[a], objs[c]);
            if (!(raw == direct)) report.law("composition transported", D.arrow_label(f) + " ; " + D.arrow_label(g));
            ++out.composites;
          }
  return out;
}

}  // namespace dialens
