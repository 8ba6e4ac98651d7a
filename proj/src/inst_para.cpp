#include <algorithm>

#include "dialens/instances.hpp"

namespace dialens {

Monoid trivial_monoid() { return {{{0}}, 0, {"e"}}; }
Monoid z2() { return {{{0, 1}, {1, 0}}, 0, {"e", "s"}}; }

FinCategory bmonoid(const Monoid& m) { return monoid_category(m.mult, m.unit, m.labels); }

MonoidAction trivial_action(const Monoid& m, const FinCategory& carrier) {
  return {m, carrier, [](std::size_t, ObjId x) { return x; }, [](std::size_t, const Arrow& f) { return f; }};
}

MonoidAction swap_conjugation(std::size_t cap) {
  auto swap = [](FnTable t) {
    auto s = [](std::uint32_t n, std::uint32_t i) { return n >= 2 && i < 2 ? 1 - i : i; };
    FnTable out = t;
    for (std::uint32_t i = 0; i < t.dom; ++i) out.img[s(t.dom, i)] = static_cast<std::uint8_t>(s(t.cod, t(i)));
    return out;
  };
  return {z2(), finset(cap), [](std::size_t, ObjId x) { return x; },
          [swap](std::size_t m, const Arrow& f) { return m ? fn_arrow(swap(as_fn(f))) : f; }};
}

MonoidAction swap_discrete() {
  const FinCategory c = discrete_category({"p", "q"});
  return {z2(), c, [](std::size_t m, ObjId x) { return m ? 1 - x : x; },
          [c](std::size_t m, const Arrow& f) { return m ? c.identity(1 - f.src) : f; }};
}

LawReport check_action(const MonoidAction& a) {
  LawReport report;
  const FinCategory& C = a.carrier;
  const Monoid& M = a.monoid;
  for (ObjId x : C.objects())
    if (a.on_objects(M.unit, x) != x) report.law("unit acts trivially", C.object_label(x));
  C.for_each_arrow([&](const Arrow& f) {
    if (a.on_arrows(M.unit, f) != f) report.law("unit acts trivially", C.arrow_label(f));
    for (std::size_t m = 0; m < M.size(); ++m) {
      const Arrow mf = a.on_arrows(m, f);
      if (mf.src != a.on_objects(m, f.src) || mf.dst != a.on_objects(m, f.dst) || !C.contains(mf))
        report.structural("action on arrows", M.labels[m] + " acting on " + C.arrow_label(f));
    }
  });
  if (report.has_structural()) return report;
  for (std::size_t m = 0; m < M.size(); ++m)
    for (std::size_t n = 0; n < M.size(); ++n) {
      for (ObjId x : C.objects())
        if (a.on_objects(m, a.on_objects(n, x)) != a.on_objects(M.mult[m][n], x))
          report.law("action is strict", M.labels[m] + ", " + M.labels[n] + " at " + C.object_label(x));
      C.for_each_arrow([&](const Arrow& f) {
        if (a.on_arrows(m, a.on_arrows(n, f)) != a.on_arrows(M.mult[m][n], f))
          report.law("action is strict", M.labels[m] + ", " + M.labels[n] + " at " + C.arrow_label(f));
      });
    }
  for (std::size_t m = 0; m < M.size(); ++m) {
    for (ObjId x : C.objects())
      if (a.on_arrows(m, C.identity(x)) != C.identity(a.on_objects(m, x)))
        report.law("action is functorial", M.labels[m] + " at " + C.object_label(x));
    C.for_each_arrow([&](const Arrow& f) {
      for (ObjId z : C.objects())
        for (const Arrow& g : C.hom(f.dst, z))
          if (a.on_arrows(m, C.compose(f, g)) != C.compose(a.on_arrows(m, f), a.on_arrows(m, g)))
            report.law("action is functorial", M.labels[m] + " at " + C.arrow_label(f) + " ; " + C.arrow_label(g));
    });
  }
  return report;
}

namespace {

class ParaCategory final : public CategoryImpl {
 public:
  explicit ParaCategory(MonoidAction a) : a_(std::move(a)) {}

  std::size_t object_count() const override { return a_.carrier.object_count(); }
  std::uint32_t hom_size(ObjId x, ObjId y) const override { return prefix(x, y).back(); }
  Arrow identity(ObjId x) const override { return encode(x, x, {a_.monoid.unit, a_.carrier.identity(x)}); }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    const ParaArrow p = decode(f);
    const ParaArrow q = decode(g);
    const Arrow moved = a_.on_arrows(q.residual, p.map);
    return encode(f.src, g.dst, {a_.monoid.mult[q.residual][p.residual], a_.carrier.compose(moved, q.map)});
  }
  std::string object_label(ObjId x) const override { return a_.carrier.object_label(x); }
  std::string arrow_label(const Arrow& f) const override {
    const ParaArrow p = decode(f);
    return "(" + a_.monoid.labels[p.residual] + ", " + a_.carrier.arrow_label(p.map) + ")";
  }

  const std::vector<std::uint32_t>& prefix(ObjId x, ObjId y) const {
    return homs_.get(x, y, [&] {
      std::vector<std::uint32_t> out{0};
      for (std::size_t m = 0; m < a_.monoid.size(); ++m)
        out.push_back(out.back() + a_.carrier.hom_size(a_.on_objects(m, x), y));
      return out;
    });
  }
  ParaArrow decode(const Arrow& f) const {
    const auto& pre = prefix(f.src, f.dst);
    auto it = std::upper_bound(pre.begin(), pre.end(), f.index);
    const std::size_t m = static_cast<std::size_t>(it - pre.begin()) - 1;
    const ObjId mx = a_.on_objects(m, f.src);
    return {m, Arrow{mx, f.dst, f.index - pre[m]}};
  }
  Arrow encode(ObjId x, ObjId y, const ParaArrow& p) const {
    if (p.residual >= a_.monoid.size() || p.map.src != a_.on_objects(p.residual, x) || p.map.dst != y ||
        !a_.carrier.contains(p.map))
      throw StructuralError("para: map does not leave the acted object");
    return {x, y, prefix(x, y)[p.residual] + p.map.index};
  }
  const MonoidAction& action() const { return a_; }

 private:
  MonoidAction a_;
  PairCache<std::vector<std::uint32_t>> homs_;
};

const ParaCategory& para_impl(const FinCategory& c) {
  auto* p = dynamic_cast<const ParaCategory*>(&c.impl());
  if (!p) throw StructuralError("not a Para category");
  return *p;
}

class ParaProjection final : public FunctorImpl {
 public:
  explicit ParaProjection(const ParaCategory* c) : c_(c) {}
  ObjId map_object(ObjId) const override { return 0; }
  Arrow map_arrow(const Arrow& f) const override {
    return {0, 0, static_cast<std::uint32_t>(c_->decode(f).residual)};
  }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId x, ObjId y, const Arrow& m) const override {
    const auto& pre = c_->prefix(x, y);
    std::vector<Arrow> out;
    for (std::uint32_t i = pre[m.index]; i < pre[m.index + 1]; ++i) out.push_back({x, y, i});
    return out;
  }

 private:
  const ParaCategory* c_;
};

}  // namespace

OpCloven para(const MonoidAction& a, const FinCategory& bm) {
  if (bm.object_count() != 1 || bm.hom_size(0, 0) != a.monoid.size())
    throw StructuralError("para: the base is not BM for the acting monoid");
  auto impl = std::make_shared<ParaCategory>(a);
  const ParaCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor p(total, bm, std::make_shared<ParaProjection>(raw));
  auto oplift = [raw](const Arrow& m, ObjId x) {
    const MonoidAction& act = raw->action();
    const ObjId mx = act.on_objects(m.index, x);
    return raw->encode(x, mx, {m.index, act.carrier.identity(mx)});
  };
  return {p, make_cleavage(oplift)};
}

ParaArrow para_arrow(const FinCategory& para_total, const Arrow& a) { return para_impl(para_total).decode(a); }
Arrow para_arrow_of(const FinCategory& para_total, ObjId x, ObjId y, const ParaArrow& p) {
  return para_impl(para_total).encode(x, y, p);
}

namespace {

Arrow flip(const Arrow& f) { return {f.dst, f.src, f.index}; }

}  // namespace

Tower preoptic_tower(const OpCloven& para_c, const OpCloven& para_d) {
  if (!para_c.functor.target().same_as(para_d.functor.target()))
    throw StructuralError("preoptic_tower: the two Para constructions are over different bases");
  ClovenFibration lower = opposite_fibration(para_c.functor, para_c.opcleavage);
  ClovenFibration upper = pullback_fib(opposite_fibration(para_d.functor, para_d.opcleavage), lower.functor());
  return Tower{{upper, lower}};
}

Preoptics preoptics(const MonoidAction& c, const MonoidAction& d) {
  if (c.monoid.mult != d.monoid.mult || c.monoid.unit != d.monoid.unit)
    throw StructuralError("preoptics: the actions are not over the same monoid");
  Preoptics p;
  p.c = c;
  p.d = d;
  p.bm = bmonoid(c.monoid);
  p.para_c = para(c, p.bm);
  p.para_d = para(d, p.bm);
  p.tower = preoptic_tower(p.para_c, p.para_d);
  p.dual = iterated_dual(p.tower);
  p.category = p.dual.top();
  return p;
}

std::pair<ObjId, ObjId> preoptic_object(const Preoptics& p, ObjId o) { return pullback_object(p.tower.top(), o); }
ObjId preoptic_object_of(const Preoptics& p, ObjId a, ObjId b) { return pullback_object_of(p.tower.top(), a, b); }

PreopticDatum preoptic_datum(const Preoptics& p, const Arrow& a) {
  const DialensMorphism m = dialens_decompose(p.dual.top(), 2, a);
  const ParaArrow view = para_arrow(p.para_c.functor.source(), flip(m.parts[1]));
  const ParaArrow update = para_arrow(p.para_d.functor.source(), flip(pullback_arrow(p.tower.top(), m.parts[2]).second));
  return {m.parts[0].index, view.map, update.map};
}

std::vector<PreopticDatum> preoptic_direct_hom(const Preoptics& p, ObjId a, ObjId b, ObjId s, ObjId t) {
  std::vector<PreopticDatum> out;
  for (std::size_t m = 0; m < p.c.monoid.size(); ++m)
    for (const Arrow& view : p.c.carrier.hom(a, p.c.on_objects(m, s)))
      for (const Arrow& update : p.d.carrier.hom(p.d.on_objects(m, t), b)) out.push_back({m, view, update});
  return out;
}

PreopticDatum preoptic_direct_compose(const Preoptics& p, const PreopticDatum& x, const PreopticDatum& y) {
  const std::size_t m = x.residual;
  return {p.c.monoid.mult[m][y.residual], p.c.carrier.compose(x.view, p.c.on_arrows(m, y.view)),
          p.d.carrier.compose(p.d.on_arrows(m, y.update), x.update)};
}

BijectionReport check_preoptic_bijection(const Preoptics& p) {
  BijectionReport out;
  LawReport& report = out.report;
  const FinCategory& P = p.category;
  const std::size_t n = P.object_count();
  out.objects = n;
  if (n != p.c.carrier.object_count() * p.d.carrier.object_count())
    report.law("objects are pairs", std::to_string(n) + " objects");
  for (ObjId o : P.objects()) {
    auto [a, b] = preoptic_object(p, o);
    if (preoptic_object_of(p, a, b) != o) report.law("objects round-trip", P.object_label(o));
  }
  std::vector<std::vector<PreopticDatum>> decoded(n * n);
  for (ObjId o1 : P.objects())
    for (ObjId o2 : P.objects()) {
      auto [a, b] = preoptic_object(p, o1);
      auto [s, t] = preoptic_object(p, o2);
      const std::string w = P.object_label(o1) + " -> " + P.object_label(o2);
      auto& dec = decoded[o1 * n + o2];
      for (const Arrow& f : P.hom(o1, o2)) dec.push_back(preoptic_datum(p, f));
      const auto direct = preoptic_direct_hom(p, a, b, s, t);
      if (direct.size() != dec.size())
        report.law("hom cardinality", w + ": " + std::to_string(dec.size()) + " vs " + std::to_string(direct.size()));
      for (const auto& d : dec)
        if (std::find(direct.begin(), direct.end(), d) == direct.end()) report.law("morphism is a preoptic", w);
      for (std::size_t i = 0; i < dec.size(); ++i)
        for (std::size_t j = i + 1; j < dec.size(); ++j)
          if (dec[i] == dec[j]) report.law("homs injective", w);
      out.morphisms += dec.size();
    }
  for (ObjId a : P.objects())
    for (ObjId b : P.objects())
      for (ObjId c : P.objects())
        for (const Arrow& f : P.hom(a, b))
          for (const Arrow& g : P.hom(b, c)) {
            const auto& raw = decoded[a * n + c][P.compose(f, g).index];
            if (!(raw == preoptic_direct_compose(p, decoded[a * n + b][f.index], decoded[b * n + c][g.index])))
              report.law("composition transported", P.arrow_label(f) + " ; " + P.arrow_label(g));
            ++out.composites;
          }
  return out;
}

}  // namespace dialens
