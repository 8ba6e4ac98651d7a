#include "dialens/fib.hpp"

#include <algorithm>
#include <unordered_map>

namespace dialens {

namespace {

struct LiftKey {
  Arrow f;
  ObjId d;
  friend bool operator==(const LiftKey&, const LiftKey&) = default;
};
struct LiftKeyHash {
  std::size_t operator()(const LiftKey& k) const noexcept { return ArrowHash{}(k.f) * 31 + k.d; }
};

class LambdaCleavage final : public CleavageImpl {
 public:
  explicit LambdaCleavage(std::function<Arrow(const Arrow&, ObjId)> fn) : fn_(std::move(fn)) {}
  Arrow lift(const Arrow& f, ObjId d) const override { return fn_(f, d); }

 private:
  std::function<Arrow(const Arrow&, ObjId)> fn_;
};

}  // namespace

std::shared_ptr<const CleavageImpl> make_cleavage(std::function<Arrow(const Arrow&, ObjId)> lift) {
  return std::make_shared<LambdaCleavage>(std::move(lift));
}

struct ClovenFibration::Cache {
  Memo<std::unordered_map<LiftKey, Arrow, LiftKeyHash>> lifts;
  Memo<std::unordered_map<Arrow, bool, ArrowHash>> cartesian;
};

ClovenFibration::ClovenFibration(FinFunctor p, std::shared_ptr<const CleavageImpl> cleavage)
    : p_(std::move(p)), cleavage_(std::move(cleavage)), cache_(std::make_shared<Cache>()) {}

Arrow ClovenFibration::lift(const Arrow& f, ObjId d) const {
  if (p_(d) != f.dst) throw StructuralError("lift: " + to_string(f) + " does not end over the given object");
  if (base().is_identity(f)) return total().identity(d);
  return cache_->lifts.get(LiftKey{f, d}, [&] { return cleavage_->lift(f, d); });
}

bool ClovenFibration::is_cartesian(const Arrow& phi) const {
  return cache_->cartesian.get(phi, [&] {
    const FinCategory& E = total();
    const FinCategory& X = base();
    const Arrow f = p_(phi);
    for (ObjId u : E.objects()) {
      for (const Arrow& g : X.hom(p_(u), f.src)) {
        const auto& over_g = p_.arrows_over(u, phi.src, g);
        const auto& over_gf = p_.arrows_over(u, phi.dst, X.compose(g, f));
        if (over_g.size() != over_gf.size()) return false;
        std::vector<Arrow> images;
        images.reserve(over_g.size());
        for (const Arrow& h : over_g) images.push_back(E.compose(h, phi));
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
      }
    }
    return true;
  });
}

std::optional<Arrow> factor_over(const FinFunctor& p, const Arrow& psi, const Arrow& phi, const Arrow& g) {
  const FinCategory& E = p.source();
  for (const Arrow& h : p.arrows_over(psi.src, phi.src, g))
    if (E.compose(h, phi) == psi) return h;
  return std::nullopt;
}

std::optional<Arrow> vertical_factor(const FinFunctor& p, const Arrow& psi, const Arrow& phi) {
  if (p(psi.src) != p(phi.src)) return std::nullopt;
  return factor_over(p, psi, phi, p.target().identity(p(psi.src)));
}

std::optional<Arrow> vertical_inverse(const FinFunctor& p, const Arrow& k) {
  const FinCategory& E = p.source();
  for (const Arrow& j : p.arrows_over(k.dst, k.src, p.target().identity(p(k.dst))))
    if (E.is_identity(E.compose(k, j)) && E.is_identity(E.compose(j, k))) return j;
  return std::nullopt;
}

FinCategory fiber_at(const FinFunctor& p, ObjId x) {
  if (x >= p.target().object_count()) throw StructuralError("fiber_at: unknown base object " + std::to_string(x));
  const Arrow id = p.target().identity(x);
  return subcategory(
      p.source(), p.objects_over(x), [p, id](const Arrow& f) { return p(f) == id; },
      "fiber over " + p.target().object_label(x));
}

FinCategory fiber_at(const ClovenFibration& f, ObjId x) { return fiber_at(f.functor(), x); }

LawReport check_cleavage(const ClovenFibration& F) {
  LawReport report;
  for (auto& v : F.cleavage().structural_errors()) report.violations.push_back(v);
  if (report.has_structural()) return report;
  const FinCategory& E = F.total();
  const FinCategory& X = F.base();
  const FinFunctor& P = F.functor();
  auto lift_or_report = [&](const Arrow& f, ObjId d) -> std::optional<Arrow> {
    try {
      Arrow l = F.lift(f, d);
      if (!E.contains(l) || l.dst != d) {
        report.structural("cleavage", "lift of " + X.arrow_label(f) + " at " + E.object_label(d) + " is malformed");
        return std::nullopt;
      }
      return l;
    } catch (const StructuralError& e) {
      report.structural("cleavage total", "no lift of " + X.arrow_label(f) + " at " + E.object_label(d));
      return std::nullopt;
    }
  };
  X.for_each_arrow([&](const Arrow& f) {
    for (ObjId d : P.objects_over(f.dst)) {
      auto l = lift_or_report(f, d);
      if (!l) continue;
      if (P(*l) != f)
        report.law("lift over its arrow", X.arrow_label(f) + " at " + E.object_label(d));
      else if (!F.is_cartesian(*l))
        report.law("lift is cartesian", E.arrow_label(*l) + " over " + X.arrow_label(f));
    }
  });
  if (report.has_structural()) return report;
  X.for_each_arrow([&](const Arrow& f) {
    for (ObjId z : X.objects())
      for (const Arrow& g : X.hom(f.dst, z))
        for (ObjId d : P.objects_over(z)) {
          const Arrow lg = F.lift(g, d);
          const Arrow composite = E.compose(F.lift(f, lg.src), lg);
          const Arrow direct = F.lift(X.compose(f, g), d);
          if (composite == direct) continue;
          auto k = vertical_factor(P, direct, composite);
          if (!k || !vertical_inverse(P, *k))
            report.law("lifts compose",
                       X.arrow_label(f) + " ; " + X.arrow_label(g) + " at " + E.object_label(d) +
                           ": no vertical iso relates the two lifts");
        }
  });
  return report;
}

LawReport check_fibration(const ClovenFibration& F) {
  LawReport report = check_functor(F.functor());
  if (report.has_structural()) return report;
  report.merge(check_cleavage(F));
  return report;
}

namespace {

Arrow flip(const Arrow& f) { return {f.dst, f.src, f.index}; }

class OppositeCleavage final : public CleavageImpl {
 public:
  explicit OppositeCleavage(std::shared_ptr<const CleavageImpl> op) : op_(std::move(op)) {}
  Arrow lift(const Arrow& f, ObjId d) const override { return flip(op_->lift(flip(f), d)); }
  std::vector<Violation> structural_errors() const override { return op_->structural_errors(); }

 private:
  std::shared_ptr<const CleavageImpl> op_;
};

}  // namespace

ClovenFibration opposite_fibration(const FinFunctor& p, std::shared_ptr<const CleavageImpl> opcleavage) {
  return ClovenFibration(opposite(p), std::make_shared<OppositeCleavage>(std::move(opcleavage)));
}

LawReport check_opfibration(const FinFunctor& p, std::shared_ptr<const CleavageImpl> opcleavage) {
  LawReport report = check_functor(p);
  if (report.has_structural()) return report;
  LawReport dual = check_cleavage(opposite_fibration(p, std::move(opcleavage)));
  for (auto& v : dual.violations) {
    if (v.law == "lift is cartesian") v.law = "oplift is opcartesian";
    else if (v.law == "lift over its arrow") v.law = "oplift over its arrow";
    else if (v.law == "lifts compose") v.law = "oplifts compose";
    else if (v.law == "cleavage total") v.law = "opcleavage total";
    report.violations.push_back(v);
  }
  return report;
}

bool is_opcartesian(const FinFunctor& p, const Arrow& phi) {
  ClovenFibration op(opposite(p), make_cleavage([](const Arrow&, ObjId) -> Arrow {
                       throw StructuralError("no cleavage");
                     }));
  return op.is_cartesian(flip(phi));
}

FibMorphismParts factorize(const ClovenFibration& F, const Arrow& phi) {
  const Arrow cart = F.lift(F(phi), phi.dst);
  auto vert = vertical_factor(F.functor(), phi, cart);
  if (!vert) throw StructuralError("factorize: " + F.total().arrow_label(phi) + " has no vertical part");
  return {phi, *vert, cart};
}

ClovenFibration compose_fib(const ClovenFibration& q, const ClovenFibration& p) {
  if (!q.base().same_as(p.total())) throw StructuralError("compose_fib: base of upper level is not the lower total");
  auto lift = [q, p](const Arrow& f, ObjId d) { return q.lift(p.lift(f, q(d)), d); };
  return ClovenFibration(compose(q.functor(), p.functor()), make_cleavage(lift));
}

// ---------------------------------------------------------------------------
// Cleavage search

namespace {

class SearchedCleavage final : public CleavageImpl {
 public:
  explicit SearchedCleavage(FinFunctor p)
      : fib_(p, make_cleavage([](const Arrow&, ObjId) -> Arrow { throw StructuralError("no cleavage"); })) {}
  Arrow lift(const Arrow& f, ObjId d) const override {
    const FinFunctor& P = fib_.functor();
    for (ObjId u : P.objects_over(f.src))
      for (const Arrow& phi : P.arrows_over(u, d, f))
        if (fib_.is_cartesian(phi)) return phi;
    throw StructuralError("no cartesian lift of " + P.target().arrow_label(f) + " at " +
                          P.source().object_label(d));
  }

 private:
  ClovenFibration fib_;
};

}  // namespace

std::shared_ptr<const CleavageImpl> find_cleavage(const FinFunctor& p) {
  return std::make_shared<SearchedCleavage>(p);
}

std::shared_ptr<const CleavageImpl> find_opcleavage(const FinFunctor& p) {
  auto op = std::make_shared<SearchedCleavage>(opposite(p));
  return make_cleavage([op](const Arrow& f, ObjId e) { return flip(op->lift(flip(f), e)); });
}

// ---------------------------------------------------------------------------
// Fibration maps

LawReport check_fib_map(const FinFunctor& F, const ClovenFibration& q, const ClovenFibration& p) {
  LawReport report = check_functor(F);
  if (report.has_structural()) return report;
  if (!F.source().same_as(q.total()) || !F.target().same_as(p.total())) {
    report.structural("fibration map", "functor endpoints differ from the fibrations' totals");
    return report;
  }
  for (ObjId e : q.total().objects())
    if (p(F(e)) != q(e)) {
      report.structural("triangle commutes", "at object " + q.total().object_label(e));
      return report;
    }
  q.total().for_each_arrow([&](const Arrow& a) {
    if (p(F(a)) != q(a)) report.structural("triangle commutes", "at " + q.total().arrow_label(a));
  });
  if (report.has_structural()) return report;
  q.base().for_each_arrow([&](const Arrow& f) {
    for (ObjId d : q.functor().objects_over(f.dst)) {
      const Arrow image = F(q.lift(f, d));
      if (!p.is_cartesian(image))
        report.law("preserves cartesian arrows", q.total().arrow_label(q.lift(f, d)) + " maps to " +
                                                     p.total().arrow_label(image));
    }
  });
  return report;
}

FinFunctor fiber_functor(const FinFunctor& F, const ClovenFibration& q, const ClovenFibration& p, ObjId x) {
  FinCategory src = fiber_at(q, x);
  FinCategory dst = fiber_at(p, x);
  return make_functor(
      src, dst,
      [F, src, dst](ObjId a) { return subcategory_local_object(dst, F(subcategory_object(src, a))).value(); },
      [F, src, dst](const Arrow& k) { return subcategory_restrict(dst, F(subcategory_inclusion(src, k))).value(); });
}

// ---------------------------------------------------------------------------
// Pullback of vertical along cartesian

VertCartSquare vertcart_pullback(const ClovenFibration& F, const Arrow& v, const Arrow& c) {
  if (v.dst != c.dst) throw StructuralError("vertcart_pullback: legs do not share a codomain");
  const Arrow f = F(c);
  const Arrow top = F.lift(f, v.src);
  const Arrow around = F.total().compose(top, v);
  auto left = vertical_factor(F.functor(), around, c);
  if (!left) throw StructuralError("vertcart_pullback: " + F.total().arrow_label(c) + " is not cartesian");
  return {top.src, top, *left};
}

bool is_pullback_square(const FinCategory& c, const Arrow& top, const Arrow& left, const Arrow& right,
                        const Arrow& bottom) {
  return is_limit(c, LimitShape::kPullback, {{}, {right, bottom}}, Cone{top.src, {top, left}});
}

// ---------------------------------------------------------------------------
// Strict pullback

namespace {

class PullbackCategory final : public CategoryImpl {
 public:
  PullbackCategory(FinFunctor p, FinFunctor g) : p_(std::move(p)), g_(std::move(g)) {
    const FinCategory& F = g_.source();
    offsets_.push_back(0);
    for (ObjId a : F.objects()) {
      const auto& over = p_.objects_over(g_(a));
      for (ObjId e : over) objects_.emplace_back(a, e);
      offsets_.push_back(static_cast<ObjId>(objects_.size()));
    }
  }

  std::size_t object_count() const override { return objects_.size(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override { return prefix(a, b).back(); }
  Arrow identity(ObjId a) const override {
    return make(a, a, g_.source().identity(objects_[a].first), p_.source().identity(objects_[a].second));
  }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    auto [u1, e1] = split(f);
    auto [u2, e2] = split(g);
    return make(f.src, g.dst, g_.source().compose(u1, u2), p_.source().compose(e1, e2));
  }
  std::string object_label(ObjId a) const override {
    return "(" + g_.source().object_label(objects_[a].first) + ", " + p_.source().object_label(objects_[a].second) +
           ")";
  }
  std::string arrow_label(const Arrow& f) const override {
    auto [u, e] = split(f);
    return "(" + g_.source().arrow_label(u) + ", " + p_.source().arrow_label(e) + ")";
  }

  /// pre[i] = number of arrows over the first i arrows of Hom_F; over[i]:
  /// the P-arrows over G of arrow i.
  struct HomIndex {
    std::vector<std::uint32_t> pre;
    std::vector<const std::vector<Arrow>*> over;
  };
  const HomIndex& index(ObjId a, ObjId b) const {
    return homs_.get(a, b, [&] {
      const auto [fa, ea] = objects_[a];
      const auto [fb, eb] = objects_[b];
      HomIndex out;
      out.pre.push_back(0);
      std::uint64_t total = 0;
      for (const Arrow& u : g_.source().hom(fa, fb)) {
        out.over.push_back(&p_.arrows_over(ea, eb, g_(u)));
        total += out.over.back()->size();
        if (total > 0xffffffffULL) throw CapExceeded(total, 0xffffffffULL, "pullback hom-set");
        out.pre.push_back(static_cast<std::uint32_t>(total));
      }
      return out;
    });
  }
  const std::vector<std::uint32_t>& prefix(ObjId a, ObjId b) const { return index(a, b).pre; }
  std::pair<Arrow, Arrow> split(const Arrow& f) const {
    const HomIndex& h = index(f.src, f.dst);
    auto it = std::upper_bound(h.pre.begin(), h.pre.end(), f.index);
    const std::uint32_t u = static_cast<std::uint32_t>(it - h.pre.begin()) - 1;
    const Arrow ua{objects_[f.src].first, objects_[f.dst].first, u};
    return {ua, (*h.over[u])[f.index - h.pre[u]]};
  }
  Arrow make(ObjId a, ObjId b, const Arrow& u, const Arrow& phi) const {
    const HomIndex& h = index(a, b);
    const auto& over = *h.over.at(u.index);
    auto it = std::lower_bound(over.begin(), over.end(), phi);
    if (it == over.end() || *it != phi) throw StructuralError("pullback: components disagree in the base");
    return {a, b, h.pre[u.index] + static_cast<std::uint32_t>(it - over.begin())};
  }
  ObjId object(ObjId a, ObjId e) const {
    const auto& over = p_.objects_over(g_(a));
    auto it = std::lower_bound(over.begin(), over.end(), e);
    if (it == over.end() || *it != e) throw StructuralError("pullback: object components disagree in the base");
    return offsets_[a] + static_cast<ObjId>(it - over.begin());
  }
  const std::pair<ObjId, ObjId>& components(ObjId o) const { return objects_[o]; }
  ObjId first_over(ObjId a) const { return offsets_[a]; }
  ObjId end_over(ObjId a) const { return offsets_[a + 1]; }
  const FinFunctor& p() const { return p_; }
  const FinFunctor& g() const { return g_; }

 private:
  FinFunctor p_, g_;
  std::vector<std::pair<ObjId, ObjId>> objects_;
  std::vector<ObjId> offsets_;
  PairCache<HomIndex> homs_;
};

const PullbackCategory& pullback_impl(const FinCategory& c) {
  auto* impl = dynamic_cast<const PullbackCategory*>(&c.impl());
  if (!impl) throw StructuralError("not a pullback category");
  return *impl;
}

class PullbackFirst final : public FunctorImpl {
 public:
  explicit PullbackFirst(const PullbackCategory* c) : c_(c) {}
  ObjId map_object(ObjId o) const override { return c_->components(o).first; }
  Arrow map_arrow(const Arrow& f) const override { return c_->split(f).first; }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& u) const override {
    const auto& pre = c_->prefix(a, b);
    std::vector<Arrow> out;
    for (std::uint32_t i = pre[u.index]; i < pre[u.index + 1]; ++i) out.push_back({a, b, i});
    return out;
  }

 private:
  const PullbackCategory* c_;
};

class PullbackSecond final : public FunctorImpl {
 public:
  explicit PullbackSecond(const PullbackCategory* c) : c_(c) {}
  ObjId map_object(ObjId o) const override { return c_->components(o).second; }
  Arrow map_arrow(const Arrow& f) const override { return c_->split(f).second; }

 private:
  const PullbackCategory* c_;
};

}  // namespace

ClovenFibration pullback_fib(const ClovenFibration& p, const FinFunctor& g) {
  if (!g.target().same_as(p.base())) throw StructuralError("pullback_fib: functor does not land in the base");
  auto impl = std::make_shared<PullbackCategory>(p.functor(), g);
  const PullbackCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor first(total, g.source(), std::make_shared<PullbackFirst>(raw));
  auto lift = [raw, p, g](const Arrow& u, ObjId d) {
    const auto [a, e] = raw->components(d);
    const Arrow l = p.lift(g(u), e);
    return raw->make(raw->object(u.src, l.src), d, u, l);
  };
  return ClovenFibration(first, make_cleavage(lift));
}

FinFunctor pullback_projection(const ClovenFibration& pulled) {
  const PullbackCategory& c = pullback_impl(pulled.total());
  return FinFunctor(pulled.total(), c.p().source(), std::make_shared<PullbackSecond>(&c));
}

std::pair<ObjId, ObjId> pullback_object(const FinCategory& pb, ObjId o) { return pullback_impl(pb).components(o); }
ObjId pullback_object_of(const FinCategory& pb, ObjId a, ObjId e) { return pullback_impl(pb).object(a, e); }
std::pair<Arrow, Arrow> pullback_arrow(const FinCategory& pb, const Arrow& f) { return pullback_impl(pb).split(f); }
const FinFunctor& pullback_along(const FinCategory& pb) { return pullback_impl(pb).g(); }
const FinFunctor& pullback_of(const FinCategory& pb) { return pullback_impl(pb).p(); }
Arrow pullback_arrow_of(const FinCategory& pb, const Arrow& u, const Arrow& phi) {
  const PullbackCategory& c = pullback_impl(pb);
  return c.make(c.object(u.src, phi.src), c.object(u.dst, phi.dst), u, phi);
}

}  // namespace dialens
