#include <algorithm>
#include <bit>

#include "dialens/instances.hpp"

namespace dialens {

// ---------------------------------------------------------------------------
// Domain, codomain, identity

ClovenFibration domain_fib(const ArrowCategory& ac) {
  const FinCategory A = ac.category;
  const FinCategory c = arrow_category_base(A);
  auto lift = [A, c](const Arrow& u, ObjId g) {
    const Arrow ga = arrow_of(A, g);
    return make_square(A, object_of(A, c.compose(u, ga)), g, u, c.identity(ga.dst));
  };
  return ClovenFibration(ac.dom, make_cleavage(lift));
}

ClovenFibration domain_fib(const FinCategory& c) { return domain_fib(arrow_category(c)); }

ClovenFibration codomain_fib(const ArrowCategory& ac) {
  const FinCategory A = ac.category;
  const FinCategory c = arrow_category_base(A);
  c.for_each_arrow([&](const Arrow& f) {
    for (ObjId b : c.objects())
      for (const Arrow& g : c.hom(b, f.dst))
        if (!pullback(c, f, g))
          throw UnsupportedBase("no pullback of " + c.arrow_label(f) + " and " + c.arrow_label(g));
  });
  auto lift = [A, c](const Arrow& u, ObjId g) {
    const Cone cone = pullback(c, u, arrow_of(A, g)).value();
    return make_square(A, object_of(A, cone.legs[0]), g, cone.legs[1], u);
  };
  return ClovenFibration(ac.cod, make_cleavage(lift));
}

ClovenFibration codomain_fib(const FinCategory& c) { return codomain_fib(arrow_category(c)); }

ClovenFibration identity_fib(const FinCategory& c) {
  return ClovenFibration(identity_functor(c), make_cleavage([](const Arrow& f, ObjId) { return f; }));
}

// ---------------------------------------------------------------------------
// Family

std::shared_ptr<const CleavageImpl> family_opcleavage(const FinCategory& fam_total) {
  const FinCategory acat = pullback_along(fam_total).source();
  const FinCategory E = pullback_of(fam_total).source();
  return make_cleavage([fam_total, acat, E](const Arrow& u, ObjId o) {
    const FinCategory& X = arrow_category_base(acat);
    const auto [g, e] = pullback_object(fam_total, o);
    const Arrow ga = arrow_of(acat, g);
    const ObjId target = object_of(acat, X.compose(ga, u));
    const Arrow square = make_square(acat, g, target, X.identity(ga.src), u);
    return pullback_arrow_of(fam_total, square, E.identity(e));
  });
}

OpCloven family_opfibration(const ClovenFibration& p) {
  const ArrowCategory ac = arrow_category(p.base());
  const ClovenFibration pb = pullback_fib(p, ac.dom);
  return {compose(pb.functor(), ac.cod), family_opcleavage(pb.total())};
}

ClovenFibration family_fib(const ClovenFibration& p) {
  const ArrowCategory ac = arrow_category(p.base());
  const ClovenFibration cod = codomain_fib(ac);
  return compose_fib(pullback_fib(p, ac.dom), cod);
}

// ---------------------------------------------------------------------------
// Simple fibration over a skeleton

namespace {

class SimpleCategory final : public CategoryImpl {
 public:
  SimpleCategory(std::size_t icap, std::size_t fcap) : icap_(icap), fcap_(fcap) {}

  std::size_t object_count() const override { return (icap_ + 1) * (fcap_ + 1); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override {
    auto [i, x] = split(a);
    auto [j, y] = split(b);
    const std::uint64_t n = std::uint64_t{checked_pow(j, i)} * checked_pow(y, std::uint64_t{i} * x);
    if (n > 0xffffffffULL) throw CapExceeded(n, 0xffffffffULL, "simple hom-set");
    return static_cast<std::uint32_t>(n);
  }
  Arrow identity(ObjId a) const override {
    auto [i, x] = split(a);
    SimpleArrow s{identity_fn(i), projection(i, x)};
    return encode(a, a, s);
  }
  Arrow compose(const Arrow& a, const Arrow& b) const override {
    const SimpleArrow s = decode(a);
    const SimpleArrow t = decode(b);
    const auto [i, x] = split(a.src);
    const auto y = split(a.dst).second;
    const auto z = split(b.dst).second;
    SimpleArrow r;
    r.u = compose_fn(s.u, t.u);
    r.f.dom = i * x;
    r.f.cod = z;
    for (std::uint32_t p = 0; p < i * x; ++p) r.f.img[p] = t.f(s.u(p / x) * y + s.f(p));
    return encode(a.src, b.dst, r);
  }
  std::string object_label(ObjId a) const override {
    auto [i, x] = split(a);
    return "(" + std::to_string(i) + "," + std::to_string(x) + ")";
  }
  std::string arrow_label(const Arrow& a) const override {
    const SimpleArrow s = decode(a);
    return "(" + s.u.str() + "," + s.f.str() + ")";
  }

  std::pair<ObjId, ObjId> split(ObjId a) const {
    return {a / static_cast<ObjId>(fcap_ + 1), a % static_cast<ObjId>(fcap_ + 1)};
  }
  ObjId object(ObjId i, ObjId x) const {
    if (i > icap_ || x > fcap_) throw CapExceeded(std::max<std::size_t>(i, x), std::max(icap_, fcap_), "simple object");
    return i * static_cast<ObjId>(fcap_ + 1) + x;
  }
  static FnTable projection(std::uint32_t i, std::uint32_t x) {
    FnTable f;
    f.dom = i * x;
    f.cod = x;
    for (std::uint32_t p = 0; p < i * x; ++p) f.img[p] = static_cast<std::uint8_t>(p % x);
    return f;
  }
  SimpleArrow decode(const Arrow& a) const {
    auto [i, x] = split(a.src);
    auto [j, y] = split(a.dst);
    const std::uint32_t nu = checked_pow(j, i);
    return {decode_fn(a.index % nu, i, j), decode_fn(a.index / nu, i * x, y)};
  }
  Arrow encode(ObjId a, ObjId b, const SimpleArrow& s) const {
    auto [j, y] = split(b);
    const std::uint64_t nu = checked_pow(j, split(a).first);
    return {a, b, static_cast<std::uint32_t>(encode_fn(s.u) + nu * encode_fn(s.f))};
  }
  std::size_t icap() const { return icap_; }
  std::size_t fcap() const { return fcap_; }

 private:
  std::size_t icap_, fcap_;
};

const SimpleCategory& simple_impl(const FinCategory& c) {
  auto* s = dynamic_cast<const SimpleCategory*>(&c.impl());
  if (!s) throw StructuralError("not a simple fibration total");
  return *s;
}

class SimpleProjection final : public FunctorImpl {
 public:
  explicit SimpleProjection(const SimpleCategory* c) : c_(c) {}
  ObjId map_object(ObjId a) const override { return c_->split(a).first; }
  Arrow map_arrow(const Arrow& a) const override { return fn_arrow(c_->decode(a).u); }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory& src, ObjId a, ObjId b, const Arrow& u) const override {
    const std::uint32_t nu = checked_pow(c_->split(b).first, c_->split(a).first);
    const std::uint32_t total = src.hom_size(a, b);
    std::vector<Arrow> out;
    for (std::uint64_t k = u.index; k < total; k += nu) out.push_back({a, b, static_cast<std::uint32_t>(k)});
    return out;
  }

 private:
  const SimpleCategory* c_;
};

class ProductFunctor final : public FunctorImpl {
 public:
  ProductFunctor(const SimpleCategory* c, std::size_t target_cap) : c_(c), cap_(target_cap) {}
  ObjId map_object(ObjId a) const override {
    auto [i, x] = c_->split(a);
    if (i * x > cap_) throw CapExceeded(i * x, cap_, "product object");
    return i * x;
  }
  Arrow map_arrow(const Arrow& a) const override {
    const SimpleArrow s = c_->decode(a);
    const auto x = c_->split(a.src).second;
    const auto y = c_->split(a.dst).second;
    FnTable t;
    t.dom = map_object(a.src);
    t.cod = map_object(a.dst);
    for (std::uint32_t p = 0; p < t.dom; ++p) t.img[p] = static_cast<std::uint8_t>(s.u(p / x) * y + s.f(p));
    return fn_arrow(t);
  }

 private:
  const SimpleCategory* c_;
  std::size_t cap_;
};

}  // namespace

ClovenFibration simple_fib(const FinCategory& base, std::size_t fibre_cap) {
  auto cap = finset_cap(base);
  if (!cap) throw UnsupportedBase("simple_fib: the base must be a finite-set skeleton");
  auto impl = std::make_shared<SimpleCategory>(*cap, fibre_cap);
  const SimpleCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor s(total, base, std::make_shared<SimpleProjection>(raw));
  auto lift = [raw](const Arrow& u, ObjId d) {
    const ObjId y = raw->split(d).second;
    const ObjId src = raw->object(u.src, y);
    return raw->encode(src, d, {as_fn(u), SimpleCategory::projection(u.src, y)});
  };
  return ClovenFibration(s, make_cleavage(lift));
}

ClovenFibration simple_fib(std::size_t index_cap, std::size_t fibre_cap) {
  return simple_fib(finset(index_cap), fibre_cap);
}

ClovenFibration simple_fib(const FinCategory& c) {
  auto cap = finset_cap(c);
  if (!cap) throw UnsupportedBase("simple_fib: the base must be a finite-set skeleton");
  return simple_fib(c, *cap);
}

std::pair<ObjId, ObjId> simple_object(const FinCategory& skw, ObjId o) { return simple_impl(skw).split(o); }
ObjId simple_object_of(const FinCategory& skw, ObjId i, ObjId x) { return simple_impl(skw).object(i, x); }
SimpleArrow simple_arrow(const FinCategory& skw, const Arrow& a) { return simple_impl(skw).decode(a); }
Arrow simple_arrow_of(const FinCategory& skw, const SimpleArrow& a) {
  const SimpleCategory& c = simple_impl(skw);
  const ObjId x = a.u.dom ? a.f.dom / a.u.dom : 0;
  if (a.u.dom == 0) throw StructuralError("simple_arrow_of: fibre of an empty index is ambiguous");
  return c.encode(c.object(a.u.dom, x), c.object(a.u.cod, a.f.cod), a);
}

FinFunctor product_functor(const ClovenFibration& simple, const FinCategory& target) {
  auto cap = finset_cap(target);
  if (!cap) throw UnsupportedBase("product_functor: the target must be a finite-set skeleton");
  const SimpleCategory& c = simple_impl(simple.total());
  return FinFunctor(simple.total(), target, std::make_shared<ProductFunctor>(&c, *cap));
}

// ---------------------------------------------------------------------------
// Subobject fibration over a skeleton: subsets and preimages

namespace {

class SubsetCategory final : public CategoryImpl {
 public:
  explicit SubsetCategory(std::size_t cap) : cap_(cap) {
    if (cap > 20) throw CapExceeded(cap, 20, "subset skeleton");
  }
  std::size_t object_count() const override { return (std::size_t{2} << cap_) - 1; }
  std::uint32_t hom_size(ObjId a, ObjId b) const override {
    auto [A, S] = split(a);
    auto [B, T] = split(b);
    const auto s = static_cast<std::uint32_t>(std::popcount(S));
    const std::uint64_t n = std::uint64_t{checked_pow(std::popcount(T), s)} * checked_pow(B, A - s);
    if (n > 0xffffffffULL) throw CapExceeded(n, 0xffffffffULL, "subset hom-set");
    return static_cast<std::uint32_t>(n);
  }
  Arrow identity(ObjId a) const override { return encode(a, a, identity_fn(split(a).first)); }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    return encode(f.src, g.dst, compose_fn(decode(f), decode(g)));
  }
  std::string object_label(ObjId a) const override {
    auto [A, S] = split(a);
    std::string out = std::to_string(A) + "{";
    bool first = true;
    for (std::uint32_t i = 0; i < A; ++i)
      if (S >> i & 1) {
        out += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
    return out + "}";
  }
  std::string arrow_label(const Arrow& f) const override { return decode(f).str(); }

  std::pair<ObjId, std::uint32_t> split(ObjId o) const {
    ObjId a = 0;
    while (o >= (ObjId{1} << a)) o -= ObjId{1} << a++;
    return {a, o};
  }
  ObjId object(ObjId a, std::uint32_t mask) const { return (ObjId{1} << a) - 1 + mask; }

  FnTable decode(const Arrow& f) const {
    auto [A, S] = split(f.src);
    auto [B, T] = split(f.dst);
    std::vector<std::uint8_t> elems;
    for (std::uint32_t i = 0; i < B; ++i)
      if (T >> i & 1) elems.push_back(static_cast<std::uint8_t>(i));
    FnTable x;
    x.dom = A;
    x.cod = B;
    std::uint32_t code = f.index;
    for (std::uint32_t i = 0; i < A; ++i) {
      if (S >> i & 1) {
        x.img[i] = elems[code % elems.size()];
        code /= static_cast<std::uint32_t>(elems.size());
      } else {
        x.img[i] = static_cast<std::uint8_t>(code % B);
        code /= B;
      }
    }
    return x;
  }
  std::optional<Arrow> try_encode(ObjId a, ObjId b, const FnTable& x) const {
    auto [A, S] = split(a);
    auto [B, T] = split(b);
    std::uint64_t code = 0;
    for (std::uint32_t i = A; i-- > 0;) {
      if (S >> i & 1) {
        if (!(T >> x(i) & 1)) return std::nullopt;
        code = code * std::popcount(T) + std::popcount(T & ((1u << x(i)) - 1));
      } else {
        code = code * B + x(i);
      }
    }
    return Arrow{a, b, static_cast<std::uint32_t>(code)};
  }
  Arrow encode(ObjId a, ObjId b, const FnTable& x) const {
    auto r = try_encode(a, b, x);
    if (!r) throw StructuralError("subset map does not restrict: " + x.str());
    return *r;
  }

 private:
  std::size_t cap_;
};

const SubsetCategory& subset_impl(const FinCategory& c) {
  auto* s = dynamic_cast<const SubsetCategory*>(&c.impl());
  if (!s) throw StructuralError("not a subset fibration total");
  return *s;
}

class SubsetProjection final : public FunctorImpl {
 public:
  explicit SubsetProjection(const SubsetCategory* c) : c_(c) {}
  ObjId map_object(ObjId a) const override { return c_->split(a).first; }
  Arrow map_arrow(const Arrow& f) const override { return fn_arrow(c_->decode(f)); }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& x) const override {
    auto r = c_->try_encode(a, b, as_fn(x));
    if (!r) return {};
    return {*r};
  }

 private:
  const SubsetCategory* c_;
};

}  // namespace

ClovenFibration subobject_fib(const FinCategory& skeleton) {
  auto cap = finset_cap(skeleton);
  if (!cap) return subobject_fib_generic(skeleton);
  auto impl = std::make_shared<SubsetCategory>(*cap);
  const SubsetCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor p(total, skeleton, std::make_shared<SubsetProjection>(raw));
  auto lift = [raw](const Arrow& u, ObjId d) {
    const FnTable x = as_fn(u);
    const std::uint32_t T = raw->split(d).second;
    std::uint32_t pre = 0;
    for (std::uint32_t i = 0; i < x.dom; ++i)
      if (T >> x(i) & 1) pre |= 1u << i;
    return raw->encode(raw->object(x.dom, pre), d, x);
  };
  return ClovenFibration(p, make_cleavage(lift));
}

ClovenFibration subobject_fib(std::size_t cap) { return subobject_fib(finset(cap)); }

std::pair<ObjId, std::uint32_t> subset_object(const FinCategory& sub, ObjId o) { return subset_impl(sub).split(o); }
ObjId subset_object_of(const FinCategory& sub, ObjId a, std::uint32_t mask) {
  return subset_impl(sub).object(a, mask);
}

// ---------------------------------------------------------------------------
// Subobject fibration over a general base

namespace {

class SubobjectCategory final : public CategoryImpl {
 public:
  explicit SubobjectCategory(FinCategory c) : c_(std::move(c)) {
    for (ObjId a : c_.objects()) {
      posets_.push_back(subobject_poset(c_, a));
      for (std::size_t i = 0; i < posets_.back().classes.size(); ++i) objects_.emplace_back(a, i);
    }
  }
  std::size_t object_count() const override { return objects_.size(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override { return static_cast<std::uint32_t>(list(a, b).size()); }
  Arrow identity(ObjId a) const override { return local(a, a, c_.identity(objects_[a].first)); }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    return local(f.src, g.dst, c_.compose(underlying(f), underlying(g)));
  }
  std::string object_label(ObjId a) const override {
    return c_.object_label(objects_[a].first) + "<" + c_.arrow_label(mono(a)) + ">";
  }
  std::string arrow_label(const Arrow& f) const override { return c_.arrow_label(underlying(f)); }

  const Arrow& mono(ObjId a) const { return posets_[objects_[a].first].classes[objects_[a].second].representative; }
  Arrow underlying(const Arrow& f) const {
    return {objects_[f.src].first, objects_[f.dst].first, list(f.src, f.dst)[f.index]};
  }
  std::optional<Arrow> try_local(ObjId a, ObjId b, const Arrow& x) const {
    const auto& l = list(a, b);
    auto it = std::lower_bound(l.begin(), l.end(), x.index);
    if (it == l.end() || *it != x.index) return std::nullopt;
    return Arrow{a, b, static_cast<std::uint32_t>(it - l.begin())};
  }
  Arrow local(ObjId a, ObjId b, const Arrow& x) const {
    auto r = try_local(a, b, x);
    if (!r) throw StructuralError("subobject map does not restrict");
    return *r;
  }
  ObjId object_for_mono(const Arrow& m) const {
    const auto cls = posets_[m.dst].class_of(m);
    if (!cls) throw StructuralError("not a mono: " + c_.arrow_label(m));
    auto it = std::find(objects_.begin(), objects_.end(), std::make_pair(m.dst, *cls));
    return static_cast<ObjId>(it - objects_.begin());
  }
  ObjId carrier(ObjId a) const { return objects_[a].first; }
  const FinCategory& base() const { return c_; }

 private:
  const std::vector<std::uint32_t>& list(ObjId a, ObjId b) const {
    return homs_.get(a, b, [&] {
      std::vector<std::uint32_t> out;
      for (const Arrow& x : c_.hom(objects_[a].first, objects_[b].first))
        if (factor_through(c_, c_.compose(mono(a), x), mono(b))) out.push_back(x.index);
      return out;
    });
  }

  FinCategory c_;
  std::vector<SubobjectPoset> posets_;
  std::vector<std::pair<ObjId, std::size_t>> objects_;
  PairCache<std::vector<std::uint32_t>> homs_;
};

class SubobjectProjection final : public FunctorImpl {
 public:
  explicit SubobjectProjection(const SubobjectCategory* c) : c_(c) {}
  ObjId map_object(ObjId a) const override { return c_->carrier(a); }
  Arrow map_arrow(const Arrow& f) const override { return c_->underlying(f); }
  bool indexed() const override { return true; }
  std::vector<Arrow> arrows_over(const FinCategory&, ObjId a, ObjId b, const Arrow& x) const override {
    auto r = c_->try_local(a, b, x);
    if (!r) return {};
    return {*r};
  }

 private:
  const SubobjectCategory* c_;
};

}  // namespace

ClovenFibration subobject_fib_generic(const FinCategory& c) {
  auto impl = std::make_shared<SubobjectCategory>(c);
  const SubobjectCategory* raw = impl.get();
  FinCategory total(impl);
  FinFunctor p(total, c, std::make_shared<SubobjectProjection>(raw));
  c.for_each_arrow([&](const Arrow& x) {
    for (ObjId b : total.objects())
      if (raw->carrier(b) == x.dst && !pullback(c, x, raw->mono(b)))
        throw UnsupportedBase("no pullback of " + c.arrow_label(x) + " and " + c.arrow_label(raw->mono(b)));
  });
  auto lift = [raw](const Arrow& x, ObjId b) {
    const Cone cone = pullback(raw->base(), x, raw->mono(b)).value();
    return raw->local(raw->object_for_mono(cone.legs[0]), b, x);
  };
  return ClovenFibration(p, make_cleavage(lift));
}

// ---------------------------------------------------------------------------
// Lenses

ClovenFibration simple_lenses(std::size_t cap) { return dual_fibration(simple_fib(cap, cap)); }
ClovenFibration dependent_lenses(const FinCategory& c) { return dual_fibration(codomain_fib(c)); }

}  // namespace dialens
