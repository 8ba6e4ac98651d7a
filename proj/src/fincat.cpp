#include "dialens/fincat.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace dialens {

std::string to_string(const Arrow& a) {
  return std::to_string(a.src) + "->" + std::to_string(a.dst) + "#" + std::to_string(a.index);
}

CapExceeded::CapExceeded(std::size_t size, std::size_t cap, const std::string& what)
    : std::runtime_error("cap exceeded: " + what + " needs size " + std::to_string(size) + " > cap " +
                         std::to_string(cap)),
      size_(size),
      cap_(cap) {}

bool LawReport::has_structural() const {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.kind == Violation::Kind::kStructural; });
}

void LawReport::law(std::string name, std::string witness) {
  violations.push_back({Violation::Kind::kLaw, std::move(name), std::move(witness)});
}

void LawReport::structural(std::string name, std::string witness) {
  violations.push_back({Violation::Kind::kStructural, std::move(name), std::move(witness)});
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  for (auto v : other.violations) {
    if (!prefix.empty()) v.law = prefix + ": " + v.law;
    violations.push_back(std::move(v));
  }
}

std::string CategoryImpl::arrow_label(const Arrow& f) const {
  return object_label(f.src) + "->" + object_label(f.dst) + "#" + std::to_string(f.index);
}

std::uint32_t FinCategory::hom_size(ObjId a, ObjId b) const {
  if (a >= object_count() || b >= object_count())
    throw StructuralError("object out of range: " + std::to_string(std::max(a, b)));
  return impl_->hom_size(a, b);
}

Arrow FinCategory::identity(ObjId a) const {
  if (a >= object_count()) throw StructuralError("object out of range: " + std::to_string(a));
  return impl_->cached_identity(a);
}

Arrow CategoryImpl::cached_identity(ObjId a) const {
  constexpr std::size_t kMaxCached = std::size_t{1} << 20;
  std::call_once(ids_once_, [&] {
    if (object_count() <= kMaxCached) ids_ = std::make_unique<LazySlots<Arrow>>(object_count());
  });
  if (!ids_) return identity(a);
  return ids_->get(a, [&] { return identity(a); });
}

Arrow FinCategory::compose(const Arrow& f, const Arrow& g) const {
  if (f.dst != g.src)
    throw StructuralError("not composable: " + arrow_label(f) + " then " + arrow_label(g));
  return impl_->compose(f, g);
}

Arrow FinCategory::compose(std::initializer_list<Arrow> chain) const {
  auto it = chain.begin();
  Arrow acc = *it++;
  for (; it != chain.end(); ++it) acc = compose(acc, *it);
  return acc;
}

bool FinCategory::contains(const Arrow& f) const {
  return f.src < object_count() && f.dst < object_count() && f.index < impl_->hom_size(f.src, f.dst);
}

std::uint64_t FinCategory::arrow_count() const {
  std::uint64_t n = 0;
  for (ObjId a : objects())
    for (ObjId b : objects()) n += hom_size(a, b);
  return n;
}

std::optional<ObjId> FinCategory::find_object(const std::string& label) const {
  for (ObjId a : objects())
    if (object_label(a) == label) return a;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Table categories

namespace {

class TableCategory final : public CategoryImpl {
 public:
  explicit TableCategory(const CategoryTable& t) {
    std::unordered_map<std::string, ObjId> obj_index;
    for (const auto& o : t.objects) {
      if (!obj_index.emplace(o, static_cast<ObjId>(objects_.size())).second)
        throw StructuralError("duplicate object id '" + o + "'");
      objects_.push_back(o);
    }
    const std::size_t n = objects_.size();
    homs_.assign(n * n, {});
    for (const auto& m : t.morphisms) {
      auto s = obj_index.find(m.src);
      auto d = obj_index.find(m.dst);
      if (s == obj_index.end() || d == obj_index.end())
        throw StructuralError("morphism '" + m.id + "' references unknown object");
      auto& hom = homs_[s->second * n + d->second];
      Arrow a{s->second, d->second, static_cast<std::uint32_t>(hom.size())};
      if (!arrow_index_.emplace(m.id, a).second)
        throw StructuralError("duplicate morphism id '" + m.id + "'");
      hom.push_back(m.id);
    }
    identities_.assign(n, std::nullopt);
    for (const auto& [o, m] : t.identities) {
      auto oi = obj_index.find(o);
      if (oi == obj_index.end()) throw StructuralError("identity for unknown object '" + o + "'");
      auto a = lookup(m);
      if (a.src != oi->second || a.dst != oi->second)
        defects_.push_back({Violation::Kind::kStructural, "identity typing",
                            "identity of " + o + " is " + m + " which is not an endomorphism of " + o});
      identities_[oi->second] = a;
    }
    for (ObjId o = 0; o < n; ++o)
      if (!identities_[o])
        defects_.push_back({Violation::Kind::kStructural, "missing identity", "object " + objects_[o]});
    for (const auto& e : t.compose) {
      Arrow f = lookup(e.f), g = lookup(e.g), r = lookup(e.result);
      if (f.dst != g.src) {
        defects_.push_back({Violation::Kind::kStructural, "composite on non-composable pair",
                            e.f + " ; " + e.g});
        continue;
      }
      if (r.src != f.src || r.dst != g.dst) {
        defects_.push_back({Violation::Kind::kStructural, "composite typing",
                            e.f + " ; " + e.g + " = " + e.result});
        continue;
      }
      if (!table_.emplace(key(f, g), r.index).second)
        defects_.push_back({Violation::Kind::kStructural, "duplicate composite", e.f + " ; " + e.g});
    }
  }

  std::size_t object_count() const override { return objects_.size(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override {
    return static_cast<std::uint32_t>(homs_[a * objects_.size() + b].size());
  }
  Arrow identity(ObjId a) const override {
    if (!identities_[a]) throw StructuralError("missing identity for " + objects_[a]);
    return *identities_[a];
  }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    auto it = table_.find(key(f, g));
    if (it == table_.end())
      throw StructuralError("composite undefined: " + arrow_label(f) + " ; " + arrow_label(g));
    return {f.src, g.dst, it->second};
  }
  std::string object_label(ObjId a) const override { return objects_[a]; }
  std::string arrow_label(const Arrow& f) const override {
    return homs_[f.src * objects_.size() + f.dst][f.index];
  }
  std::vector<Violation> structural_errors() const override {
    auto out = defects_;
    const std::size_t n = objects_.size();
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b)
        for (ObjId c = 0; c < n; ++c)
          for (std::uint32_t i = 0; i < hom_size(a, b); ++i)
            for (std::uint32_t j = 0; j < hom_size(b, c); ++j)
              if (!table_.count(key({a, b, i}, {b, c, j})))
                out.push_back({Violation::Kind::kStructural, "missing composite",
                               arrow_label({a, b, i}) + " ; " + arrow_label({b, c, j})});
    return out;
  }

 private:
  Arrow lookup(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) throw StructuralError("unknown morphism id '" + id + "'");
    return it->second;
  }
  std::uint64_t key(const Arrow& f, const Arrow& g) const {
    // Triple (src f, dst f = src g, dst g) plus both positions; tables are small.
    const std::uint64_t n = objects_.size();
    return (((std::uint64_t{f.src} * n + f.dst) * n + g.dst) << 40) ^ (std::uint64_t{f.index} << 20) ^ g.index;
  }

  std::vector<std::string> objects_;
  std::vector<std::vector<std::string>> homs_;
  std::unordered_map<std::string, Arrow> arrow_index_;
  std::vector<std::optional<Arrow>> identities_;
  std::unordered_map<std::uint64_t, std::uint32_t> table_;
  std::vector<Violation> defects_;
};

// ---------------------------------------------------------------------------

class Subcategory final : public CategoryImpl {
 public:
  Subcategory(FinCategory parent, std::vector<ObjId> objects, std::function<bool(const Arrow&)> keep,
              std::string name)
      : parent_(std::move(parent)),
        objects_(std::move(objects)),
        keep_(std::move(keep)),
        name_(std::move(name)) {}

  std::size_t object_count() const override { return objects_.size(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override {
    return static_cast<std::uint32_t>(list(a, b).size());
  }
  Arrow identity(ObjId a) const override { return local(a, a, parent_.identity(objects_[a])); }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    return local(f.src, g.dst, parent_.compose(lift(f), lift(g)));
  }
  std::string object_label(ObjId a) const override { return parent_.object_label(objects_[a]); }
  std::string arrow_label(const Arrow& f) const override { return parent_.arrow_label(lift(f)); }

  Arrow lift(const Arrow& f) const { return {objects_[f.src], objects_[f.dst], list(f.src, f.dst)[f.index]}; }
  ObjId parent_object(ObjId a) const { return objects_[a]; }
  std::optional<ObjId> local_object(ObjId p) const {
    auto it = std::find(objects_.begin(), objects_.end(), p);
    if (it == objects_.end()) return std::nullopt;
    return static_cast<ObjId>(it - objects_.begin());
  }
  std::optional<Arrow> restrict(const Arrow& p) const {
    auto a = local_object(p.src), b = local_object(p.dst);
    if (!a || !b) return std::nullopt;
    const auto& l = list(*a, *b);
    auto it = std::lower_bound(l.begin(), l.end(), p.index);
    if (it == l.end() || *it != p.index) return std::nullopt;
    return Arrow{*a, *b, static_cast<std::uint32_t>(it - l.begin())};
  }

 private:
  const std::vector<std::uint32_t>& list(ObjId a, ObjId b) const {
    return homs_.get(a, b, [&] {
      std::vector<std::uint32_t> out;
      for (const Arrow& f : parent_.hom(objects_[a], objects_[b]))
        if (keep_(f)) out.push_back(f.index);
      return out;
    });
  }
  Arrow local(ObjId a, ObjId b, const Arrow& p) const {
    const auto& l = list(a, b);
    auto it = std::lower_bound(l.begin(), l.end(), p.index);
    if (it == l.end() || *it != p.index)
      throw StructuralError("subcategory not closed under composition at " + parent_.arrow_label(p));
    return {a, b, static_cast<std::uint32_t>(it - l.begin())};
  }

  FinCategory parent_;
  std::vector<ObjId> objects_;
  std::function<bool(const Arrow&)> keep_;
  std::string name_;
  PairCache<std::vector<std::uint32_t>> homs_;
};

class Opposite final : public CategoryImpl {
 public:
  explicit Opposite(FinCategory base) : base_(std::move(base)) {}
  std::size_t object_count() const override { return base_.object_count(); }
  std::uint32_t hom_size(ObjId a, ObjId b) const override { return base_.hom_size(b, a); }
  Arrow identity(ObjId a) const override { return flip(base_.identity(a)); }
  Arrow compose(const Arrow& f, const Arrow& g) const override {
    return flip(base_.compose(flip(g), flip(f)));
  }
  std::string object_label(ObjId a) const override { return base_.object_label(a); }
  std::string arrow_label(const Arrow& f) const override { return base_.arrow_label(flip(f)) + "^op"; }
  const FinCategory& base() const { return base_; }
  static Arrow flip(const Arrow& f) { return {f.dst, f.src, f.index}; }

 private:
  FinCategory base_;
};

}  // namespace

FinCategory make_table_category(const CategoryTable& table) {
  return FinCategory(std::make_shared<TableCategory>(table));
}

std::unordered_map<Arrow, std::string, ArrowHash> arrow_ids(const FinCategory& c) {
  std::unordered_map<std::string, std::size_t> uses;
  c.for_each_arrow([&](const Arrow& f) { ++uses[c.arrow_label(f)]; });
  std::unordered_map<Arrow, std::string, ArrowHash> out;
  c.for_each_arrow([&](const Arrow& f) {
    std::string l = c.arrow_label(f);
    if (uses[l] > 1) l += "@" + c.object_label(f.src) + "->" + c.object_label(f.dst);
    out.emplace(f, std::move(l));
  });
  return out;
}

CategoryTable to_table(const FinCategory& c) {
  const auto ids = arrow_ids(c);
  auto id = [&](const Arrow& f) { return ids.at(f); };
  CategoryTable t;
  for (ObjId a : c.objects()) t.objects.push_back(c.object_label(a));
  c.for_each_arrow([&](const Arrow& f) { t.morphisms.push_back({id(f), c.object_label(f.src), c.object_label(f.dst)}); });
  for (ObjId a : c.objects()) t.identities.emplace_back(c.object_label(a), id(c.identity(a)));
  c.for_each_arrow([&](const Arrow& f) {
    for (ObjId d : c.objects())
      for (const Arrow& g : c.hom(f.dst, d)) t.compose.push_back({id(f), id(g), id(c.compose(f, g))});
  });
  return t;
}

FinCategory subcategory(const FinCategory& parent, std::vector<ObjId> objects,
                        std::function<bool(const Arrow&)> keep, std::string name) {
  return FinCategory(std::make_shared<Subcategory>(parent, std::move(objects), std::move(keep), std::move(name)));
}

Arrow subcategory_inclusion(const FinCategory& sub, const Arrow& f) {
  auto* s = dynamic_cast<const Subcategory*>(&sub.impl());
  if (!s) throw StructuralError("not a subcategory");
  return s->lift(f);
}

ObjId subcategory_object(const FinCategory& sub, ObjId a) {
  auto* s = dynamic_cast<const Subcategory*>(&sub.impl());
  if (!s) throw StructuralError("not a subcategory");
  return s->parent_object(a);
}

std::optional<ObjId> subcategory_local_object(const FinCategory& sub, ObjId parent_object) {
  auto* s = dynamic_cast<const Subcategory*>(&sub.impl());
  if (!s) throw StructuralError("not a subcategory");
  return s->local_object(parent_object);
}

std::optional<Arrow> subcategory_restrict(const FinCategory& sub, const Arrow& parent_arrow) {
  auto* s = dynamic_cast<const Subcategory*>(&sub.impl());
  if (!s) throw StructuralError("not a subcategory");
  return s->restrict(parent_arrow);
}

FinCategory opposite(const FinCategory& c) {
  if (auto* op = dynamic_cast<const Opposite*>(&c.impl())) return op->base();
  const CategoryImpl& impl = c.impl();
  std::lock_guard lock(impl.op_mu_);
  if (auto cached = impl.op_.lock()) return FinCategory(cached);
  auto made = std::make_shared<Opposite>(c);
  impl.op_ = made;
  return FinCategory(made);
}

LawReport check_category(const FinCategory& c) {
  LawReport report;
  for (auto& v : c.impl().structural_errors()) report.violations.push_back(v);
  if (report.has_structural()) return report;
  try {
    c.for_each_arrow([&](const Arrow& f) {
      if (c.compose(c.identity(f.src), f) != f)
        report.law("identity law", "id_" + c.object_label(f.src) + " ; " + c.arrow_label(f) + " != " + c.arrow_label(f));
      if (c.compose(f, c.identity(f.dst)) != f)
        report.law("identity law", c.arrow_label(f) + " ; id_" + c.object_label(f.dst) + " != " + c.arrow_label(f));
    });
    c.for_each_arrow([&](const Arrow& f) {
      for (ObjId x : c.objects())
        for (const Arrow& g : c.hom(f.dst, x)) {
          const Arrow fg = c.compose(f, g);
          for (ObjId y : c.objects())
            for (const Arrow& h : c.hom(x, y))
              if (c.compose(fg, h) != c.compose(f, c.compose(g, h)))
                report.law("associativity", c.arrow_label(f) + ", " + c.arrow_label(g) + ", " + c.arrow_label(h));
        }
    });
  } catch (const StructuralError& e) {
    report.structural("composition", e.what());
  }
  return report;
}

bool categories_equal(const FinCategory& a, const FinCategory& b) {
  if (a.object_count() != b.object_count()) return false;
  for (ObjId x : a.objects())
    for (ObjId y : a.objects())
      if (a.hom_size(x, y) != b.hom_size(x, y)) return false;
  for (ObjId x : a.objects())
    if (a.identity(x) != b.identity(x)) return false;
  bool equal = true;
  a.for_each_arrow([&](const Arrow& f) {
    if (!equal) return;
    for (ObjId z : a.objects())
      for (const Arrow& g : a.hom(f.dst, z))
        if (a.compose(f, g) != b.compose(f, g)) {
          equal = false;
          return;
        }
  });
  return equal;
}

FinCategory discrete_category(std::vector<std::string> objects) {
  CategoryTable t;
  t.objects = objects;
  for (const auto& o : objects) {
    t.morphisms.push_back({"id_" + o, o, o});
    t.identities.emplace_back(o, "id_" + o);
    t.compose.push_back({"id_" + o, "id_" + o, "id_" + o});
  }
  return make_table_category(t);
}

FinCategory poset_category(std::vector<std::string> objects, const std::vector<std::vector<bool>>& leq) {
  CategoryTable t;
  t.objects = objects;
  const std::size_t n = objects.size();
  auto name = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + objects[i] : objects[i] + "<=" + objects[j];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) t.morphisms.push_back({name(i, j), objects[i], objects[j]});
  for (std::size_t i = 0; i < n; ++i) t.identities.emplace_back(objects[i], name(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (leq[i][j] && leq[j][k]) t.compose.push_back({name(i, j), name(j, k), name(i, k)});
  return make_table_category(t);
}

FinCategory walking_arrow() {
  CategoryTable t;
  t.objects = {"a", "b"};
  t.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"u", "a", "b"}};
  t.identities = {{"a", "id_a"}, {"b", "id_b"}};
  t.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"id_a", "u", "u"}, {"u", "id_b", "u"}};
  return make_table_category(t);
}

FinCategory monoid_category(const std::vector<std::vector<std::size_t>>& mult, std::size_t unit,
                            std::vector<std::string> labels) {
  const std::size_t n = mult.size();
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i));
  CategoryTable t;
  t.objects = {"*"};
  for (std::size_t i = 0; i < n; ++i) t.morphisms.push_back({labels[i], "*", "*"});
  t.identities = {{"*", labels[unit]}};
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) t.compose.push_back({labels[f], labels[g], labels[mult[g][f]]});
  return make_table_category(t);
}

}  // namespace dialens
