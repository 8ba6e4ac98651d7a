#include "dialens/finset.hpp"

#include <sstream>

namespace dialens {

bool FnTable::injective() const {
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < dom; ++i) {
    if (seen & (std::uint64_t{1} << img[i])) return false;
    seen |= std::uint64_t{1} << img[i];
  }
  return true;
}

std::string FnTable::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dom; ++i) os << (i ? "," : "") << int(img[i]);
  os << ']';
  return os.str();
}

std::uint32_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > 0xffffffffULL) throw CapExceeded(r, 0xffffffffULL, "hom-set size");
    if (r == 0) return 0;
  }
  return static_cast<std::uint32_t>(r);
}

FnTable decode_fn(std::uint32_t code, std::uint32_t dom, std::uint32_t cod) {
  if (dom > FnTable::kMaxDomain) throw CapExceeded(dom, FnTable::kMaxDomain, "function domain");
  FnTable f;
  f.dom = dom;
  f.cod = cod;
  for (std::uint32_t i = 0; i < dom; ++i) {
    f.img[i] = static_cast<std::uint8_t>(code % cod);
    code /= cod;
  }
  return f;
}

std::uint32_t encode_fn(const FnTable& f) {
  std::uint64_t code = 0;
  for (std::uint32_t i = f.dom; i-- > 0;) code = code * f.cod + f.img[i];
  return static_cast<std::uint32_t>(code);
}

FnTable identity_fn(std::uint32_t n) {
  if (n > FnTable::kMaxDomain) throw CapExceeded(n, FnTable::kMaxDomain, "function domain");
  FnTable f;
  f.dom = f.cod = n;
  for (std::uint32_t i = 0; i < n; ++i) f.img[i] = static_cast<std::uint8_t>(i);
  return f;
}

FnTable compose_fn(const FnTable& f, const FnTable& g) {
  FnTable h;
  h.dom = f.dom;
  h.cod = g.cod;
  for (std::uint32_t i = 0; i < f.dom; ++i) h.img[i] = g.img[f.img[i]];
  return h;
}

namespace {

class FinSetSkeleton final : public CategoryImpl {
 public:
  explicit FinSetSkeleton(std::size_t cap) : cap_(cap) {
    if (cap > FnTable::kMaxDomain) throw CapExceeded(cap, FnTable::kMaxDomain, "finset skeleton");
  }
  std::size_t object_count() const override { return cap_ + 1; }
  std::uint32_t hom_size(ObjId a, ObjId b) const override { return checked_pow(b, a); }
  Arrow identity(ObjId a) const override { return fn_arrow(identity_fn(a)); }
  Arrow compose(const Arrow& f, const Arrow& g) const override { return fn_arrow(compose_fn(as_fn(f), as_fn(g))); }
  std::string arrow_label(const Arrow& f) const override {
    return std::to_string(f.src) + "->" + std::to_string(f.dst) + as_fn(f).str();
  }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace

FnTable as_fn(const Arrow& f) { return decode_fn(f.index, f.src, f.dst); }
Arrow fn_arrow(const FnTable& f) { return {f.dom, f.cod, encode_fn(f)}; }

FinCategory finset(std::size_t cap) { return FinCategory(std::make_shared<FinSetSkeleton>(cap)); }

std::optional<std::size_t> finset_cap(const FinCategory& c) {
  if (auto* s = dynamic_cast<const FinSetSkeleton*>(&c.impl())) return s->cap();
  return std::nullopt;
}

FinCategory finset_injections(std::size_t cap) {
  FinCategory f = finset(cap);
  std::vector<ObjId> objs;
  for (ObjId a : f.objects()) objs.push_back(a);
  return subcategory(f, objs, [](const Arrow& a) { return as_fn(a).injective(); }, "FInj");
}

}  // namespace dialens
