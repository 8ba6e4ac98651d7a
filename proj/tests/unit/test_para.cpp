#include "doctest.h"

#include "dialens/instances.hpp"

using namespace dialens;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// |Hom(a, b)| in F-cap or in a discrete category, counted from scratch.
std::uint64_t hom_count(const FinCategory& c, ObjId a, ObjId b) {
  if (finset_cap(c)) return ipow(b, a);
  return a == b ? 1 : 0;
}

}  // namespace

TEST_CASE("actions") {
  CHECK(check_action(trivial_action(z2(), finset(2))).ok());
  CHECK(check_action(swap_conjugation(3)).ok());
  CHECK(check_action(swap_discrete()).ok());
  MonoidAction broken = swap_discrete();
  broken.on_objects = [](std::size_t, ObjId x) { return x; };
  CHECK_FALSE(check_action(broken).ok());
}

TEST_CASE("BM and Para") {
  const Monoid m = z2();
  const FinCategory bm = bmonoid(m);
  CHECK(check_category(bm).ok());
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(bm.compose(Arrow{0, 0, static_cast<std::uint32_t>(a)}, Arrow{0, 0, static_cast<std::uint32_t>(b)}).index ==
            m.mult[b][a]);

  const OpCloven p = para(trivial_action(m, finset(2)), bm);
  CHECK(p.functor.source().hom_size(2, 2) == 8);
  CHECK(check_category(p.functor.source()).ok());
  CHECK(check_opfibration(p.functor, p.opcleavage).ok());
  for (ObjId x = 0; x <= 2; ++x) CHECK(is_opcartesian(p.functor, p.opcleavage->lift(Arrow{0, 0, 1}, x)));

  for (const auto& a : {swap_conjugation(2), swap_discrete()}) {
    const OpCloven q = para(a, bm);
    CHECK(check_category(q.functor.source()).ok());
    CHECK(check_opfibration(q.functor, q.opcleavage).ok());
  }

  const OpCloven t = para(trivial_action(trivial_monoid(), finset(2)), bmonoid(trivial_monoid()));
  const FinCategory& T = t.functor.source();
  const FinCategory C = finset(2);
  for (ObjId a : C.objects())
    for (ObjId b : C.objects()) {
      REQUIRE(T.hom_size(a, b) == C.hom_size(a, b));
      for (const Arrow& f : T.hom(a, b)) CHECK(para_arrow(T, f).map == Arrow{a, b, f.index});
    }
}

TEST_CASE("preoptic counts") {
  const std::vector<std::pair<MonoidAction, MonoidAction>> cases = {
      {trivial_action(z2(), finset(2)), trivial_action(z2(), finset(2))},
      {swap_discrete(), trivial_action(z2(), finset(2))},
      {swap_conjugation(2), swap_discrete()},
  };
  for (const auto& [c, d] : cases) {
    const Preoptics p = preoptics(c, d);
    CHECK(check_tower(p.tower).ok());
    CHECK(check_tower(p.dual).ok());
    for (ObjId o1 : p.category.objects())
      for (ObjId o2 : p.category.objects()) {
        auto [a, b] = preoptic_object(p, o1);
        auto [s, t] = preoptic_object(p, o2);
        std::uint64_t expected = 0;
        for (std::size_t m = 0; m < 2; ++m)
          expected += hom_count(c.carrier, a, c.on_objects(m, s)) * hom_count(d.carrier, d.on_objects(m, t), b);
        CHECK(p.category.hom_size(o1, o2) == expected);
      }
    auto r = check_preoptic_bijection(p);
    CHECK(r.report.ok());
    CHECK(r.composites > 0);
  }
  const Preoptics p = preoptics(trivial_action(z2(), finset(2)), trivial_action(z2(), finset(2)));
  const ObjId o = preoptic_object_of(p, 2, 2);
  CHECK(p.category.hom_size(o, o) == 32);
}

TEST_CASE("trivial monoid preoptics are pairs of maps") {
  const Preoptics p = preoptics(trivial_action(trivial_monoid(), finset(2)), trivial_action(trivial_monoid(), finset(2)));
  for (ObjId o1 : p.category.objects())
    for (ObjId o2 : p.category.objects()) {
      auto [a, b] = preoptic_object(p, o1);
      auto [s, t] = preoptic_object(p, o2);
      CHECK(p.category.hom_size(o1, o2) == ipow(s, a) * ipow(b, t));
    }
}

TEST_CASE("mismatched monoids") {
  CHECK_THROWS_AS(preoptics(trivial_action(z2(), finset(1)), trivial_action(trivial_monoid(), finset(1))),
                  StructuralError);
}
