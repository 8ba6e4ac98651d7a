#include "doctest.h"

#include "dialens/instances.hpp"

using namespace dialens;

namespace {

const SkeletonFibration kSub = [](const FinCategory& c) { return subobject_fib(c); };

// Advances a base-n odometer; false once it wraps.
bool next(std::vector<std::uint32_t>& d, std::uint32_t n) {
  for (auto& x : d) {
    if (++x < n) return true;
    x = 0;
  }
  return false;
}

// Triples (f0, f, f♯) with α(i, x, f♯(i, x, v)) ⊆ β(f0 i, f(i, x), v).
std::uint64_t hofstra_oracle(std::uint32_t I, std::uint32_t X, std::uint32_t U, std::uint32_t alpha, std::uint32_t J,
                             std::uint32_t Y, std::uint32_t V, std::uint32_t beta) {
  if ((I > 0 && J == 0) || (I * X > 0 && Y == 0) || (I * X * V > 0 && U == 0)) return 0;
  std::uint64_t count = 0;
  std::vector<std::uint32_t> f0(I, 0);
  do {
    std::vector<std::uint32_t> f(I * X, 0);
    do {
      std::vector<std::uint32_t> s(I * X * V, 0);
      do {
        bool ok = true;
        for (std::uint32_t i = 0; i < I && ok; ++i)
          for (std::uint32_t x = 0; x < X && ok; ++x)
            for (std::uint32_t v = 0; v < V && ok; ++v) {
              const std::uint32_t ix = i * X + x;
              if ((alpha >> (ix * U + s[ix * V + v]) & 1) && !(beta >> ((f0[i] * Y + f[ix]) * V + v) & 1)) ok = false;
            }
        count += ok;
      } while (next(s, U));
    } while (next(f, Y));
  } while (next(f0, J));
  return count;
}

std::uint32_t mask_of(const Hofstra& h, ObjId alpha) {
  const FinCategory& pred = pullback_of(pullback_of(h.tower.category(3)).source()).source();
  return subset_object(pred, alpha).second;
}

}  // namespace

TEST_CASE("sum completion of the identity fibration is the simple fibration") {
  const SkeletonFibration id = [](const FinCategory& c) { return identity_fib(c); };
  auto s = sum_completion(id, 2, 2);
  auto simple = simple_fib(2, 2);
  CHECK(check_fibration(s).ok());
  CHECK(s.total().object_count() == simple.total().object_count());
  for (ObjId a : s.total().objects())
    for (ObjId b : s.total().objects()) CHECK(s.total().hom_size(a, b) == simple.total().hom_size(a, b));
}

TEST_CASE("sum completion has simple sums but is not an opfibration") {
  auto s = sum_completion(kSub, 2, 2);
  CHECK(check_fibration(s).ok());
  CHECK(check_simple_sums(s).ok());
  CHECK_FALSE(check_opfibration(s.functor(), find_opcleavage(s.functor())).ok());
}

TEST_CASE("hofstra dial over one index") {
  const Hofstra h = hofstra_dial(kSub, 1, 2);
  CHECK(check_tower(h.dual).ok());
  CHECK(h.category().object_count() == 40);
  auto r = check_hofstra_parts(h);
  CHECK(r.report.ok());
  CHECK(r.objects == 40);
  const FinCategory& D = h.category();
  for (ObjId a : D.objects())
    for (ObjId b : D.objects()) {
      auto s = hofstra_object(h, a), t = hofstra_object(h, b);
      CHECK(D.hom_size(a, b) ==
            hofstra_oracle(s.i, s.x, s.u, mask_of(h, s.alpha), t.i, t.x, t.u, mask_of(h, t.alpha)));
    }
}

TEST_CASE("hofstra dial with one index is dialectica") {
  const Hofstra h = hofstra_dial(kSub, 1, 2);
  const Dialectica d = dialectica(2);
  for (ObjId a : h.category().objects())
    for (ObjId b : h.category().objects()) {
      auto s = hofstra_object(h, a), t = hofstra_object(h, b);
      if (s.i != 1 || t.i != 1) continue;
      const ObjId da = dialectica_object_of(d, {s.x, s.u, mask_of(h, s.alpha)});
      const ObjId db = dialectica_object_of(d, {t.x, t.u, mask_of(h, t.alpha)});
      CHECK(h.category().hom_size(a, b) == d.category().hom_size(da, db));
    }
}

TEST_CASE("hofstra dial over two indices") {
  const Hofstra h = hofstra_dial(kSub, 2, 1);
  auto r = check_hofstra_parts(h);
  CHECK(r.report.ok());
  CHECK(r.objects == 16);
  const FinCategory& D = h.category();
  for (ObjId a : D.objects())
    for (ObjId b : D.objects()) {
      auto s = hofstra_object(h, a), t = hofstra_object(h, b);
      CHECK(D.hom_size(a, b) ==
            hofstra_oracle(s.i, s.x, s.u, mask_of(h, s.alpha), t.i, t.x, t.u, mask_of(h, t.alpha)));
    }
}

TEST_CASE("hofstra dial at caps two and two") {
  const Hofstra h = hofstra_dial(kSub, 2, 2);
  CHECK(h.category().object_count() == 337);
  auto r = check_hofstra_parts(h, 4);
  CHECK(r.report.ok());
  CHECK(r.morphisms > 34060);
}

TEST_CASE("height one degeneration gives lens counts") {
  const Hofstra h = hofstra_dial(kSub, 1, 2);
  const ClovenFibration& q2 = h.tower.level(2);
  const Tower d = iterated_dual(Tower{{q2}});
  const FinCategory& mid = h.tower.category(2);
  const FinCategory& skw = h.tower.category(1);
  const FinCategory& skw2 = pullback_of(mid).source();
  std::size_t checked = 0;
  for (ObjId a : d.top().objects())
    for (ObjId b : d.top().objects()) {
      auto [s, s2] = pullback_object(mid, a);
      auto [t, t2] = pullback_object(mid, b);
      auto [i, x] = simple_object(skw, s);
      auto [j, y] = simple_object(skw, t);
      if (i != 1 || j != 1) continue;
      const std::uint64_t u = simple_object(skw2, s2).second, v = simple_object(skw2, t2).second;
      std::uint64_t expect = 1;
      for (std::uint32_t k = 0; k < x; ++k) expect *= y;
      for (std::uint32_t k = 0; k < x * v; ++k) expect *= u;
      CHECK(d.top().hom_size(a, b) == expect);
      ++checked;
    }
  CHECK(checked == 81);
}

TEST_CASE("cofam and dependent dial over F1") {
  auto sub = subobject_fib(finset(1));
  auto c = cofam(sub);
  CHECK(check_fibration(c).ok());
  auto dd = dependent_dial(sub);
  CHECK(check_tower(dd.tower).ok());
  CHECK(check_tower(dd.dual).ok());
  CHECK(dd.category().object_count() > 0);
  CHECK_THROWS_AS(dependent_dial(subobject_fib(finset(2))), CapExceeded);
}

TEST_CASE("cube tower") {
  FinCategory two = finset(1);
  auto t = cube_tower(walking_arrow(), 2);
  CHECK(t.height() == 2);
  CHECK(check_tower(t).ok());
  CHECK(t.category(1).object_count() == 3);
  // Commuting squares in the poset 0 < 1.
  CHECK(t.top().object_count() == 6);
  CHECK_THROWS_AS(cube_tower(two, 0), StructuralError);
}
