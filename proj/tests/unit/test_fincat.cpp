#include "doctest.h"

#include <set>

#include "dialens/finset.hpp"
#include "dialens/limits.hpp"

using namespace dialens;

namespace {

// Number of functions m -> n, counted by brute enumeration of tuples.
std::uint64_t count_functions(std::uint32_t m, std::uint32_t n) {
  if (n == 0) return m == 0;
  std::uint64_t count = 0;
  std::vector<std::uint32_t> t(m, 0);
  while (true) {
    ++count;
    std::uint32_t i = 0;
    while (i < m && ++t[i] == n) t[i++] = 0;
    if (i == m) break;
  }
  return count;
}

CategoryTable walking_arrow_table() {
  CategoryTable t;
  t.objects = {"a", "b"};
  t.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"u", "a", "b"}};
  t.identities = {{"a", "id_a"}, {"b", "id_b"}};
  t.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"id_a", "u", "u"}, {"u", "id_b", "u"}};
  return t;
}

}  // namespace

TEST_CASE("walking arrow passes the category laws") {
  CHECK(check_category(walking_arrow()).ok());
  CHECK(check_category(make_table_category(walking_arrow_table())).ok());
}

TEST_CASE("broken identity law is reported as a law violation") {
  auto t = walking_arrow_table();
  t.compose[3].result = "id_a";
  auto report = check_category(make_table_category(t));
  CHECK_FALSE(report.ok());
  CHECK(report.has_structural());  // u ; id_b = id_a is ill-typed
}

TEST_CASE("composite on a non-composable pair is structural") {
  auto t = walking_arrow_table();
  t.compose.push_back({"u", "id_a", "u"});
  auto report = check_category(make_table_category(t));
  CHECK(report.has_structural());
}

TEST_CASE("FinSet skeleton F3 is a category with n^m hom-sets") {
  auto f3 = finset(3);
  CHECK(check_category(f3).ok());
  for (ObjId m = 0; m <= 3; ++m)
    for (ObjId n = 0; n <= 3; ++n) CHECK(f3.hom_size(m, n) == count_functions(m, n));
}

TEST_CASE("functor checks") {
  auto f3 = finset(3);
  CHECK(check_functor(identity_functor(f3)).ok());
  CHECK(check_functor(constant_functor(walking_arrow(), f3, 1)).ok());
  // Swap objects but keep u pointing a -> b: endpoints break.
  auto two = walking_arrow();
  FunctorTable t;
  t.object_map = {1, 0};
  two.for_each_arrow([&](const Arrow& f) {
    t.arrow_map[f] = two.is_identity(f) ? two.identity(1 - f.src) : f;
  });
  CHECK_FALSE(check_functor(make_table_functor(two, two, t)).ok());
}

TEST_CASE("opposite transposes hom-sets and is involutive") {
  auto f3 = finset(3);
  auto op = opposite(f3);
  CHECK(op.hom_size(2, 3) == 8);
  CHECK(opposite(op).same_as(f3));
  CHECK(check_category(op).ok());
  auto two = opposite(walking_arrow());
  CHECK(two.hom_size(1, 0) == 1);
  CHECK(two.hom_size(0, 1) == 0);
}

TEST_CASE("limits in F3") {
  auto f3 = finset(3);
  auto t = limit_search(f3, LimitShape::kTerminal, {});
  REQUIRE(t);
  CHECK(t->apex == 1);
  CHECK(is_limit(f3, LimitShape::kTerminal, {}, *t));

  FnTable bang2, bang3, c0;
  bang2.dom = 2, bang2.cod = 1;
  bang3.dom = 3, bang3.cod = 1;
  c0.dom = 2, c0.cod = 2;
  CHECK_THROWS_AS(pullback(f3, fn_arrow(bang2), fn_arrow(bang3)), CapExceeded);

  auto f6 = finset(6);
  auto pb = pullback(f6, fn_arrow(bang2), fn_arrow(bang3));
  REQUIRE(pb);
  CHECK(pb->apex == 6);
  CHECK(is_limit(f6, LimitShape::kPullback, {{}, {fn_arrow(bang2), fn_arrow(bang3)}}, *pb));

  // Oracle: pairs (x, y) in 2 x 2 with f(x) = f(y) for f constant.
  std::uint32_t agreeing = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) agreeing += c0(x) == c0(y);
  auto f4 = finset(4);
  auto pb2 = pullback(f4, fn_arrow(c0), fn_arrow(c0));
  REQUIRE(pb2);
  CHECK(pb2->apex == agreeing);
  CHECK(is_limit(f4, LimitShape::kPullback, {{}, {fn_arrow(c0), fn_arrow(c0)}}, *pb2));
}

TEST_CASE("canonical and exhaustive limits agree up to apex in small skeletons") {
  auto f3 = finset(3);
  for (ObjId x = 0; x <= 2; ++x)
    for (ObjId a = 0; a <= 2; ++a)
      for (ObjId b = 0; b <= 2; ++b)
        for (const Arrow& f : f3.hom(a, x))
          for (const Arrow& g : f3.hom(b, x)) {
            std::optional<Cone> canon;
            try {
              canon = pullback(f3, f, g);
            } catch (const CapExceeded&) {
              CHECK_FALSE(limit_search_exhaustive(f3, LimitShape::kPullback, {{}, {f, g}}));
              continue;
            }
            REQUIRE(canon);
            CHECK(is_limit(f3, LimitShape::kPullback, {{}, {f, g}}, *canon));
            auto ex = limit_search_exhaustive(f3, LimitShape::kPullback, {{}, {f, g}});
            REQUIRE(ex);
            CHECK(ex->apex == canon->apex);
          }
}

TEST_CASE("subobject posets") {
  auto f3 = finset(3);
  auto s3 = subobject_poset(f3, 3);
  CHECK(s3.classes.size() == 8);
  // Order-isomorphic to the powerset: each class is an image subset.
  std::set<std::uint32_t> images;
  for (const auto& c : s3.classes) {
    auto fn = as_fn(c.representative);
    std::uint32_t mask = 0;
    for (std::uint32_t i = 0; i < fn.dom; ++i) mask |= 1u << fn(i);
    images.insert(mask);
  }
  CHECK(images.size() == 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      auto mi = as_fn(s3.classes[i].representative), mj = as_fn(s3.classes[j].representative);
      std::uint32_t a = 0, b = 0;
      for (std::uint32_t k = 0; k < mi.dom; ++k) a |= 1u << mi(k);
      for (std::uint32_t k = 0; k < mj.dom; ++k) b |= 1u << mj(k);
      CHECK(s3.leq[i][j] == ((a & ~b) == 0));
    }
  CHECK(subobject_poset(f3, 0).classes.size() == 1);
  auto two = walking_arrow();
  CHECK(is_mono(two, Arrow{0, 1, 0}));
  CHECK(subobject_poset(two, 1).classes.size() == 2);
}

TEST_CASE("arrow categories") {
  auto two = walking_arrow();
  auto ac = arrow_category(two);
  CHECK(ac.category.object_count() == 3);
  CHECK(check_category(ac.category).ok());
  CHECK(check_functor(ac.dom).ok());
  CHECK(check_functor(ac.cod).ok());
  const Arrow u{0, 1, 0};
  const ObjId ou = object_of(ac.category, u), oidb = object_of(ac.category, two.identity(1));
  const Arrow sq = make_square(ac.category, ou, oidb, u, two.identity(1));
  CHECK(ac.dom(sq) == u);

  auto f3 = finset(3);
  std::uint64_t arrows = 0;
  for (ObjId m = 0; m <= 3; ++m)
    for (ObjId n = 0; n <= 3; ++n) arrows += count_functions(m, n);
  CHECK(arrow_category(f3).category.object_count() == arrows);
  CHECK(arrows == 60);
}
