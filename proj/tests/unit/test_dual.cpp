#include "doctest.h"

#include "dialens/instances.hpp"

using namespace dialens;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Counts pairs (f: U -> V, g: U x Y -> X) by enumerating both tables.
std::uint64_t lens_oracle(std::uint32_t u, std::uint32_t x, std::uint32_t v, std::uint32_t y) {
  std::uint64_t forward = 0, backward = 0;
  for (std::uint64_t c = 0; c < ipow(v, u); ++c) ++forward;
  for (std::uint64_t c = 0; c < ipow(x, u * y); ++c) ++backward;
  return forward * backward;
}

void check_span_calculus(const ClovenFibration& F) {
  const ClovenFibration d = dual_fibration(F);
  const FinCategory& D = d.total();
  for (ObjId a : D.objects())
    for (ObjId b : D.objects())
      for (const Arrow& s : D.hom(a, b))
        for (ObjId c : D.objects())
          for (const Arrow& t : D.hom(b, c)) {
            const auto m1 = dual_parts(D, s), m2 = dual_parts(D, t);
            const auto composite = span_compose(F, span_of(F, m1, b), span_of(F, m2, c));
            CHECK(normalize_span(F, composite) == dual_parts(D, D.compose(s, t)));
          }
}

}  // namespace

TEST_CASE("dual of the identity fibration is the identity") {
  auto F = identity_fib(finset(2));
  auto d = dual_fibration(F, true);
  CHECK(categories_equal(opposite(opposite(d.total())), d.total()));
  for (ObjId a : d.total().objects())
    for (ObjId b : d.total().objects()) CHECK(d.total().hom_size(a, b) == F.total().hom_size(a, b));
  CHECK(check_fibration(d).ok());
  CHECK(check_involution(F));
}

TEST_CASE("simple fibration and lens counts") {
  auto S = simple_fib(2, 2);
  CHECK(check_fibration(S).ok());
  auto L = dual_fibration(S);
  CHECK(check_fibration(L).ok());
  const FinCategory& T = L.total();
  for (ObjId a : T.objects())
    for (ObjId b : T.objects()) {
      auto [u, x] = simple_object(S.total(), a);
      auto [v, y] = simple_object(S.total(), b);
      CHECK(T.hom_size(a, b) == lens_oracle(u, x, v, y));
    }
  CHECK(T.hom_size(simple_object_of(S.total(), 2, 2), simple_object_of(S.total(), 2, 2)) == 64);
  // Vertical hom (2,2) -> (2,3) in the simple fibration over F3: maps 2x2 -> 3.
  auto S3 = simple_fib(3, 3);
  CHECK(S3.functor().vertical(simple_object_of(S3.total(), 2, 2), simple_object_of(S3.total(), 2, 3)).size() == 81);
}

TEST_CASE("fibers of the dual are opposites") {
  for (const auto& F : {simple_fib(2, 2), subobject_fib(3), codomain_fib(finset_injections(2))}) {
    auto d = dual_fibration(F);
    for (ObjId x : F.base().objects()) CHECK(categories_equal(fiber_at(d, x), opposite(fiber_at(F, x))));
  }
}

TEST_CASE("span calculus agrees with the indexed composition") {
  check_span_calculus(simple_fib(1, 2));
  check_span_calculus(simple_fib(2, 1));
  check_span_calculus(subobject_fib(2));
  check_span_calculus(codomain_fib(walking_arrow()));
}

TEST_CASE("normalize_span absorbs vertical isos") {
  auto F = simple_fib(2, 2);
  const FinCategory& E = F.total();
  const FinFunctor& P = F.functor();
  E.for_each_arrow([&](const Arrow& phi) {
    if (!F.is_cartesian(phi)) return;
    const Arrow l = F.lift(F(phi), phi.dst);
    auto theta = vertical_factor(P, phi, l).value();
    for (const Arrow& v : P.vertical(phi.src, phi.src)) {
      if (!vertical_inverse(P, v)) continue;
      // Span (v, phi) is equivalent to (theta^-1 ; v, lift).
      auto n = normalize_span(F, {phi.src, v, phi});
      CHECK(n.base == F(phi));
      CHECK(n.backward == E.compose(vertical_inverse(P, theta).value(), v));
    }
  });
  // Identity span.
  const ObjId e = simple_object_of(E, 2, 1);
  auto n = normalize_span(F, {e, E.identity(e), E.identity(e)});
  CHECK(n.base == F.base().identity(2));
  CHECK(n.backward == E.identity(e));
}

TEST_CASE("cartesian arrows of the dual have invertible backward parts") {
  auto F = subobject_fib(2);
  auto d = dual_fibration(F);
  d.total().for_each_arrow([&](const Arrow& a) {
    auto m = dual_parts(d.total(), a);
    CHECK(d.is_cartesian(a) == vertical_inverse(F.functor(), m.backward).has_value());
  });
}

TEST_CASE("involution") {
  CHECK(check_involution(simple_fib(2, 2)));
  CHECK(check_involution(subobject_fib(3)));
  CHECK(check_involution(codomain_fib(finset_injections(2))));
}

TEST_CASE("dual maps are functorial") {
  auto S = simple_fib(2, 2);
  auto dS = dual_fibration(S);
  auto id = identity_functor(S.total());
  auto did = dual_map(id, S, S, dS, dS);
  CHECK(check_functor(did).ok());
  dS.total().for_each_arrow([&](const Arrow& a) { CHECK(did(a) == a); });
}
