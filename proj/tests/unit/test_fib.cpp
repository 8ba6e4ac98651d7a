#include "doctest.h"

#include "dialens/fib.hpp"
#include "dialens/finset.hpp"

using namespace dialens;

namespace {

ClovenFibration dom_fib(const FinCategory& c) {
  auto ac = arrow_category(c);
  FinCategory A = ac.category;
  auto lift = [A, c](const Arrow& u, ObjId g) {
    const Arrow ga = arrow_of(A, g);
    const ObjId from = object_of(A, c.compose(u, ga));
    return make_square(A, from, g, u, c.identity(ga.dst));
  };
  return ClovenFibration(ac.dom, make_cleavage(lift));
}

ClovenFibration cod_fib(const FinCategory& c) {
  auto ac = arrow_category(c);
  FinCategory A = ac.category;
  auto lift = [A, c](const Arrow& u, ObjId g) {
    const Arrow ga = arrow_of(A, g);
    auto cone = pullback(c, u, ga).value();
    return make_square(A, object_of(A, cone.legs[0]), g, cone.legs[1], u);
  };
  return ClovenFibration(ac.cod, make_cleavage(lift));
}

// Brute-force cartesianness straight from the definition: for every h and
// every g with P(h) = g ; P(phi), exactly one k over g has k ; phi = h.
bool cartesian_oracle(const ClovenFibration& F, const Arrow& phi) {
  const FinCategory& E = F.total();
  const FinCategory& X = F.base();
  for (ObjId u : E.objects())
    for (const Arrow& g : X.hom(F(u), F(phi.src)))
      for (const Arrow& h : E.hom(u, phi.dst)) {
        if (F(h) != X.compose(g, F(phi))) continue;
        int n = 0;
        for (const Arrow& k : E.hom(u, phi.src))
          if (F(k) == g && E.compose(k, phi) == h) ++n;
        if (n != 1) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("domain fibration over the walking arrow") {
  auto F = dom_fib(walking_arrow());
  CHECK(check_fibration(F).ok());
  F.total().for_each_arrow([&](const Arrow& a) { CHECK(F.is_cartesian(a) == cartesian_oracle(F, a)); });
}

TEST_CASE("codomain fibration over posets and FInj") {
  auto F = cod_fib(walking_arrow());
  CHECK(check_fibration(F).ok());
  auto G = cod_fib(finset(1));
  CHECK(check_fibration(G).ok());
  auto H = cod_fib(finset_injections(2));
  CHECK(check_fibration(H).ok());
  H.total().for_each_arrow([&](const Arrow& a) { CHECK(H.is_cartesian(a) == cartesian_oracle(H, a)); });
}

TEST_CASE("broken cleavage is reported") {
  auto c = walking_arrow();
  auto good = dom_fib(c);
  // Replace every lift by a non-cartesian arrow over the same base arrow when one exists.
  auto bad_lift = [good](const Arrow& u, ObjId d) {
    const FinFunctor& P = good.functor();
    for (ObjId s : P.objects_over(u.src))
      for (const Arrow& a : P.arrows_over(s, d, u))
        if (!good.is_cartesian(a)) return a;
    return good.lift(u, d);
  };
  ClovenFibration bad(good.functor(), make_cleavage(bad_lift));
  auto report = check_fibration(bad);
  CHECK_FALSE(report.ok());
}

TEST_CASE("factorization, fibers, composition and pullback") {
  auto F = cod_fib(finset_injections(2));
  F.total().for_each_arrow([&](const Arrow& phi) {
    auto parts = factorize(F, phi);
    CHECK(F.total().compose(parts.vert, parts.cart) == phi);
    CHECK(F.functor().is_vertical(parts.vert));
    CHECK(F.is_cartesian(parts.cart));
  });
  for (ObjId x : F.base().objects()) CHECK(check_category(fiber_at(F, x)).ok());

  auto id = ClovenFibration(identity_functor(F.base()), make_cleavage([F](const Arrow& f, ObjId) { return f; }));
  auto composite = compose_fib(F, id);
  CHECK(check_fibration(composite).ok());
  auto pulled = pullback_fib(F, identity_functor(F.base()));
  CHECK(check_fibration(pulled).ok());
  CHECK(pulled.total().object_count() == F.total().object_count());
  CHECK(check_functor(pullback_projection(pulled)).ok());
  CHECK(check_fib_map(pullback_projection(pulled), pulled, F).ok());

  auto D = dom_fib(F.base());
  auto pd = pullback_fib(F, D.functor());
  CHECK(check_fibration(pd).ok());
  std::size_t expected = 0;
  for (ObjId a : D.total().objects()) expected += F.functor().objects_over(D(a)).size();
  CHECK(pd.total().object_count() == expected);
}

TEST_CASE("vertical-cartesian pullbacks") {
  auto F = cod_fib(finset_injections(2));
  const FinCategory& E = F.total();
  E.for_each_arrow([&](const Arrow& v) {
    if (!F.functor().is_vertical(v)) return;
    for (ObjId c0 : E.objects())
      for (const Arrow& c : E.hom(c0, v.dst)) {
        if (!F.is_cartesian(c)) continue;
        auto sq = vertcart_pullback(F, v, c);
        CHECK(F.functor().is_vertical(sq.vert));
        CHECK(F.is_cartesian(sq.cart));
        CHECK(is_pullback_square(E, sq.cart, sq.vert, v, c));
      }
  });
}
