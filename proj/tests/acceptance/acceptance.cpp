// One line per acceptance criterion. All comparisons are exact (tolerance 0).
// Usage: acceptance [--expect-fail N]...  Exit status 0 iff the failing
// criteria are exactly the expected ones.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <string>

#include "dialens/instances.hpp"

using namespace dialens;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool odometer(std::vector<std::uint32_t>& d, std::uint32_t n) {
  for (auto& x : d) {
    if (++x < n) return true;
    x = 0;
  }
  return false;
}

// Number of functions m -> n, by listing them.
std::uint64_t count_functions(std::uint32_t m, std::uint32_t n) {
  if (m == 0) return 1;
  if (n == 0) return 0;
  std::uint64_t c = 0;
  std::vector<std::uint32_t> d(m, 0);
  do ++c;
  while (odometer(d, n));
  return c;
}

// Cartesianness straight from the universal property.
bool cartesian_oracle(const FinFunctor& p, const Arrow& phi) {
  const FinCategory& E = p.source();
  const FinCategory& X = p.target();
  for (ObjId u : E.objects())
    for (const Arrow& g : X.hom(p(u), p(phi.src)))
      for (const Arrow& h : E.hom(u, phi.dst)) {
        if (p(h) != X.compose(g, p(phi))) continue;
        int n = 0;
        for (const Arrow& k : E.hom(u, phi.src))
          if (p(k) == g && E.compose(k, phi) == h) ++n;
        if (n != 1) return false;
      }
  return true;
}

struct Named {
  std::string name;
  ClovenFibration fib;
};

FinCategory chain3() {
  return poset_category({"0", "1", "2"}, {{true, true, true}, {false, true, true}, {false, false, true}});
}

std::vector<Named> fibrations() {
  return {
      {"domain F3", domain_fib(finset(3))},
      {"codomain F1", codomain_fib(finset(1))},
      {"codomain 2", codomain_fib(walking_arrow())},
      {"codomain chain 3", codomain_fib(chain3())},
      {"codomain FInj3", codomain_fib(finset_injections(3))},
      {"simple 2x2", simple_fib(2, 2)},
      {"simple 3x1", simple_fib(3, 1)},
      {"subobject F3", subobject_fib(3)},
      {"family sub F1", family_fib(subobject_fib(finset(1)))},
      {"family cod FInj2", family_fib(codomain_fib(finset_injections(2)))},
  };
}

struct NamedOp {
  std::string name;
  OpCloven op;
};

std::vector<NamedOp> opfibrations() {
  const Monoid m = z2();
  const FinCategory bm = bmonoid(m);
  return {
      {"family sub F1", family_opfibration(subobject_fib(finset(1)))},
      {"family sub F2", family_opfibration(subobject_fib(finset(2)))},
      {"Para Z2 trivial F2", para(trivial_action(m, finset(2)), bm)},
      {"Para Z2 conjugation F2", para(swap_conjugation(2), bm)},
      {"Para Z2 swap", para(swap_discrete(), bm)},
  };
}

// 1 ---------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::uint64_t lifts = 0, fibs = 0, ops = 0;
  auto audit = [&](const std::string& name, const ClovenFibration& f, const LawReport& r) {
    if (!r.ok()) {
      o.pass = false;
      o.detail += name + ": " + r.violations.front().law + " (" + r.violations.front().witness + "); ";
    }
    f.base().for_each_arrow([&](const Arrow& u) {
      for (ObjId d : f.functor().objects_over(u.dst)) {
        ++lifts;
        if (!cartesian_oracle(f.functor(), f.lift(u, d))) {
          o.pass = false;
          o.detail += name + ": lift of " + f.base().arrow_label(u) + " not cartesian; ";
        }
      }
    });
  };
  for (const auto& [name, f] : fibrations()) {
    audit(name, f, check_fibration(f));
    ++fibs;
  }
  for (const auto& [name, op] : opfibrations()) {
    audit(name + " (op)", opposite_fibration(op.functor, op.opcleavage), check_opfibration(op.functor, op.opcleavage));
    ++ops;
  }
  o.detail += std::to_string(fibs) + " fibrations, " + std::to_string(ops) + " opfibrations, " + std::to_string(lifts) +
              " chosen lifts re-checked by the universal property";
  return o;
}

// 2 ---------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  std::uint64_t arrows = 0, diagonals = 0;
  for (const auto& [name, f] : fibrations()) {
    const FinCategory& E = f.total();
    const FinFunctor& P = f.functor();
    E.for_each_arrow([&](const Arrow& phi) {
      ++arrows;
      const FibMorphismParts parts = factorize(f, phi);
      if (E.compose(parts.vert, parts.cart) != phi || !P.is_vertical(parts.vert) || !f.is_cartesian(parts.cart)) {
        o.pass = false;
        o.detail += name + ": factorization of " + E.arrow_label(phi) + "; ";
        return;
      }
      // Every other (vertical, cartesian) factorization is related to this
      // one by exactly one diagonal.
      for (ObjId m : P.objects_over(P(phi.src)))
        for (const Arrow& v : P.vertical(phi.src, m))
          for (const Arrow& c : E.hom(m, phi.dst)) {
            if (E.compose(v, c) != phi || !f.is_cartesian(c)) continue;
            int n = 0;
            for (const Arrow& d : P.vertical(parts.vert.dst, m))
              if (E.compose(parts.vert, d) == v && E.compose(d, c) == parts.cart) ++n;
            ++diagonals;
            if (n != 1) {
              o.pass = false;
              o.detail += name + ": " + std::to_string(n) + " diagonals at " + E.arrow_label(phi) + "; ";
            }
          }
    });
  }
  const Tower t = dialectica_tower(2);
  std::uint64_t ternary = 0, ternary_ok = 0;
  t.top().for_each_arrow([&](const Arrow& phi) {
    ++ternary;
    if (check_ternary(t, phi, ternary_factorize(t, phi)).ok()) ++ternary_ok;
  });
  if (ternary_ok != ternary) o.pass = false;
  o.detail += std::to_string(arrows) + " arrows factorized, " + std::to_string(diagonals) +
              " unique diagonals; ternary " + std::to_string(ternary_ok) + "/" + std::to_string(ternary) + " at cap 2";
  return o;
}

// 3 ---------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  std::uint64_t fibres = 0, pairs = 0, invol = 0;
  for (const auto& [name, f] : fibrations()) {
    const ClovenFibration d = dual_fibration(f);
    for (ObjId x : f.base().objects()) {
      ++fibres;
      if (!categories_equal(fiber_at(d, x), opposite(fiber_at(f, x)))) {
        o.pass = false;
        o.detail += name + ": fibre " + f.base().object_label(x) + "; ";
      }
    }
    const FinCategory& D = d.total();
    for (ObjId a : D.objects())
        for (ObjId b : D.objects())
          for (const Arrow& s : D.hom(a, b))
            for (ObjId c : D.objects())
              for (const Arrow& u : D.hom(b, c)) {
                ++pairs;
                const auto span = span_compose(f, span_of(f, dual_parts(D, s), b), span_of(f, dual_parts(D, u), c));
                if (!(normalize_span(f, span) == dual_parts(D, D.compose(s, u)))) {
                  o.pass = false;
                  o.detail += name + ": span composite of " + D.arrow_label(s) + " ; " + D.arrow_label(u) + "; ";
                }
              }
    ++invol;
    if (!check_involution(f)) {
      o.pass = false;
      o.detail += name + ": involution; ";
    }
  }
  o.detail += std::to_string(fibres) + " fibres, " + std::to_string(pairs) + " composable pairs, " +
              std::to_string(invol) + " involutions";
  return o;
}

// 4 ---------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  const ClovenFibration s = simple_fib(3, 3);
  const ClovenFibration lens = dual_fibration(s);
  std::uint64_t pairs = 0;
  for (ObjId a : lens.total().objects())
    for (ObjId b : lens.total().objects()) {
      const auto [u, x] = simple_object(s.total(), a);
      const auto [v, y] = simple_object(s.total(), b);
      const std::uint64_t oracle = count_functions(u, v) * count_functions(u * y, x);
      const std::uint64_t formula = ipow(v, u) * ipow(x, u * y);
      const std::uint64_t got = lens.total().hom_size(a, b);
      ++pairs;
      if (got != oracle || got != formula) {
        o.pass = false;
        o.detail += s.total().object_label(a) + "->" + s.total().object_label(b) + ": " + std::to_string(got) +
                    " vs " + std::to_string(oracle) + "; ";
      }
    }
  const ObjId p = simple_object_of(s.total(), 2, 2);
  const std::uint64_t h22 = lens.total().hom_size(p, p);
  if (h22 != 64) o.pass = false;
  o.detail += std::to_string(pairs) + " hom-sets equal to the enumeration, (2,2)->(2,2) = " + std::to_string(h22);
  return o;
}

// 5 ---------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  const Dialectica d = dialectica(2);
  const BijectionReport b = check_dialectica_bijection(d);
  if (!b.report.ok()) {
    o.pass = false;
    o.detail += b.report.violations.front().law + " (" + b.report.violations.front().witness + "); ";
  }
  const ObjId bot = dialectica_object_of(d, {1, 1, 0});
  const ObjId top = dialectica_object_of(d, {1, 1, 1});
  const ObjId p = dialectica_object_of(d, {1, 2, 1});
  const auto up = d.category().hom_size(bot, top), down = d.category().hom_size(top, bot),
             endo = d.category().hom_size(p, p);
  if (up != 1 || down != 0 || endo != 2) o.pass = false;
  o.detail += std::to_string(b.objects) + " objects, " + std::to_string(b.morphisms) + " morphisms, " +
              std::to_string(b.composites) + " composites transported; singletons " + std::to_string(up) + "/" +
              std::to_string(down) + ", endo-hom " + std::to_string(endo);
  return o;
}

// 6 ---------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  const Monoid m = z2();
  std::uint64_t quads = 0;
  std::uint64_t all2 = 0;
  for (const MonoidAction& act : {trivial_action(m, finset(2)), swap_discrete(), swap_conjugation(2)}) {
    const Preoptics p = preoptics(act, act);
    const BijectionReport b = check_preoptic_bijection(p);
    if (!b.report.ok()) {
      o.pass = false;
      o.detail += b.report.violations.front().law + "; ";
    }
    const FinCategory& c = act.carrier;
    for (ObjId A : c.objects())
      for (ObjId B : c.objects())
        for (ObjId S : c.objects())
          for (ObjId T : c.objects()) {
            std::uint64_t oracle = 0;
            for (std::size_t r = 0; r < m.size(); ++r)
              oracle += std::uint64_t{c.hom_size(A, act.on_objects(r, S))} * c.hom_size(act.on_objects(r, T), B);
            const auto got = p.category.hom_size(preoptic_object_of(p, A, B), preoptic_object_of(p, S, T));
            ++quads;
            if (got != oracle) {
              o.pass = false;
              o.detail += "hom mismatch; ";
            }
          }
  }
  {
    const Preoptics p = preoptics(trivial_action(m, finset(2)), trivial_action(m, finset(2)));
    const ObjId x = preoptic_object_of(p, 2, 2);
    all2 = p.category.hom_size(x, x);
    if (all2 != 32) o.pass = false;
  }
  o.detail += "3 actions, " + std::to_string(quads) + " hom-sets equal to the residual sum, all-2s trivial = " +
              std::to_string(all2);
  return o;
}

// 7 ---------------------------------------------------------------------

Outcome criterion7() {
  Outcome o;
  const Dialectica d = dialectica(2);
  const AmbifibrationReport r = check_ambifibration(dual_ambifibration_spec(d.dual));
  if (!r.report.ok()) {
    o.pass = false;
    o.detail += r.report.violations.front().law + " (" + r.report.violations.front().witness + "); ";
  }
  const auto n = d.category().arrow_count();
  if (r.witnesses.size() != n) o.pass = false;
  o.detail += std::to_string(r.witnesses.size()) + " witnesses for " + std::to_string(n) + " arrows";
  return o;
}

// 8 ---------------------------------------------------------------------

std::uint32_t mask_of(const Hofstra& h, ObjId alpha) {
  return subset_object(pullback_of(pullback_of(h.tower.category(3)).source()).source(), alpha).second;
}

Outcome criterion8() {
  Outcome o;
  const SkeletonFibration sub = [](const FinCategory& c) { return subobject_fib(c); };
  // Hom-sets whose triple products reach 8 reindex through F8 hom-sets of
  // 8^8 functions; they are counted as unchecked.
  constexpr std::size_t kBudget = 4;
  const Hofstra h = hofstra_dial(sub, 2, 2);
  const BijectionReport b = check_hofstra_parts(h, kBudget);
  if (!b.report.ok()) {
    o.pass = false;
    o.detail += b.report.violations.front().law + "; ";
  }
  std::uint64_t unchecked = 0;
  for (ObjId a : h.category().objects())
    for (ObjId c : h.category().objects()) {
      const auto s = hofstra_object(h, a), t = hofstra_object(h, c);
      if (std::max({s.i * s.x * s.u, s.i * s.x * t.u, t.i * t.x * t.u}) > kBudget) ++unchecked;
    }
  if (unchecked > 0) o.pass = false;

  // Height 2 at I = J = 1 against the Dialectica counts.
  const Dialectica d = dialectica(2);
  std::uint64_t dial_pairs = 0;
  for (ObjId a : h.category().objects())
    for (ObjId c : h.category().objects()) {
      const auto s = hofstra_object(h, a), t = hofstra_object(h, c);
      if (s.i != 1 || t.i != 1) continue;
      const auto want = d.category().hom_size(dialectica_object_of(d, {s.x, s.u, mask_of(h, s.alpha)}),
                                              dialectica_object_of(d, {t.x, t.u, mask_of(h, t.alpha)}));
      ++dial_pairs;
      if (h.category().hom_size(a, c) != want) o.pass = false;
    }
  // Height 1 (the dual of Q_2 over Simple) at I = J = 1 against the lens formula.
  const Tower d1 = iterated_dual(Tower{{h.tower.level(2)}});
  const FinCategory& mid = h.tower.category(2);
  std::uint64_t lens_pairs = 0;
  for (ObjId a : d1.top().objects())
    for (ObjId c : d1.top().objects()) {
      const auto [s, s2] = pullback_object(mid, a);
      const auto [t, t2] = pullback_object(mid, c);
      const auto [i, x] = simple_object(h.tower.category(1), s);
      const auto [j, y] = simple_object(h.tower.category(1), t);
      if (i != 1 || j != 1) continue;
      const auto u = simple_object(pullback_of(mid).source(), s2).second;
      const auto v = simple_object(pullback_of(mid).source(), t2).second;
      ++lens_pairs;
      if (d1.top().hom_size(a, c) != ipow(y, x) * ipow(u, x * v)) o.pass = false;
    }
  o.detail += std::to_string(b.morphisms) + " morphisms recomposed, " + std::to_string(unchecked) +
              " hom-sets beyond the product budget " + std::to_string(kBudget) + " unchecked; degenerations " +
              std::to_string(dial_pairs) + " Dialectica and " + std::to_string(lens_pairs) + " lens hom-sets";
  return o;
}

// 9 ---------------------------------------------------------------------

Outcome criterion9() {
  Outcome o;
  std::uint64_t n = 0;
  auto same = [&](const std::string& name, const ClovenFibration& f) {
    const Tower d = iterated_dual(Tower{{f}});
    const ClovenFibration l = dual_fibration(f);
    bool eq = categories_equal(d.top(), l.total());
    if (eq)
      d.top().for_each_arrow([&](const Arrow& a) {
        if (d.level(1)(a) != l(a)) eq = false;
      });
    ++n;
    if (!eq) {
      o.pass = false;
      o.detail += name + "; ";
    }
  };
  for (const auto& [name, f] : fibrations()) same(name, f);
  for (const auto& [name, op] : opfibrations()) same(name + " (op)", opposite_fibration(op.functor, op.opcleavage));
  o.detail += std::to_string(n) + " height-one towers equal to their dual fibration";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--expect-fail") == 0) expected.insert(std::atoi(argv[++i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fibration law suite", criterion1},   {"factorization suite", criterion2},
      {"dual coherence", criterion3},        {"lens counts", criterion4},
      {"Dialectica bijection", criterion5},  {"preoptics bijection", criterion6},
      {"ambifibration", criterion7},         {"Hofstra four-part shape", criterion8},
      {"height-one identification", criterion9},
  };
  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failed.insert(static_cast<int>(k + 1));
    std::printf("criterion %zu %s: %s [tol 0] %s (%.1f s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failed == expected ? 0 : 1;
}
