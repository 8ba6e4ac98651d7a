#pragma once

#include "dialens/finset.hpp"
#include "dialens/tower.hpp"

namespace dialens {

/// A functor with a chosen op-cleavage.
struct OpCloven {
  FinFunctor functor;
  std::shared_ptr<const CleavageImpl> opcleavage;
};

// Fibrations over a general base.

/// dom: C↓ -> C. The lift of u against g is the square (u, id) from u ⨟ g.
ClovenFibration domain_fib(const FinCategory& c);
ClovenFibration domain_fib(const ArrowCategory& ac);
/// cod: C↓ -> C with canonical pullback squares. Throws UnsupportedBase when
/// a pullback is missing and CapExceeded when it does not fit a skeleton.
ClovenFibration codomain_fib(const FinCategory& c);
ClovenFibration codomain_fib(const ArrowCategory& ac);
/// Subobjects via subobject_poset and exhaustive pullbacks.
ClovenFibration subobject_fib_generic(const FinCategory& c);

/// dom*P over C↓ composed with cod. Needs pullbacks in the base.
ClovenFibration family_fib(const ClovenFibration& p);
/// The same total category fibred over the base without the cleavage,
/// with its op-cleavage (g, e) |-> (g ⨟ u, e). Needs no limits.
OpCloven family_opfibration(const ClovenFibration& p);
/// The op-cleavage of any total category built by family_fib or family_opfibration.
std::shared_ptr<const CleavageImpl> family_opcleavage(const FinCategory& fam_total);

ClovenFibration identity_fib(const FinCategory& c);

// Fibrations over FinSet skeletons.

/// Objects (I, X) with I <= index_cap, X <= fibre_cap; arrows (u: I -> J,
/// f: I x X -> Y); cleavage (u, π_Y). The base is finset(index_cap) unless given.
ClovenFibration simple_fib(std::size_t index_cap, std::size_t fibre_cap);
ClovenFibration simple_fib(const FinCategory& base, std::size_t fibre_cap);
/// simple_fib over a skeleton, fibre cap = cap. Other bases throw UnsupportedBase.
ClovenFibration simple_fib(const FinCategory& c);
struct SimpleArrow {
  FnTable u;
  FnTable f;  // on I x X, pairs (i, x) at i * X + x
};
std::pair<ObjId, ObjId> simple_object(const FinCategory& skw, ObjId o);
ObjId simple_object_of(const FinCategory& skw, ObjId i, ObjId x);
SimpleArrow simple_arrow(const FinCategory& skw, const Arrow& a);
Arrow simple_arrow_of(const FinCategory& skw, const SimpleArrow& a);

/// ×: Skw -> F_target, (I, X) |-> I·X with lexicographic pairing.
FinFunctor product_functor(const ClovenFibration& simple, const FinCategory& target);

/// Objects (A, S) with S ⊆ A as a bitmask; reindexing is preimage.
ClovenFibration subobject_fib(const FinCategory& skeleton);
ClovenFibration subobject_fib(std::size_t cap);
std::pair<ObjId, std::uint32_t> subset_object(const FinCategory& sub, ObjId o);
ObjId subset_object_of(const FinCategory& sub, ObjId a, std::uint32_t mask);

/// Totals of the duals of the simple and codomain fibrations.
ClovenFibration simple_lenses(std::size_t cap);
ClovenFibration dependent_lenses(const FinCategory& c);

/// Certificate of a bijection between a constructed category and its
/// direct definition.
struct BijectionReport {
  LawReport report;
  std::uint64_t objects = 0;
  std::uint64_t morphisms = 0;
  std::uint64_t composites = 0;
};

// Dialectica.

/// simple_fib(F-cap) under the pullback of subobject_fib(F-cap²) along ×.
Tower dialectica_tower(std::size_t cap);

/// (U, X, α) with α ⊆ U × X as a mask over pairs (u, x) at u * X + x.
struct DialecticaObject {
  ObjId u = 0, x = 0;
  std::uint32_t alpha = 0;
  friend bool operator==(const DialecticaObject&, const DialecticaObject&) = default;
};
/// f: U -> V and f♯: U × Y -> X. The inclusion witness is unique when it exists.
struct DialecticaMorphism {
  FnTable f;
  FnTable fsharp;
  friend bool operator==(const DialecticaMorphism&, const DialecticaMorphism&) = default;
};

struct Dialectica {
  Tower tower;
  Tower dual;
  std::size_t cap = 0;
  const FinCategory& category() const { return dual.top(); }
};

Dialectica dialectica(std::size_t cap);
DialecticaObject dialectica_object(const Dialectica& d, ObjId o);
ObjId dialectica_object_of(const Dialectica& d, const DialecticaObject& o);
DialecticaMorphism dialectica_morphism(const Dialectica& d, const Arrow& a);
/// nullopt when the inclusion condition fails.
std::optional<Arrow> dialectica_arrow_of(const Dialectica& d, ObjId a, ObjId b, const DialecticaMorphism& m);
/// All (f, f♯) with α(u, f♯(u, y)) ⊆ β(f(u), y), by brute force.
std::vector<DialecticaMorphism> dialectica_direct_hom(const DialecticaObject& a, const DialecticaObject& b);
/// (f ⨟ g, (u, z) |-> f♯(u, g♯(f(u), z))) for m: a -> b and n: b -> c.
DialecticaMorphism dialectica_direct_compose(const DialecticaMorphism& m, const DialecticaMorphism& n,
                                             const DialecticaObject& a, const DialecticaObject& c);
BijectionReport check_dialectica_bijection(const Dialectica& d);

// Monoid actions, Para and preoptics.

/// A finite monoid by its multiplication table, mult[a][b] = a·b.
struct Monoid {
  std::vector<std::vector<std::size_t>> mult;
  std::size_t unit = 0;
  std::vector<std::string> labels;
  std::size_t size() const { return mult.size(); }
};
Monoid trivial_monoid();
Monoid z2();
/// One object with Hom = M. The composite of m then n is n·m.
FinCategory bmonoid(const Monoid& m);

/// A strict action of a monoid on a carrier category.
struct MonoidAction {
  Monoid monoid;
  FinCategory carrier;
  std::function<ObjId(std::size_t, ObjId)> on_objects;
  std::function<Arrow(std::size_t, const Arrow&)> on_arrows;
};
MonoidAction trivial_action(const Monoid& m, const FinCategory& carrier);
/// Z2 on F-cap: the generator conjugates by the transposition of 0 and 1
/// on every set with at least two elements.
MonoidAction swap_conjugation(std::size_t cap);
/// Z2 on the discrete category {p, q}, the generator swapping p and q.
MonoidAction swap_discrete();
/// Unit acts trivially, strictness on objects and arrows, functoriality.
LawReport check_action(const MonoidAction& a);

/// Objects of the carrier; X -> Y is (m, f: m•X -> Y); (m, f) then (n, g)
/// is (n·m, (n•f) ⨟ g). Op-cleavage m_X = (m, 1_{m•X}). `bm` must be
/// bmonoid of the acting monoid and is shared by every Para over it.
OpCloven para(const MonoidAction& a, const FinCategory& bm);
struct ParaArrow {
  std::size_t residual = 0;
  Arrow map;
};
ParaArrow para_arrow(const FinCategory& para_total, const Arrow& a);
Arrow para_arrow_of(const FinCategory& para_total, ObjId x, ObjId y, const ParaArrow& p);

/// Residual m, view A -> m•S in C and update m∘T -> B in D.
struct PreopticDatum {
  std::size_t residual = 0;
  Arrow view;
  Arrow update;
  friend bool operator==(const PreopticDatum& a, const PreopticDatum& b) {
    return a.residual == b.residual && a.view == b.view && a.update == b.update;
  }
};

/// The tower Para(∘) ×_BM Para(•) -> Para(•) -> BM consists of
/// opfibrations; it is stored as the tower of their opposite fibrations.
Tower preoptic_tower(const OpCloven& para_c, const OpCloven& para_d);

struct Preoptics {
  MonoidAction c, d;
  FinCategory bm;
  OpCloven para_c, para_d;
  Tower tower;  // opposite fibrations
  Tower dual;
  FinCategory category;  // objects (A, B) with A in C and B in D
};

/// Throws StructuralError when the actions are not over the same monoid.
Preoptics preoptics(const MonoidAction& c, const MonoidAction& d);
std::pair<ObjId, ObjId> preoptic_object(const Preoptics& p, ObjId o);
ObjId preoptic_object_of(const Preoptics& p, ObjId a, ObjId b);
PreopticDatum preoptic_datum(const Preoptics& p, const Arrow& a);
/// All triples (m, A -> m•S, m∘T -> B) for (A, B) -> (S, T).
std::vector<PreopticDatum> preoptic_direct_hom(const Preoptics& p, ObjId a, ObjId b, ObjId s, ObjId t);
/// (m, f, f♯) then (n, g, g♯) is (m·n, f ⨟ m•g, m∘g♯ ⨟ f♯).
PreopticDatum preoptic_direct_compose(const Preoptics& p, const PreopticDatum& x, const PreopticDatum& y);
BijectionReport check_preoptic_bijection(const Preoptics& p);

// Sum completion, Hofstra's Dial, Cofam and cubes.

/// Builds a fibration over a given FinSet skeleton, e.g. subobject_fib.
using SkeletonFibration = std::function<ClovenFibration(const FinCategory&)>;

/// ×*P followed by the simple fibration over F-index_cap: objects
/// (I, X, α over I·X). P is built over F-(index_cap·fibre_cap).
ClovenFibration sum_completion(const SkeletonFibration& p, std::size_t index_cap, std::size_t fibre_cap);
/// Sums along product projections: every object over I·K whose
/// reassociation (I, K·X) fits the fibre cap has an opcartesian lift
/// along the projection I·K -> I.
LawReport check_simple_sums(const ClovenFibration& sum);

/// Q_3 = Sum(Sum(P)) -> Q_2 = Sum(S) -> Q_1 = S -> C with C = F-index_cap;
/// the top two levels are dualized over Simple(C).
struct Hofstra {
  Tower tower;
  Tower dual;
  const FinCategory& category() const { return dual.top(); }
};

Hofstra hofstra_dial(const SkeletonFibration& p, std::size_t index_cap, std::size_t fibre_cap);

/// (I, X, U, α) with α an object of P over I·X·U.
struct HofstraObject {
  ObjId i = 0, x = 0, u = 0;
  ObjId alpha = 0;
};
/// f_0: I -> J, f: I·X -> Y, f♯: I·X·V -> U, and f♮ vertical in P.
struct HofstraMorphism {
  FnTable f0;
  FnTable f;
  FnTable fsharp;
  Arrow fnat;
  friend bool operator==(const HofstraMorphism&, const HofstraMorphism&) = default;
};

HofstraObject hofstra_object(const Hofstra& h, ObjId o);
HofstraMorphism hofstra_morphism(const Hofstra& h, const Arrow& a);
/// Four-part shapes, injectivity and lossless recomposition on every hom-set
/// (I, X, U) -> (J, Y, V) whose products I·X·U, I·X·V and J·Y·V are at most
/// max_product (all hom-sets when unset).
BijectionReport check_hofstra_parts(const Hofstra& h, std::optional<std::size_t> max_product = std::nullopt);

/// dual(Fam(dual P)). Needs pullbacks in the base.
ClovenFibration cofam(const ClovenFibration& p);

/// Fam(Fam(P)) -> Fam(cod) -> X↓ -> X with the top two levels dualized
/// over X↓. Needs pullbacks in the base of P.
struct DependentDial {
  Tower tower;
  Tower dual;
  const FinCategory& category() const { return dual.top(); }
};
DependentDial dependent_dial(const ClovenFibration& p);

/// C^{↓^n} -> ... -> C↓ -> C by iterated codomain fibrations.
Tower cube_tower(const FinCategory& c, std::size_t n);

}  // namespace dialens
