#pragma once

#include "dialens/fib.hpp"

namespace dialens {

/// A morphism E -> D of the dual: a base arrow f: P(E) -> P(D) and a
/// vertical backward part f♯: f*D -> E.
struct DualMorphism {
  Arrow base;
  Arrow backward;
  friend bool operator==(const DualMorphism&, const DualMorphism&) = default;
};

/// E <- apex -> D with a vertical left leg and a cartesian right leg.
struct VertCartSpan {
  ObjId apex = 0;
  Arrow vert;
  Arrow cart;
};

/// The dual fibration: same objects as E, Hom over f from E to D the
/// vertical arrows f*D -> E, cleavage (f, id). With verify set, F is
/// first run through check_fibration and a failure throws StructuralError.
ClovenFibration dual_fibration(const ClovenFibration& f, bool verify = false);

bool is_dual(const FinCategory& c);
/// The fibration a dual total category was built from.
const ClovenFibration& dual_of(const FinCategory& dual_total);
DualMorphism dual_parts(const FinCategory& dual_total, const Arrow& a);
Arrow dual_arrow(const FinCategory& dual_total, ObjId e, ObjId d, const DualMorphism& m);

/// Canonical representative: the cartesian leg is replaced by the chosen
/// lift and the comparison iso is absorbed into the backward part.
DualMorphism normalize_span(const ClovenFibration& f, const VertCartSpan& s);
VertCartSpan span_compose(const ClovenFibration& f, const VertCartSpan& s1, const VertCartSpan& s2);
/// The span (f♯, lift(f, D)) of a normalized morphism into D.
VertCartSpan span_of(const ClovenFibration& f, const DualMorphism& m, ObjId d);

/// The dual of a fibration map G: Q -> P between the given duals.
FinFunctor dual_map(const FinFunctor& g, const ClovenFibration& q, const ClovenFibration& p,
                    const ClovenFibration& dual_q, const ClovenFibration& dual_p);

/// The identity-on-objects comparison dd(F) -> F, (f, (id, s)) |-> s ⨟ lift(f, D).
FinFunctor involution_comparison(const ClovenFibration& f, const ClovenFibration& dd);
/// dd(F) is isomorphic to F over the base via involution_comparison.
bool check_involution(const ClovenFibration& f);
LawReport check_involution_report(const ClovenFibration& f);

}  // namespace dialens
