#pragma once

#include "dialens/limits.hpp"

namespace dialens {

/// A choice of lifts. lift(f, d) with f: X -> P(d) returns an arrow of the
/// total category over f whose codomain is d. Op-cleavages use the same
/// interface read backwards: f: P(e) -> Y and the result leaves e.
class CleavageImpl {
 public:
  virtual ~CleavageImpl() = default;
  virtual Arrow lift(const Arrow& f, ObjId d) const = 0;
  virtual std::vector<Violation> structural_errors() const { return {}; }
};

/// Cleavage from a callable.
std::shared_ptr<const CleavageImpl> make_cleavage(std::function<Arrow(const Arrow&, ObjId)> lift);

class ClovenFibration {
 public:
  ClovenFibration() = default;
  ClovenFibration(FinFunctor p, std::shared_ptr<const CleavageImpl> cleavage);

  const FinFunctor& functor() const { return p_; }
  const FinCategory& total() const { return p_.source(); }
  const FinCategory& base() const { return p_.target(); }
  ObjId operator()(ObjId e) const { return p_(e); }
  Arrow operator()(const Arrow& f) const { return p_(f); }

  /// Chosen lift f*d -> d. Lifts of identities are identities. Memoized.
  Arrow lift(const Arrow& f, ObjId d) const;
  /// f*d, the domain of the chosen lift.
  ObjId reindex(const Arrow& f, ObjId d) const { return lift(f, d).src; }
  /// Exhaustive universal-property test. Memoized.
  bool is_cartesian(const Arrow& phi) const;

  const CleavageImpl& cleavage() const { return *cleavage_; }
  const std::shared_ptr<const CleavageImpl>& cleavage_ptr() const { return cleavage_; }
  bool valid() const { return p_.valid(); }
  bool same_as(const ClovenFibration& o) const { return p_.same_as(o.p_) && cleavage_ == o.cleavage_; }

 private:
  struct Cache;
  FinFunctor p_;
  std::shared_ptr<const CleavageImpl> cleavage_;
  std::shared_ptr<Cache> cache_;
};

/// The unique h over g with h ⨟ phi = psi, for phi cartesian. Scans the
/// arrows over g, so it also answers (first match) when phi is not.
std::optional<Arrow> factor_over(const FinFunctor& p, const Arrow& psi, const Arrow& phi, const Arrow& g);
/// factor_over with g the identity of P(src psi).
std::optional<Arrow> vertical_factor(const FinFunctor& p, const Arrow& psi, const Arrow& phi);
/// Inverse of an arrow inside its hom-sets, if any.
std::optional<Arrow> vertical_inverse(const FinFunctor& p, const Arrow& k);

FinCategory fiber_at(const ClovenFibration& f, ObjId x);
FinCategory fiber_at(const FinFunctor& p, ObjId x);

/// Functor axioms, totality of the cleavage, lifts over their arrows and
/// cartesian, and lifts of composites agreeing with composites of lifts up
/// to a vertical isomorphism (found by search).
LawReport check_fibration(const ClovenFibration& f);
/// The same checks without re-verifying the functor laws.
LawReport check_cleavage(const ClovenFibration& f);

/// Reads an op-cleavage as a cleavage of the opposite functor.
ClovenFibration opposite_fibration(const FinFunctor& p, std::shared_ptr<const CleavageImpl> opcleavage);
LawReport check_opfibration(const FinFunctor& p, std::shared_ptr<const CleavageImpl> opcleavage);
bool is_opcartesian(const FinFunctor& p, const Arrow& phi);

struct FibMorphismParts {
  Arrow total;
  Arrow vert;
  Arrow cart;
};

FibMorphismParts factorize(const ClovenFibration& f, const Arrow& phi);

/// Q over E followed by P over X: lifts are Q-lifts of P-lifts.
ClovenFibration compose_fib(const ClovenFibration& q, const ClovenFibration& p);

/// The strict pullback of P along G: F -> X, fibred over F.
ClovenFibration pullback_fib(const ClovenFibration& p, const FinFunctor& g);
/// The projection from a pullback_fib total category to the total of P.
FinFunctor pullback_projection(const ClovenFibration& pulled);
/// Components of an object or arrow of a pullback total category.
std::pair<ObjId, ObjId> pullback_object(const FinCategory& pb, ObjId o);
ObjId pullback_object_of(const FinCategory& pb, ObjId a, ObjId e);
std::pair<Arrow, Arrow> pullback_arrow(const FinCategory& pb, const Arrow& f);
/// The functor G a pullback total category was formed along.
const FinFunctor& pullback_along(const FinCategory& pb);
const FinFunctor& pullback_of(const FinCategory& pb);
Arrow pullback_arrow_of(const FinCategory& pb, const Arrow& u, const Arrow& phi);

/// A lax search for a cleavage: the first cartesian arrow over f into d.
std::shared_ptr<const CleavageImpl> find_cleavage(const FinFunctor& p);
/// Same, for op-lifts (first opcartesian arrow over f out of e).
std::shared_ptr<const CleavageImpl> find_opcleavage(const FinFunctor& p);

/// Triangle F ⨟ P = Q, and F sends chosen Q-lifts to P-cartesian arrows.
/// Sending chosen lifts suffices: every cartesian arrow is an isomorphism
/// followed by one.
LawReport check_fib_map(const FinFunctor& f, const ClovenFibration& q, const ClovenFibration& p);
/// Restriction of a fibration map to the fibers over x.
FinFunctor fiber_functor(const FinFunctor& f, const ClovenFibration& q, const ClovenFibration& p, ObjId x);

/// Pullback of a vertical arrow along a cartesian one with the same codomain.
struct VertCartSquare {
  ObjId apex = 0;
  Arrow cart;  // apex -> src v, over P(c)
  Arrow vert;  // apex -> src c
};

VertCartSquare vertcart_pullback(const ClovenFibration& f, const Arrow& v, const Arrow& c);
/// Commutes and is a pullback in the total category (exhaustive).
bool is_pullback_square(const FinCategory& c, const Arrow& top, const Arrow& left, const Arrow& right,
                        const Arrow& bottom);

}  // namespace dialens
