#pragma once

#include "dialens/dual.hpp"

namespace dialens {

/// E_n -> ... -> E_1 -> E_0. levels[0] is the top fibration P_n.
struct Tower {
  std::vector<ClovenFibration> levels;

  std::size_t height() const { return levels.size(); }
  /// P_k for 1 <= k <= height (P_1 is the bottom level).
  const ClovenFibration& level(std::size_t k) const { return levels.at(levels.size() - k); }
  const FinCategory& base() const { return levels.back().base(); }
  const FinCategory& top() const { return levels.front().total(); }
  /// E_k, with E_0 the base.
  const FinCategory& category(std::size_t k) const { return k == 0 ? base() : level(k).total(); }
  /// The fibration E_height -> E_k obtained by composing levels.
  ClovenFibration composite_down_to(std::size_t k) const;
};

/// Endpoints match and every level passes check_fibration.
LawReport check_tower(const Tower& t);

/// Height 1 is dual_fibration. Height n dualizes the upper tower over E_1,
/// composes each of its levels down to E_0, dualizes those over E_0 and
/// links them by the duals of the upper level maps.
Tower iterated_dual(const Tower& t);

/// Arrow of the top total of an iterated dual in alternating-parts form.
/// parts[k] lives in E_k: parts[0] is the base arrow, odd parts run
/// backwards, even parts forwards.
struct DialensMorphism {
  Arrow raw;
  std::vector<Arrow> parts;
  friend bool operator==(const DialensMorphism& a, const DialensMorphism& b) { return a.raw == b.raw; }
};

/// height = height of the original tower. `dual_top` is iterated_dual(t).top().
DialensMorphism dialens_decompose(const FinCategory& dual_top, std::size_t height, const Arrow& a);
Arrow dialens_recompose(const FinCategory& dual_top, std::size_t height, ObjId src, ObjId dst,
                        const std::vector<Arrow>& parts);
std::vector<DialensMorphism> dialens_homset(const Tower& dual, ObjId a, ObjId b);
DialensMorphism dialens_compose(const Tower& dual, const DialensMorphism& d1, const DialensMorphism& d2);
std::string part_direction(std::size_t k);

struct TernaryFactorization {
  Arrow vert_q;  // Q-vertical
  Arrow vert_p;  // Q-cartesian over a P-vertical arrow
  Arrow cart_p;  // Q-cartesian over a P-cartesian arrow
};

/// For a height-2 tower with Q = P_2 and P = P_1.
TernaryFactorization ternary_factorize(const Tower& t, const Arrow& phi);
/// Invariants of a ternary factorization of phi (composite and classes).
LawReport check_ternary(const Tower& t, const Arrow& phi, const TernaryFactorization& f);

struct AmbifibrationSpec {
  FinFunctor functor;
  std::function<bool(const Arrow&)> left;
  std::function<bool(const Arrow&)> right;
};

struct AmbiWitness {
  Arrow arrow;
  Arrow opcart;
  Arrow vert;
  Arrow cart;
};

struct AmbifibrationReport {
  LawReport report;
  std::vector<AmbiWitness> witnesses;
};

/// (L, R) is a factorization system on the base, L-arrows have op-lifts
/// that are opcartesian relative to L, R-arrows have lifts cartesian
/// relative to R, and every arrow factors as (opcart, vert, cart).
AmbifibrationReport check_ambifibration(const AmbifibrationSpec& s);
/// The (vert^op, cart) spec of the top level of a height-2 iterated dual.
/// The left class is the arrows over isomorphisms so that it contains
/// every isomorphism of the base.
AmbifibrationSpec dual_ambifibration_spec(const Tower& dual);

/// Cartesian for the restriction of A to base arrows in the class.
bool is_cartesian_relative(const FinFunctor& a, const Arrow& phi, const std::function<bool(const Arrow&)>& cls);
bool is_opcartesian_relative(const FinFunctor& a, const Arrow& phi, const std::function<bool(const Arrow&)>& cls);

}  // namespace dialens
