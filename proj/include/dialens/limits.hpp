#pragma once

#include "dialens/functor.hpp"

namespace dialens {

enum class LimitShape { kTerminal, kProduct, kPullback };

/// Diagram data by shape: terminal takes nothing; product takes two
/// objects; pullback takes a cospan f: A -> X <- B :g.
struct LimitDiagram {
  std::vector<ObjId> objects;
  std::vector<Arrow> arrows;
};

/// Apex plus one leg per diagram object (product: to A, B; pullback: to A, B).
struct Cone {
  ObjId apex = 0;
  std::vector<Arrow> legs;
};

/// Exhaustive universal-property check of a candidate cone.
bool is_limit(const FinCategory& c, LimitShape shape, const LimitDiagram& d, const Cone& cone);

/// Limiting cone or nullopt. FinSet skeletons use the canonical
/// lexicographic constructions and throw CapExceeded when the apex would
/// not fit; other categories are searched exhaustively.
std::optional<Cone> limit_search(const FinCategory& c, LimitShape shape, const LimitDiagram& d);
/// Always the exhaustive search, even on FinSet skeletons.
std::optional<Cone> limit_search_exhaustive(const FinCategory& c, LimitShape shape, const LimitDiagram& d);

std::optional<Cone> pullback(const FinCategory& c, const Arrow& f, const Arrow& g);
bool has_all_pullbacks(const FinCategory& c);

/// Left-cancellable against every parallel pair.
bool is_mono(const FinCategory& c, const Arrow& f);
bool is_iso(const FinCategory& c, const Arrow& f);
std::optional<Arrow> inverse(const FinCategory& c, const Arrow& f);
/// Some k with k ⨟ through = target (src k = src target), if one exists.
std::optional<Arrow> factor_through(const FinCategory& c, const Arrow& target, const Arrow& through);

struct SubobjectClass {
  ObjId carrier = 0;
  Arrow representative;
  std::vector<Arrow> members;
};

struct SubobjectPoset {
  ObjId carrier = 0;
  std::vector<SubobjectClass> classes;
  /// leq[i][j] iff class i factors through class j.
  std::vector<std::vector<bool>> leq;
  std::optional<std::size_t> class_of(const Arrow& mono) const;
};

SubobjectPoset subobject_poset(const FinCategory& c, ObjId a);

/// C↓ with its two projections. Objects of C↓ are the arrows of C in
/// for_each_arrow order; arrows are commuting squares.
struct ArrowCategory {
  FinCategory category;
  FinFunctor dom;
  FinFunctor cod;
};

ArrowCategory arrow_category(const FinCategory& c);
/// The C-arrow an object of C↓ stands for.
Arrow arrow_of(const FinCategory& arrow_cat, ObjId object);
ObjId object_of(const FinCategory& arrow_cat, const Arrow& f);
/// Top and bottom edges (x on domains, y on codomains) of a square.
std::pair<Arrow, Arrow> square_edges(const FinCategory& arrow_cat, const Arrow& square);
/// The square with the given edges; throws if it does not commute.
Arrow make_square(const FinCategory& arrow_cat, ObjId from, ObjId to, const Arrow& top, const Arrow& bottom);
const FinCategory& arrow_category_base(const FinCategory& arrow_cat);

}  // namespace dialens
