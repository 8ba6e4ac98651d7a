#include "dialens/tower.hpp"

#include <algorithm>
#include <map>

namespace dialens {

ClovenFibration Tower::composite_down_to(std::size_t k) const {
  if (k >= height()) throw StructuralError("composite_down_to: level out of range");
  ClovenFibration out = level(height());
  for (std::size_t j = height() - 1; j > k; --j) out = compose_fib(out, level(j));
  return out;
}

LawReport check_tower(const Tower& t) {
  LawReport report;
  if (t.height() == 0) {
    report.structural("tower", "no levels");
    return report;
  }
  for (std::size_t k = 1; k < t.height(); ++k)
    if (!t.level(k + 1).base().same_as(t.level(k).total()))
      report.structural("tower", "P_" + std::to_string(k + 1) + " is not over the total of P_" + std::to_string(k));
  if (report.has_structural()) return report;
  for (std::size_t k = 1; k <= t.height(); ++k) report.merge(check_fibration(t.level(k)), "P_" + std::to_string(k));
  return report;
}

Tower iterated_dual(const Tower& t) {
  const std::size_t n = t.height();
  if (n == 0) throw StructuralError("iterated_dual: empty tower");
  const ClovenFibration& p1 = t.level(1);
  if (n == 1) return Tower{{dual_fibration(p1)}};

  const Tower upper{std::vector<ClovenFibration>(t.levels.begin(), t.levels.end() - 1)};
  const Tower ud = iterated_dual(upper);

  std::vector<ClovenFibration> c{p1};
  for (std::size_t j = 1; j < n; ++j) c.push_back(compose_fib(ud.level(j), c[j - 1]));
  std::vector<ClovenFibration> d;
  for (const auto& cj : c) d.push_back(dual_fibration(cj));

  Tower out;
  for (std::size_t j = n - 1; j >= 1; --j) {
    FinFunctor g = dual_map(ud.level(j).functor(), c[j], c[j - 1], d[j], d[j - 1]);
    out.levels.emplace_back(g, find_cleavage(g));
  }
  out.levels.push_back(d[0]);
  return out;
}

DialensMorphism dialens_decompose(const FinCategory& dual_top, std::size_t height, const Arrow& a) {
  DialensMorphism out{a, {}};
  FinCategory cat = dual_top;
  Arrow cur = a;
  for (std::size_t k = 0; k < height; ++k) {
    const DualMorphism m = dual_parts(cat, cur);
    out.parts.push_back(m.base);
    cur = m.backward;
    cat = dual_of(cat).total();
  }
  out.parts.push_back(cur);
  return out;
}

namespace {

Arrow recompose_from(const FinCategory& cat, std::size_t k, std::size_t height, ObjId src, ObjId dst,
                     const std::vector<Arrow>& parts) {
  if (k == height) {
    if (parts[k].src != src || parts[k].dst != dst || !cat.contains(parts[k]))
      throw StructuralError("dialens_recompose: last part has the wrong endpoints");
    return parts[k];
  }
  const ClovenFibration& f = dual_of(cat);
  const ObjId mid = f.reindex(parts[k], dst);
  const Arrow inner = recompose_from(f.total(), k + 1, height, mid, src, parts);
  return dual_arrow(cat, src, dst, {parts[k], inner});
}

}  // namespace

Arrow dialens_recompose(const FinCategory& dual_top, std::size_t height, ObjId src, ObjId dst,
                        const std::vector<Arrow>& parts) {
  if (parts.size() != height + 1) throw StructuralError("dialens_recompose: wrong number of parts");
  return recompose_from(dual_top, 0, height, src, dst, parts);
}

std::vector<DialensMorphism> dialens_homset(const Tower& dual, ObjId a, ObjId b) {
  std::vector<DialensMorphism> out;
  for (const Arrow& f : dual.top().hom(a, b)) out.push_back(dialens_decompose(dual.top(), dual.height(), f));
  return out;
}

DialensMorphism dialens_compose(const Tower& dual, const DialensMorphism& d1, const DialensMorphism& d2) {
  return dialens_decompose(dual.top(), dual.height(), dual.top().compose(d1.raw, d2.raw));
}

std::string part_direction(std::size_t k) {
  if (k == 0) return "base";
  return k % 2 ? "backward" : "forward";
}

TernaryFactorization ternary_factorize(const Tower& t, const Arrow& phi) {
  if (t.height() != 2) throw StructuralError("ternary_factorize: needs a tower of height 2");
  const ClovenFibration& P = t.level(1);
  const ClovenFibration& Q = t.level(2);
  const FinCategory& E = Q.total();
  const Arrow psi = Q(phi);
  const Arrow psi_c = P.lift(P(psi), psi.dst);
  auto psi_v = vertical_factor(P.functor(), psi, psi_c);
  if (!psi_v) throw StructuralError("ternary_factorize: no P-vertical part");
  const Arrow c = Q.lift(psi_c, phi.dst);
  const Arrow b = Q.lift(*psi_v, c.src);
  auto a = vertical_factor(Q.functor(), phi, E.compose(b, c));
  if (!a) throw StructuralError("ternary_factorize: no Q-vertical part");
  return {*a, b, c};
}

LawReport check_ternary(const Tower& t, const Arrow& phi, const TernaryFactorization& f) {
  LawReport report;
  const ClovenFibration& P = t.level(1);
  const ClovenFibration& Q = t.level(2);
  const FinCategory& E = Q.total();
  const std::string w = E.arrow_label(phi);
  if (E.compose({f.vert_q, f.vert_p, f.cart_p}) != phi) report.law("ternary composite", w);
  if (!Q.functor().is_vertical(f.vert_q)) report.law("first part Q-vertical", w);
  if (!Q.is_cartesian(f.vert_p) || !P.functor().is_vertical(Q(f.vert_p))) report.law("second part over P-vertical", w);
  if (!Q.is_cartesian(f.cart_p) || !P.is_cartesian(Q(f.cart_p))) report.law("third part over P-cartesian", w);
  return report;
}

bool is_cartesian_relative(const FinFunctor& p, const Arrow& phi, const std::function<bool(const Arrow&)>& cls) {
  const FinCategory& E = p.source();
  const FinCategory& X = p.target();
  const Arrow f = p(phi);
  for (ObjId u : E.objects())
    for (const Arrow& g : X.hom(p(u), f.src)) {
      if (!cls(g)) continue;
      const auto& over_g = p.arrows_over(u, phi.src, g);
      const auto& over_gf = p.arrows_over(u, phi.dst, X.compose(g, f));
      if (over_g.size() != over_gf.size()) return false;
      std::vector<Arrow> images;
      for (const Arrow& h : over_g) images.push_back(E.compose(h, phi));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
  return true;
}

bool is_opcartesian_relative(const FinFunctor& p, const Arrow& phi, const std::function<bool(const Arrow&)>& cls) {
  const FinCategory& E = p.source();
  const FinCategory& X = p.target();
  const Arrow f = p(phi);
  for (ObjId u : E.objects())
    for (const Arrow& g : X.hom(f.dst, p(u))) {
      if (!cls(g)) continue;
      const auto& over_g = p.arrows_over(phi.dst, u, g);
      const auto& over_fg = p.arrows_over(phi.src, u, X.compose(f, g));
      if (over_g.size() != over_fg.size()) return false;
      std::vector<Arrow> images;
      for (const Arrow& h : over_g) images.push_back(E.compose(phi, h));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
  return true;
}

namespace {

struct Factorization {
  Arrow left, right;
};

std::vector<Factorization> factorizations(const FinCategory& X, const AmbifibrationSpec& s, const Arrow& h) {
  std::vector<Factorization> out;
  for (ObjId m : X.objects())
    for (const Arrow& l : X.hom(h.src, m)) {
      if (!s.left(l)) continue;
      for (const Arrow& r : X.hom(m, h.dst))
        if (s.right(r) && X.compose(l, r) == h) out.push_back({l, r});
    }
  return out;
}

void check_factorization_system(const FinCategory& X, const AmbifibrationSpec& s, LawReport& report) {
  X.for_each_arrow([&](const Arrow& h) {
    const std::string w = X.arrow_label(h);
    if (is_iso(X, h) && !(s.left(h) && s.right(h))) report.law("isomorphisms in both classes", w);
    for (ObjId c : X.objects())
      for (const Arrow& g : X.hom(h.dst, c)) {
        if (s.left(h) && s.left(g) && !s.left(X.compose(h, g)))
          report.law("left class closed under composition", w + " ; " + X.arrow_label(g));
        if (s.right(h) && s.right(g) && !s.right(X.compose(h, g)))
          report.law("right class closed under composition", w + " ; " + X.arrow_label(g));
      }
    const auto fs = factorizations(X, s, h);
    if (fs.empty()) {
      report.law("factorization exists", w);
      return;
    }
    const Factorization& f0 = fs.front();
    for (const Factorization& f : fs) {
      int count = 0;
      for (const Arrow& i : X.hom(f0.left.dst, f.left.dst))
        if (is_iso(X, i) && X.compose(f0.left, i) == f.left && X.compose(i, f.right) == f0.right) ++count;
      if (count != 1) report.law("factorization unique up to unique iso", w);
    }
  });
}

}  // namespace

AmbifibrationReport check_ambifibration(const AmbifibrationSpec& s) {
  AmbifibrationReport out;
  LawReport& report = out.report;
  report.merge(check_functor(s.functor));
  if (report.has_structural()) return out;
  const FinFunctor& A = s.functor;
  const FinCategory& E = A.source();
  const FinCategory& X = A.target();
  check_factorization_system(X, s, report);

  std::map<std::pair<Arrow, ObjId>, std::optional<Arrow>> oplifts, lifts;
  auto oplift = [&](const Arrow& l, ObjId e) -> std::optional<Arrow> {
    auto key = std::make_pair(l, e);
    auto it = oplifts.find(key);
    if (it != oplifts.end()) return it->second;
    std::optional<Arrow> found;
    for (ObjId d : A.objects_over(l.dst)) {
      for (const Arrow& phi : A.arrows_over(e, d, l))
        if (is_opcartesian_relative(A, phi, s.left)) {
          found = phi;
          break;
        }
      if (found) break;
    }
    return oplifts[key] = found;
  };
  auto lift = [&](const Arrow& r, ObjId d) -> std::optional<Arrow> {
    auto key = std::make_pair(r, d);
    auto it = lifts.find(key);
    if (it != lifts.end()) return it->second;
    std::optional<Arrow> found;
    for (ObjId e : A.objects_over(r.src)) {
      for (const Arrow& phi : A.arrows_over(e, d, r))
        if (is_cartesian_relative(A, phi, s.right)) {
          found = phi;
          break;
        }
      if (found) break;
    }
    return lifts[key] = found;
  };

  X.for_each_arrow([&](const Arrow& h) {
    if (s.left(h))
      for (ObjId e : A.objects_over(h.src))
        if (!oplift(h, e)) report.law("opcartesian lifts of left arrows", X.arrow_label(h) + " at " + E.object_label(e));
    if (s.right(h))
      for (ObjId d : A.objects_over(h.dst))
        if (!lift(h, d)) report.law("cartesian lifts of right arrows", X.arrow_label(h) + " at " + E.object_label(d));
  });
  if (!report.ok()) return out;

  E.for_each_arrow([&](const Arrow& phi) {
    const auto fs = factorizations(X, s, A(phi));
    const auto o = oplift(fs.front().left, phi.src);
    const auto c = lift(fs.front().right, phi.dst);
    for (const Arrow& v : A.vertical(o->dst, c->src))
      if (E.compose({*o, v, *c}) == phi) {
        out.witnesses.push_back({phi, *o, v, *c});
        return;
      }
    report.law("opcartesian-vertical-cartesian factorization", E.arrow_label(phi));
  });
  return out;
}

AmbifibrationSpec dual_ambifibration_spec(const Tower& dual) {
  if (dual.height() != 2) throw StructuralError("dual_ambifibration_spec: needs a tower of height 2");
  const ClovenFibration lens = dual.level(1);
  return {dual.level(2).functor(), [lens](const Arrow& f) { return is_iso(lens.base(), lens(f)); },
          [lens](const Arrow& f) { return lens.is_cartesian(f); }};
}

}  // namespace dialens
