// dialens: law checks, hom enumeration, oracle comparisons and generators.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "dialens/instances.hpp"
#include "dialens/io.hpp"
#include "dialens/report.hpp"

using namespace dialens;

namespace {

constexpr int kCapExit = 3;
constexpr int kStructuralExit = 2;

enum class Kind { kCategory, kFunctor, kFibration, kTower };

Kind kind_of(const Json& doc) {
  if (auto k = document_kind(doc)) {
    if (*k == "category") return Kind::kCategory;
    if (*k == "functor") return Kind::kFunctor;
    if (*k == "fibration") return Kind::kFibration;
    if (*k == "tower") return Kind::kTower;
    throw ParseError("unknown document kind '" + *k + "'");
  }
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  if (doc.contains("levels")) return Kind::kTower;
  if (doc.contains("cleavage")) return Kind::kFibration;
  if (doc.contains("source")) return Kind::kFunctor;
  if (doc.contains("objects")) return Kind::kCategory;
  throw ParseError("cannot tell the document kind");
}

struct Loaded {
  Json doc;
  std::filesystem::path dir;
  Kind kind;
};

Loaded load(const std::string& path) {
  Json doc = read_json(path);
  const Kind k = kind_of(doc);
  return {std::move(doc), std::filesystem::path(path).parent_path(), k};
}

Tower as_tower(const Loaded& l) {
  if (l.kind == Kind::kFibration) return Tower{{fibration_from_json(l.doc, l.dir)}};
  if (l.kind == Kind::kTower) return tower_from_json(l.doc, l.dir);
  throw StructuralError("expected a fibration or tower document");
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty())
    std::cout << dump_json(doc);
  else
    write_json(out, doc);
}

void emit(const CheckReport& r, bool quiet) {
  if (!quiet) {
    std::cout << to_text(r);
    return;
  }
  const auto pass = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckEntry& c) { return c.pass; });
  std::cout << "pass " << pass << " fail " << r.checks.size() - pass << "\n";
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string> kCategoryLaws{"identity law", "associativity"};
const std::vector<std::string> kFunctorLaws{"preserves identities", "preserves composition"};
const std::vector<std::string> kFibrationLaws{"preserves identities", "preserves composition", "lift over its arrow",
                                              "lift is cartesian", "lifts compose"};
const std::vector<std::string> kAmbiLaws{"isomorphisms in both classes",
                                         "left class closed under composition",
                                         "right class closed under composition",
                                         "factorization exists",
                                         "factorization unique up to unique iso",
                                         "opcartesian lifts of left arrows",
                                         "cartesian lifts of right arrows",
                                         "opcartesian-vertical-cartesian factorization"};
const std::vector<std::string> kBijectionLaws{"objects injective", "objects round-trip", "hom cardinality",
                                              "homs injective", "composition transported"};

ObjId find_object(const FinCategory& c, const std::string& label) {
  if (auto o = c.find_object(label)) return *o;
  throw StructuralError("unknown object '" + label + "'");
}

// check ------------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& suite, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  const Loaded l = load(path);
  CheckReport r;
  if (suite == "category") {
    if (l.kind != Kind::kCategory) throw StructuralError("expected a category document");
    r = make_report(path, kCategoryLaws, check_category(category_from_json(l.doc)));
  } else if (suite == "functor") {
    if (l.kind != Kind::kFunctor) throw StructuralError("expected a functor document");
    r = make_report(path, kFunctorLaws, check_functor(functor_from_json(l.doc, l.dir)));
  } else if (suite == "fibration") {
    if (l.kind != Kind::kFibration) throw StructuralError("expected a fibration document");
    r = make_report(path, kFibrationLaws, check_fibration(fibration_from_json(l.doc, l.dir)));
  } else if (suite == "tower") {
    const Tower t = as_tower(l);
    std::vector<std::string> laws;
    for (std::size_t k = 1; k <= t.height(); ++k)
      for (const auto& law : kFibrationLaws) laws.push_back("P_" + std::to_string(k) + ": " + law);
    r = make_report(path, laws, check_tower(t));
  } else {
    const Tower t = as_tower(l);
    if (t.height() != 2) throw StructuralError("ambifibration suite needs a tower of height 2");
    const Tower d = iterated_dual(t);
    const AmbifibrationReport a = check_ambifibration(dual_ambifibration_spec(d));
    r = make_report(path, kAmbiLaws, a.report);
    r.checks.push_back({"witness per arrow (" + std::to_string(a.witnesses.size()) + " of " +
                            std::to_string(d.top().arrow_count()) + ")",
                        a.witnesses.size() == d.top().arrow_count(), {}});
  }
  r.wall_ms = ms_since(t0);
  emit(r, quiet);
  return exit_code(r);
}

// hom / objects ----------------------------------------------------------

std::string part_label(const Tower& t, std::size_t k, const Arrow& a) {
  return part_direction(k) + " " + t.category(k).arrow_label(a);
}

int cmd_hom(const std::string& path, const std::string& src, const std::string& dst, bool decompose, bool quiet) {
  const Loaded l = load(path);
  std::vector<std::string> lines;
  if (l.kind == Kind::kCategory) {
    if (decompose) throw StructuralError("--decompose needs a fibration or tower");
    const FinCategory c = category_from_json(l.doc);
    const auto ids = arrow_ids(c);
    for (const Arrow& f : c.hom(find_object(c, src), find_object(c, dst))) lines.push_back(ids.at(f));
  } else {
    const Tower t = as_tower(l);
    const Tower d = iterated_dual(t);
    const FinCategory& D = d.top();
    for (const Arrow& f : D.hom(find_object(D, src), find_object(D, dst))) {
      std::string line = D.arrow_label(f);
      if (decompose) {
        const DialensMorphism m = dialens_decompose(D, t.height(), f);
        for (std::size_t k = 0; k < m.parts.size(); ++k) line += "\t" + part_label(t, k, m.parts[k]);
      }
      lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  if (!quiet)
    for (const auto& s : lines) std::cout << s << "\n";
  std::cout << "count " << lines.size() << "\n";
  return 0;
}

int cmd_objects(const std::string& path, bool dual) {
  const Loaded l = load(path);
  FinCategory c;
  Tower d;
  if (l.kind == Kind::kCategory && !dual) {
    c = category_from_json(l.doc);
  } else {
    const Tower t = as_tower(l);
    if (dual) d = iterated_dual(t);
    c = dual ? d.top() : t.top();
  }
  for (ObjId o : c.objects()) std::cout << c.object_label(o) << "\n";
  std::cout << "count " << c.object_count() << "\n";
  return 0;
}

// compare ----------------------------------------------------------------

struct CompareOptions {
  std::size_t cap = 2;
  std::string monoid = "Z2";
  std::string action = "trivial";
  std::size_t index_cap = 1;
  std::size_t fibre_cap = 2;
  std::size_t max_product = 4;
};

Monoid monoid_named(const std::string& name) {
  if (name == "Z2") return z2();
  if (name == "trivial") return trivial_monoid();
  throw StructuralError("unknown monoid '" + name + "'");
}

MonoidAction action_named(const std::string& name, const Monoid& m, std::size_t cap) {
  if (name == "trivial") return trivial_action(m, finset(cap));
  if (m.size() != 2) throw StructuralError("action '" + name + "' needs the monoid Z2");
  if (name == "conjugation") return swap_conjugation(cap);
  if (name == "discrete-swap") return swap_discrete();
  throw StructuralError("unknown action '" + name + "'");
}

CheckReport bijection_report(const std::string& subject, const BijectionReport& b) {
  CheckReport r = make_report(subject, kBijectionLaws, b.report);
  r.checks.push_back({"objects " + std::to_string(b.objects), true, {}});
  r.checks.push_back({"morphisms " + std::to_string(b.morphisms), true, {}});
  r.checks.push_back({"composites " + std::to_string(b.composites), true, {}});
  return r;
}

int cmd_compare(const std::string& construction, const CompareOptions& o, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  if (construction == "dialectica") {
    r = bijection_report("dialectica cap " + std::to_string(o.cap), check_dialectica_bijection(dialectica(o.cap)));
  } else if (construction == "lenses") {
    const ClovenFibration s = simple_fib(o.cap, o.cap);
    const Tower d = iterated_dual(Tower{{s}});
    r.subject = "lenses cap " + std::to_string(o.cap);
    std::uint64_t total = 0;
    bool ok = true;
    for (ObjId a : d.top().objects())
      for (ObjId b : d.top().objects()) {
        const auto [u, x] = simple_object(s.total(), a);
        const auto [v, y] = simple_object(s.total(), b);
        std::uint64_t expect = 1;
        for (std::uint32_t k = 0; k < u; ++k) expect *= v;
        for (std::uint32_t k = 0; k < u * y; ++k) expect *= x;
        const std::uint64_t got = d.top().hom_size(a, b);
        total += got;
        if (got != expect) {
          ok = false;
          r.checks.push_back({"hom count |V|^|U| |X|^(|U||Y|)", false,
                              s.total().object_label(a) + " -> " + s.total().object_label(b) + ": " +
                                  std::to_string(got) + " != " + std::to_string(expect)});
        }
      }
    if (ok) r.checks.push_back({"hom count |V|^|U| |X|^(|U||Y|)", true, {}});
    r.checks.push_back({"morphisms " + std::to_string(total), true, {}});
  } else if (construction == "preoptics") {
    const Monoid m = monoid_named(o.monoid);
    const MonoidAction act = action_named(o.action, m, o.cap);
    const Preoptics p = preoptics(act, act);
    r = bijection_report("preoptics " + o.monoid + " " + o.action, check_preoptic_bijection(p));
    const FinCategory& c = act.carrier;
    for (ObjId A : c.objects())
      for (ObjId B : c.objects())
        for (ObjId S : c.objects())
          for (ObjId T : c.objects()) {
            const auto n = p.category.hom_size(preoptic_object_of(p, A, B), preoptic_object_of(p, S, T));
            r.checks.push_back({"hom (" + c.object_label(A) + "," + c.object_label(B) + ")->(" + c.object_label(S) +
                                    "," + c.object_label(T) + ") = " + std::to_string(n),
                                true, {}});
          }
  } else if (construction == "hofstra") {
    const SkeletonFibration sub = [](const FinCategory& c) { return subobject_fib(c); };
    const Hofstra h = hofstra_dial(sub, o.index_cap, o.fibre_cap);
    r = bijection_report("hofstra sub " + std::to_string(o.index_cap) + "x" + std::to_string(o.fibre_cap),
                         check_hofstra_parts(h, o.max_product));
  } else {
    throw StructuralError("unknown construction '" + construction + "'");
  }
  r.wall_ms = ms_since(t0);
  emit(r, quiet);
  return exit_code(r);
}

// dualize ----------------------------------------------------------------

int cmd_dualize(const std::string& path, std::size_t levels, const std::string& out, bool certify) {
  const Loaded l = load(path);
  const Tower t = as_tower(l);
  if (levels > t.height())
    throw StructuralError("--levels " + std::to_string(levels) + " exceeds the height " + std::to_string(t.height()));
  Tower result = t;
  if (levels > 0) {
    const Tower upper{std::vector<ClovenFibration>(t.levels.begin(), t.levels.begin() + levels)};
    result = iterated_dual(upper);
    result.levels.insert(result.levels.end(), t.levels.begin() + levels, t.levels.end());
  }
  if (l.kind == Kind::kFibration)
    emit(fibration_to_json(result.levels.front()), out);
  else
    emit(tower_to_json(result), out);
  if (!certify) return 0;
  if (t.height() != 1 || levels != 1) throw StructuralError("--certify needs a height-one input and --levels 1");
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r = make_report(path + " involution", {"comparison over the base", "comparison bijective on homs"},
                              check_involution_report(t.level(1)));
  r.wall_ms = ms_since(t0);
  std::ostream& os = out.empty() ? std::cerr : std::cout;
  os << to_text(r);
  return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite fibrations, duals, towers and their law checks."};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Print counts only");
  std::size_t cap = 2;
  app.add_option("--cap", cap, "Default cap for generated instances")->envname("DIALENS_CAP")->capture_default_str();

  std::string path, suite = "category", src, dst, out, construction;
  bool decompose = false, dual = false, certify = false;
  std::size_t levels = 1;
  CompareOptions co;

  auto* check = app.add_subcommand("check", "Run a law suite on a file");
  check->add_option("path", path)->required();
  check->add_option("--suite", suite)
      ->check(CLI::IsMember({"category", "functor", "fibration", "tower", "ambifibration"}))
      ->capture_default_str();

  auto* hom = app.add_subcommand("hom", "Enumerate a hom-set (of the dual for fibrations and towers)");
  hom->add_option("path", path)->required();
  hom->add_option("src", src)->required();
  hom->add_option("dst", dst)->required();
  hom->add_flag("--decompose", decompose, "Alternating-parts form");

  auto* objects = app.add_subcommand("objects", "List object labels");
  objects->add_option("path", path)->required();
  objects->add_flag("--dual", dual, "Objects of the iterated dual");

  auto* compare = app.add_subcommand("compare", "Compare a construction with its direct definition");
  compare->add_option("construction", construction)
      ->required()
      ->check(CLI::IsMember({"dialectica", "preoptics", "lenses", "hofstra"}));
  compare->add_option("--monoid", co.monoid)->capture_default_str();
  compare->add_option("--action", co.action)->capture_default_str();
  compare->add_option("--index-cap", co.index_cap)->capture_default_str();
  compare->add_option("--fibre-cap", co.fibre_cap)->capture_default_str();
  compare->add_option("--max-product", co.max_product)->capture_default_str();

  auto* dualize = app.add_subcommand("dualize", "Write the iterated dual of the top levels");
  dualize->add_option("path", path)->required();
  dualize->add_option("--levels", levels)->capture_default_str();
  dualize->add_option("-o,--output", out);
  dualize->add_flag("--certify", certify, "Check the double dual against the input");

  std::size_t index_cap = 0, fibre_cap = 0;
  std::string base = "sub", monoid = "Z2", action = "trivial";
  auto* g_finset = app.add_subcommand("finset", "FinSet skeleton");
  auto* g_simple = app.add_subcommand("simple-fib", "Simple fibration");
  auto* g_sub = app.add_subcommand("sub-fib", "Subobject fibration");
  auto* g_dial = app.add_subcommand("dialectica-tower", "Subobject-over-simple tower");
  auto* g_para = app.add_subcommand("para", "Para of an action, as the opposite fibration");
  auto* g_hof = app.add_subcommand("hofstra", "Three-level sum completion tower");
  for (auto* g : {g_finset, g_simple, g_sub, g_dial, g_para, g_hof}) g->add_option("-o,--output", out);
  for (auto* g : {g_simple, g_hof}) {
    g->add_option("--index-cap", index_cap, "Defaults to --cap");
    g->add_option("--fibre-cap", fibre_cap, "Defaults to --cap");
  }
  g_para->add_option("--monoid", monoid)->capture_default_str();
  g_para->add_option("--action", action)->capture_default_str();
  g_hof->add_option("--base", base)->check(CLI::IsMember({"sub", "identity"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kStructuralExit;
  }

  try {
    if (*check) return cmd_check(path, suite, quiet);
    if (*hom) return cmd_hom(path, src, dst, decompose, quiet);
    if (*objects) return cmd_objects(path, dual);
    if (*compare) {
      co.cap = cap;
      return cmd_compare(construction, co, quiet);
    }
    if (*dualize) return cmd_dualize(path, levels, out, certify);
    const std::size_t ic = index_cap ? index_cap : cap, fc = fibre_cap ? fibre_cap : cap;
    if (*g_finset) emit(category_to_json(finset(cap)), out);
    if (*g_simple) emit(fibration_to_json(simple_fib(ic, fc)), out);
    if (*g_sub) emit(fibration_to_json(subobject_fib(cap)), out);
    if (*g_dial) emit(tower_to_json(dialectica_tower(cap)), out);
    if (*g_para) {
      const Monoid m = monoid_named(monoid);
      const MonoidAction act = action_named(action, m, cap);
      const OpCloven p = para(act, bmonoid(m));
      emit(fibration_to_json(opposite_fibration(p.functor, p.opcleavage)), out);
    }
    if (*g_hof) {
      SkeletonFibration pf = [&](const FinCategory& c) { return base == "sub" ? subobject_fib(c) : identity_fib(c); };
      emit(tower_to_json(hofstra_dial(pf, ic, fc).tower), out);
    }
    return 0;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStructuralExit;
  }
}
