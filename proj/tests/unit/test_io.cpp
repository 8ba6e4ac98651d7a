#include "doctest.h"

#include "dialens/instances.hpp"
#include "dialens/io.hpp"
#include "dialens/report.hpp"

using namespace dialens;

TEST_CASE("category documents round-trip") {
  for (const FinCategory& c : {finset(2), walking_arrow(), bmonoid(z2())}) {
    const Json doc = category_to_json(c);
    const FinCategory back = category_from_json(doc);
    CHECK(categories_equal(c, back));
    CHECK(dump_json(category_to_json(back)) == dump_json(doc));
  }
}

TEST_CASE("empty category") {
  const Json doc = Json::parse(R"({"objects": [], "morphisms": [], "identities": {}, "compose": []})");
  const FinCategory c = category_from_json(doc);
  CHECK(c.object_count() == 0);
  CHECK(check_category(c).ok());
}

TEST_CASE("unknown and missing fields are rejected") {
  Json doc = category_to_json(walking_arrow());
  doc["extra"] = 1;
  CHECK_THROWS_AS(category_from_json(doc), ParseError);
  doc = category_to_json(walking_arrow());
  doc.erase("compose");
  CHECK_THROWS_AS(category_from_json(doc), ParseError);
  doc = category_to_json(walking_arrow());
  doc["morphisms"][0]["label"] = "x";
  CHECK_THROWS_AS(category_from_json(doc), ParseError);
  doc = category_to_json(walking_arrow());
  doc["kind"] = "functor";
  CHECK_THROWS_AS(category_from_json(doc), ParseError);
}

TEST_CASE("dangling references are structural errors") {
  Json doc = category_to_json(walking_arrow());
  doc["morphisms"].push_back({{"id", "v"}, {"src", "a"}, {"dst", "c"}});
  CHECK_THROWS_AS(category_from_json(doc), StructuralError);
}

TEST_CASE("functor and fibration documents round-trip") {
  const ClovenFibration s = simple_fib(2, 1);
  const Json doc = fibration_to_json(s);
  const ClovenFibration back = fibration_from_json(doc);
  CHECK(check_fibration(back).ok());
  CHECK(categories_equal(back.total(), s.total()));
  CHECK(dump_json(fibration_to_json(back)) == dump_json(doc));
  const FinFunctor f = functor_from_json(functor_to_json(s.functor()));
  CHECK(check_functor(f).ok());
}

TEST_CASE("broken cleavage is reported with a witness") {
  const ClovenFibration sub = subobject_fib(2);
  Json doc = fibration_to_json(sub);
  // Point a lift of a non-identity base arrow at an arrow that is not cartesian.
  const FinCategory& E = sub.total();
  const auto eid = arrow_ids(E), xid = arrow_ids(sub.base());
  bool changed = false;
  for (auto& e : doc["cleavage"])
    E.for_each_arrow([&](const Arrow& g) {
      if (changed || e["object_over"] != E.object_label(g.dst) || xid.at(sub(g)) != e["base_morphism"]) return;
      if (sub.base().is_identity(sub(g)) || sub.is_cartesian(g)) return;
      e["lift"] = eid.at(g);
      changed = true;
    });
  REQUIRE(changed);
  auto r = check_fibration(fibration_from_json(doc));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.violations.front().witness.empty());

  doc = fibration_to_json(sub);
  for (auto it = doc["cleavage"].begin(); it != doc["cleavage"].end(); ++it) {
    bool identity = false;
    sub.base().for_each_arrow([&](const Arrow& u) {
      if (xid.at(u) == (*it)["base_morphism"]) identity = sub.base().is_identity(u);
    });
    if (!identity) {
      doc["cleavage"].erase(it);
      break;
    }
  }
  auto missing = check_fibration(fibration_from_json(doc));
  CHECK(missing.has_structural());

  doc = fibration_to_json(sub);
  bool moved = false;
  for (auto& e : doc["cleavage"])
    E.for_each_arrow([&](const Arrow& g) {
      if (moved || e["object_over"] != E.object_label(g.dst) || xid.at(sub(g)) != e["base_morphism"]) return;
      if (!sub.base().is_identity(sub(g)) || E.is_identity(g)) return;
      e["lift"] = eid.at(g);
      moved = true;
    });
  REQUIRE(moved);
  CHECK(check_fibration(fibration_from_json(doc)).has_structural());
}

TEST_CASE("tower documents validate endpoints") {
  const Tower t = dialectica_tower(1);
  const Json doc = tower_to_json(t);
  const Tower back = tower_from_json(doc);
  CHECK(back.height() == 2);
  CHECK(check_tower(back).ok());
  CHECK(dump_json(tower_to_json(back)) == dump_json(doc));

  Json bad = doc;
  bad["levels"][1] = fibration_to_json(simple_fib(2, 2));
  CHECK_THROWS_AS(tower_from_json(bad), StructuralError);
}

TEST_CASE("reports round-trip") {
  LawReport law;
  law.law("associativity", "f\tg ; h\nsecond line");
  CheckReport r = make_report("cat.json", {"identity", "associativity"}, law);
  r.wall_ms = 12.5;
  CHECK(r.checks.size() == 2);
  CHECK(r.checks[0].pass);
  CHECK_FALSE(r.checks[1].pass);
  CHECK(exit_code(r) == 1);
  const std::string text = to_text(r);
  const CheckReport back = parse_report(text);
  CHECK(back == r);
  CHECK(to_text(back) == text);
  CHECK_THROWS_AS(parse_report("subject\tx\nbogus\n"), ParseError);

  LawReport s;
  s.structural("missing identity", "object a");
  CHECK(exit_code(make_report("x", {}, s)) == 2);
  CHECK(exit_code(make_report("x", {"identity"}, LawReport{})) == 0);
}
