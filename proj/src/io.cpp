#include "dialens/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dialens {

namespace {

void require_fields(const Json& doc, const std::string& what, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!doc.is_object()) throw ParseError(what + ": expected an object");
  std::set<std::string> known{"kind"};
  for (const char* k : required) {
    if (!doc.contains(k)) throw ParseError(what + ": missing field '" + k + "'");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) throw ParseError(what + ": unknown field '" + k + "'");
  if (doc.contains("kind") && doc["kind"] != what) throw ParseError("expected a " + what + " document");
}

std::string str(const Json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + ": expected a string");
  return v.get<std::string>();
}

const Json& array(const Json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + ": expected an array");
  return v;
}

// Resolves an inline document or a path relative to dir.
std::pair<Json, std::filesystem::path> resolve(const Json& ref, const std::filesystem::path& dir) {
  if (ref.is_string()) {
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = dir / p;
    return {read_json(p), p.parent_path()};
  }
  return {ref, dir};
}

std::unordered_map<std::string, ObjId> object_index(const FinCategory& c) {
  std::unordered_map<std::string, ObjId> out;
  for (ObjId a : c.objects())
    if (!out.emplace(c.object_label(a), a).second)
      throw StructuralError("duplicate object label '" + c.object_label(a) + "'");
  return out;
}

std::unordered_map<std::string, Arrow> arrow_index(const FinCategory& c) {
  std::unordered_map<std::string, Arrow> out;
  for (auto& [f, id] : arrow_ids(c))
    if (!out.emplace(id, f).second) throw StructuralError("duplicate morphism id '" + id + "'");
  return out;
}

template <typename Map>
auto lookup(const Map& m, const std::string& key, const std::string& what) {
  auto it = m.find(key);
  if (it == m.end()) throw StructuralError("unknown " + what + " '" + key + "'");
  return it->second;
}

class TableCleavage final : public CleavageImpl {
 public:
  using Key = std::tuple<ObjId, ObjId, std::uint32_t, ObjId>;

  void add(const Arrow& f, ObjId d, const Arrow& lift) { lifts_[{f.src, f.dst, f.index, d}] = lift; }
  void defect(std::string law, std::string witness) {
    defects_.push_back({Violation::Kind::kStructural, std::move(law), std::move(witness)});
  }
  std::vector<Violation> structural_errors() const override { return defects_; }

  Arrow lift(const Arrow& f, ObjId d) const override {
    auto it = lifts_.find({f.src, f.dst, f.index, d});
    if (it == lifts_.end()) throw StructuralError("no lift of " + to_string(f) + " at " + std::to_string(d));
    return it->second;
  }

 private:
  std::map<Key, Arrow> lifts_;
  std::vector<Violation> defects_;
};

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << dump_json(doc);
}

std::optional<std::string> document_kind(const Json& doc) {
  if (doc.is_object() && doc.contains("kind") && doc["kind"].is_string()) return doc["kind"].get<std::string>();
  return std::nullopt;
}

Json category_to_json(const FinCategory& c) {
  std::uint64_t pairs = 0;
  for (ObjId a : c.objects())
    for (ObjId b : c.objects()) {
      const std::uint64_t ab = c.hom_size(a, b);
      if (ab == 0) continue;
      for (ObjId d : c.objects()) pairs += ab * c.hom_size(b, d);
      if (pairs > kMaxSerializedComposites) throw CapExceeded(pairs, kMaxSerializedComposites, "serialized compose table");
    }
  const CategoryTable t = to_table(c);
  Json doc;
  doc["kind"] = "category";
  doc["objects"] = t.objects;
  doc["morphisms"] = Json::array();
  for (const auto& m : t.morphisms) doc["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  doc["identities"] = Json::object();
  for (const auto& [o, m] : t.identities) doc["identities"][o] = m;
  doc["compose"] = Json::array();
  for (const auto& e : t.compose) doc["compose"].push_back({{"f", e.f}, {"g", e.g}, {"result", e.result}});
  return doc;
}

FinCategory category_from_json(const Json& doc) {
  require_fields(doc, "category", {"objects", "morphisms", "identities", "compose"});
  CategoryTable t;
  for (const auto& o : array(doc["objects"], "objects")) t.objects.push_back(str(o, "object"));
  for (const auto& m : array(doc["morphisms"], "morphisms")) {
    require_fields(m, "morphism", {"id", "src", "dst"});
    t.morphisms.push_back({str(m["id"], "id"), str(m["src"], "src"), str(m["dst"], "dst")});
  }
  if (!doc["identities"].is_object()) throw ParseError("identities: expected an object");
  for (const auto& [o, m] : doc["identities"].items()) t.identities.emplace_back(o, str(m, "identity"));
  for (const auto& e : array(doc["compose"], "compose")) {
    require_fields(e, "composite", {"f", "g", "result"});
    t.compose.push_back({str(e["f"], "f"), str(e["g"], "g"), str(e["result"], "result")});
  }
  return make_table_category(t);
}

Json functor_to_json(const FinFunctor& f) {
  const FinCategory& s = f.source();
  const FinCategory& t = f.target();
  Json doc;
  doc["kind"] = "functor";
  doc["source"] = category_to_json(s);
  doc["target"] = category_to_json(t);
  doc["objects"] = Json::object();
  for (ObjId a : s.objects()) doc["objects"][s.object_label(a)] = t.object_label(f(a));
  doc["morphisms"] = Json::object();
  const auto sid = arrow_ids(s), tid = arrow_ids(t);
  s.for_each_arrow([&](const Arrow& a) { doc["morphisms"][sid.at(a)] = tid.at(f(a)); });
  return doc;
}

FinFunctor functor_from_json(const Json& doc, const std::filesystem::path& dir) {
  require_fields(doc, "functor", {"source", "target", "objects", "morphisms"});
  auto [sdoc, sdir] = resolve(doc["source"], dir);
  auto [tdoc, tdir] = resolve(doc["target"], dir);
  FinCategory s = category_from_json(sdoc);
  FinCategory t = category_from_json(tdoc);
  const auto sobj = object_index(s), tobj = object_index(t);
  const auto sarr = arrow_index(s), tarr = arrow_index(t);
  if (!doc["objects"].is_object() || !doc["morphisms"].is_object())
    throw ParseError("functor: objects and morphisms must be objects");
  FunctorTable table;
  table.object_map.assign(s.object_count(), 0);
  std::vector<bool> seen(s.object_count(), false);
  for (const auto& [k, v] : doc["objects"].items()) {
    const ObjId a = lookup(sobj, k, "source object");
    table.object_map[a] = lookup(tobj, str(v, "object image"), "target object");
    seen[a] = true;
  }
  for (ObjId a : s.objects())
    if (!seen[a]) throw StructuralError("functor: no image for object '" + s.object_label(a) + "'");
  for (const auto& [k, v] : doc["morphisms"].items())
    table.arrow_map[lookup(sarr, k, "source morphism")] = lookup(tarr, str(v, "morphism image"), "target morphism");
  return make_table_functor(s, t, std::move(table));
}

Json fibration_to_json(const ClovenFibration& f) {
  const FinCategory& E = f.total();
  const FinCategory& X = f.base();
  Json doc;
  doc["kind"] = "fibration";
  doc["functor"] = functor_to_json(f.functor());
  doc["cleavage"] = Json::array();
  const auto eid = arrow_ids(E), xid = arrow_ids(X);
  X.for_each_arrow([&](const Arrow& u) {
    for (ObjId d : f.functor().objects_over(u.dst))
      doc["cleavage"].push_back(
          {{"base_morphism", xid.at(u)}, {"object_over", E.object_label(d)}, {"lift", eid.at(f.lift(u, d))}});
  });
  return doc;
}

ClovenFibration fibration_from_json(const Json& doc, const std::filesystem::path& dir) {
  require_fields(doc, "fibration", {"functor", "cleavage"});
  auto [fdoc, fdir] = resolve(doc["functor"], dir);
  FinFunctor p = functor_from_json(fdoc, fdir);
  const auto eobj = object_index(p.source());
  const auto earr = arrow_index(p.source()), xarr = arrow_index(p.target());
  auto cleavage = std::make_shared<TableCleavage>();
  for (const auto& e : array(doc["cleavage"], "cleavage")) {
    require_fields(e, "cleavage entry", {"base_morphism", "object_over", "lift"});
    const Arrow u = lookup(xarr, str(e["base_morphism"], "base_morphism"), "base morphism");
    const ObjId d = lookup(eobj, str(e["object_over"], "object_over"), "object");
    const Arrow l = lookup(earr, str(e["lift"], "lift"), "lift");
    if (p.target().is_identity(u) && !p.source().is_identity(l))
      cleavage->defect("identity lifts are identities", e["lift"].get<std::string>() + " over " + e["base_morphism"].get<std::string>());
    cleavage->add(u, d, l);
  }
  return ClovenFibration(std::move(p), std::move(cleavage));
}

Json tower_to_json(const Tower& t) {
  Json doc;
  doc["kind"] = "tower";
  doc["levels"] = Json::array();
  for (const auto& l : t.levels) doc["levels"].push_back(fibration_to_json(l));
  return doc;
}

Tower tower_from_json(const Json& doc, const std::filesystem::path& dir) {
  require_fields(doc, "tower", {"levels"});
  std::vector<ClovenFibration> loaded;
  for (const auto& l : array(doc["levels"], "levels")) {
    auto [ldoc, ldir] = resolve(l, dir);
    loaded.push_back(fibration_from_json(ldoc, ldir));
  }
  if (loaded.empty()) throw StructuralError("tower: no levels");
  Tower t;
  t.levels.resize(loaded.size());
  t.levels.back() = loaded.back();
  for (std::size_t k = loaded.size() - 1; k-- > 0;) {
    const FinCategory& below = t.levels[k + 1].total();
    if (!categories_equal(loaded[k].base(), below))
      throw StructuralError("tower: base of level " + std::to_string(loaded.size() - k) +
                            " differs from the total of the level below");
    t.levels[k] = ClovenFibration(with_target(loaded[k].functor(), below), loaded[k].cleavage_ptr());
  }
  return t;
}

FinCategory load_category(const std::filesystem::path& path) { return category_from_json(read_json(path)); }
FinFunctor load_functor(const std::filesystem::path& path) {
  return functor_from_json(read_json(path), path.parent_path());
}
ClovenFibration load_fibration(const std::filesystem::path& path) {
  return fibration_from_json(read_json(path), path.parent_path());
}
Tower load_tower(const std::filesystem::path& path) { return tower_from_json(read_json(path), path.parent_path()); }

FinFunctor with_target(const FinFunctor& f, const FinCategory& target) {
  return make_functor(
      f.source(), target, [f](ObjId a) { return f(a); }, [f](const Arrow& a) { return f(a); });
}

FinFunctor with_source(const FinFunctor& f, const FinCategory& source) {
  return make_functor(
      source, f.target(), [f](ObjId a) { return f(a); }, [f](const Arrow& a) { return f(a); });
}

}  // namespace dialens
