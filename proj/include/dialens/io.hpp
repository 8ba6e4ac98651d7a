#pragma once

#include <filesystem>

#include "json.hpp"

#include "dialens/tower.hpp"

namespace dialens {

using Json = nlohmann::ordered_json;

/// Reads a JSON document. Syntax errors and missing files raise ParseError.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);
std::string dump_json(const Json& doc);

/// Largest compose table written out.
inline constexpr std::uint64_t kMaxSerializedComposites = 1u << 20;

// Category: {objects, morphisms: [{id, src, dst}], identities: {obj: id},
// compose: [{f, g, result}]}. Object labels and morphism ids must be unique.
/// Raises CapExceeded above kMaxSerializedComposites composable pairs.
Json category_to_json(const FinCategory& c);
FinCategory category_from_json(const Json& doc);

// Functor: {source, target, objects: {label: label}, morphisms: {id: id}}.
// source and target are inline category documents or paths.
Json functor_to_json(const FinFunctor& f);
FinFunctor functor_from_json(const Json& doc, const std::filesystem::path& dir = {});

// Fibration: {functor, cleavage: [{base_morphism, object_over, lift}]}.
Json fibration_to_json(const ClovenFibration& f);
ClovenFibration fibration_from_json(const Json& doc, const std::filesystem::path& dir = {});

// Tower: {levels: [fibration...]}, top level first. Adjacent endpoints are
// compared on load and identified.
Json tower_to_json(const Tower& t);
Tower tower_from_json(const Json& doc, const std::filesystem::path& dir = {});

FinCategory load_category(const std::filesystem::path& path);
FinFunctor load_functor(const std::filesystem::path& path);
ClovenFibration load_fibration(const std::filesystem::path& path);
Tower load_tower(const std::filesystem::path& path);

/// The optional `kind` field: category, functor, fibration or tower.
std::optional<std::string> document_kind(const Json& doc);

/// The same functor with its source or target replaced by an equal category.
FinFunctor with_target(const FinFunctor& f, const FinCategory& target);
FinFunctor with_source(const FinFunctor& f, const FinCategory& source);

}  // namespace dialens
