#pragma once

#include <json.hpp>
#include <string>

#include "plumbweave/fibration.hpp"
#include "plumbweave/invariants.hpp"
#include "plumbweave/moves.hpp"

namespace plumbweave {

using Json = nlohmann::ordered_json;

Json to_json(const Convention& c);
Convention convention_from_json(const Json& j);

/// {fiber: {pattern: {vertices, edges}, sphere_dim}, cycles: [...], n, convention}
Json to_json(const AbstractLF& alf);
AbstractLF fibration_from_json(const Json& j);

/// [{kind, index, vertex?}, ...]
Json to_json(const MoveSequence& moves);
MoveSequence moves_from_json(const Json& j);

/// {n, fiber, classes}: the part of a fibration that equal_homology compares.
Json class_word_json(const AbstractLF& alf);

Json to_json(const HomologyReport& rep);
Json to_json(const OrderedTree& ot);

/// Two-space indented dump with a trailing newline; the byte format every
/// output file uses.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

}  // namespace plumbweave
