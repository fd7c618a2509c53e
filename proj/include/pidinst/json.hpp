#pragma once

#include <json.hpp>

namespace pidinst {

// Insertion-ordered throughout: property order is significant in every
// serialization this toolkit emits.
using json = nlohmann::ordered_json;

}  // namespace pidinst
