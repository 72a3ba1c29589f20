#pragma once

#include "corridorsim/world/types.hpp"

namespace csim::world {

// Validates a corridor description and produces the immutable map.
// Segments must tile [0, length] without overlap or gap. Throws ConfigError.
CorridorMap build_corridor(const CorridorSpec& spec);

}  // namespace csim::world
