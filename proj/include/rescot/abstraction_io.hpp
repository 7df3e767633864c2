#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rescot/abstraction.hpp"

namespace rescot {

/* Versioned structured-text dump of an abstraction: header, colors, obstacle
 * mask, optional grid block (bounds, cell widths, periodicity, input list),
 * then one line per non-empty (state, action) successor set of each map.
 * Floating-point values are printed with 17 significant digits, so a
 * save/load round trip is exact and identical inputs produce byte-identical
 * files. */
struct AbstractionBundle {
  BimodalAbstraction gamma;
  std::optional<GridParams> grid;  // present when built from a continuous system
};

void save_abstraction(std::ostream& os, const AbstractionBundle& bundle);
void save_abstraction_file(const std::string& path, const AbstractionBundle& bundle);

/* throws ReferenceError on version mismatch or malformed content */
AbstractionBundle load_abstraction(std::istream& is);
AbstractionBundle load_abstraction_file(const std::string& path);

}  // namespace rescot
