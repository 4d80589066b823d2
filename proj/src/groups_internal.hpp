#pragma once

#include "realchrom/groups.hpp"

namespace realchrom {

// Borel cohomology read literally as two independent summands (free
// sigma-powers not glued to v0-multiples).  Only the comparison reports
// want this; it differs from groupAt exactly at the gluing bidegrees.
GroupSummary groupAtLiteralBorelCoh(TheoryId theory, Bidegree b);

}  // namespace realchrom
