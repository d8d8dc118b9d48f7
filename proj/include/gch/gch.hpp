#ifndef GCH_GCH_HPP
#define GCH_GCH_HPP

#include "gch/blade.hpp"
#include "gch/charpoly.hpp"
#include "gch/graded_identities.hpp"
#include "gch/grassmann.hpp"
#include "gch/harness.hpp"
#include "gch/matrix.hpp"
#include "gch/rational.hpp"
#include "gch/trace_symbolic.hpp"

#endif // GCH_GCH_HPP
