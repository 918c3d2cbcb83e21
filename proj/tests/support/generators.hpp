#pragma once

// Test-suite alias for the library's deterministic generators.

#include "projjet/testing.hpp"

namespace projjet::testgen {

using projjet::testing::g5_conjugate;
using projjet::testing::kAllStrata;
using projjet::testing::random_monge;
using projjet::testing::random_stratum_rep;

} // namespace projjet::testgen
