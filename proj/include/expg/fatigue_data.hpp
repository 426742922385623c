#pragma once

#include <vector>

namespace expg {

// Birnbaum-Saunders (1969) fatigue life of 6061-T6 aluminium coupons,
// maximum stress per cycle 31,000 psi, as embedded in this library.
// Note: the classical description of this data set mentions 101
// observations, but the list embedded here carries 100 values; the count
// is surfaced by the CLI and a --data override accepts any other file.
const std::vector<double>& fatigue_data();

}  // namespace expg
