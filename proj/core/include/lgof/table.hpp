#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "lgof/montecarlo.hpp"

namespace lgof {

// Shortest "%.6g"-style text, independent of the global locale.
std::string format_number(double v);

// CSV with header row
//   statistic,tuning,n,alpha,value,mc_std_error,excluded_reps
void write_critical_csv(std::ostream& os, const CriticalTable& table);

// CSV with header row
//   statistic,tuning,n,alpha,alternative,p,value,percent,mc_std_error,excluded_reps
// where value is the raw rejection fraction and percent its rounding.
void write_power_csv(std::ostream& os, std::span<const PowerCell> cells);

// Aligned text: one row per alpha, one column per (statistic, n).
void write_critical_text(std::ostream& os, const CriticalTable& table);

// Aligned text in the layout of a power table: one row per alternative (or
// mixing proportion), one column per statistic, rounded percentages.
void write_power_text(std::ostream& os, std::span<const PowerCell> cells);

}  // namespace lgof
