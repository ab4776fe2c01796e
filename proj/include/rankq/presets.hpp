#pragma once

// Built-in models and published reference values used by `rankq reproduce`.

#include "rankq/effects.hpp"
#include "rankq/sensitivity.hpp"

#include <string>
#include <vector>

namespace rankq::presets {

// Four independent normals P, A, B, C ~ N(10,3), N(1,3), N(2,3), N(3,3); harmful outcome.
EffectModel scenario1();

// P, A, B, C with M = (-2, 1, 1.5, 2) and all SDs 1; harmful outcome (smaller_better).
// The smaller_better orientation was confirmed analytically: it puts the
// (C, A) p_best flip near SD_C = 1.65 and the SUCRA flip near SD_C = 7.2.
EffectModel figure3_base();

// Three LDL-C style treatments: B has the smallest mean and the widest spread,
// C the tightest spread. Used for the 2.5 mmol/L threshold question.
EffectModel ldl_example();

// Table 4: SD_A in {3, 10, 15, 20}, SUCRA only.
SweepSpec table4_sweep(const McConfig& mc);

// Figure 3: SD_C from 1 to 10 in steps of 0.1, p_best and SUCRA.
SweepSpec figure3_sweep(const McConfig& mc);

struct ReferenceCell {
    std::string row;       // metric label as printed
    std::string treatment;
    double published = 0.0;
    double tolerance = 0.0;
};

// Scenario 1 block: p_BV, cp_2, cp_3, cp_4, SUCRA, P-score (percent),
// mean rank and median rank (rank units). 8 rows x 4 treatments.
std::vector<ReferenceCell> table3_scenario1_cells();

// SUCRA (percent) rows for SD_A = 3, 10, 15, 20.
std::vector<ReferenceCell> table4_cells();

struct CrossoverTarget {
    std::string metric;
    double published = 0.0; // SD_C at which C moves ahead of A
    double tolerance = 0.0;
};

std::vector<CrossoverTarget> figure3_targets();

std::vector<std::string> available();

} // namespace rankq::presets
