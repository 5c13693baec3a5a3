#pragma once

#include <string>

#include "aerocap/montecarlo.hpp"
#include "aerocap/scenario.hpp"

namespace aerocap {

// Loads planet.json, vehicle.json, mission.json, guidance.json from the
// config directory. Missing files and keys fall back to the library defaults
// (standard Uranus constants, the nominal quadratic aero fit and the UOP
// mission parameters). Angles are given in degrees in config files and
// converted at parse time; everything else is SI.
Scenario load_scenario(const std::string& config_dir);

// Loads dispersion.json; entry_set selects the baseline or conservative EFPA
// uncertainty band.
DispersionSpec load_dispersion(const std::string& config_dir, const std::string& entry_set);

// Aerodynamic fit pair used by the switching-curve verification tool: the
// linear model feeds the switching curves, the quadratic model the continuous
// control curves. Reads aero_fits.json when present, else the nominal fits.
struct AeroFitPair {
    AeroModel linear;
    AeroModel quadratic;
};
AeroFitPair load_aero_fits(const std::string& config_dir);

}  // namespace aerocap
