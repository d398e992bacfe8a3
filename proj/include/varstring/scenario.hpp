#pragma once

#include <string>
#include <vector>

#include "varstring/moore.hpp"
#include "varstring/profiles.hpp"

namespace varstring {

// One fully validated simulation case. Parsing is eager and fail-closed:
// unknown keys, bad types, or physically inadmissible values all raise
// ConfigError before any output file is touched.
struct ScenarioSpec {
    std::string name;
    LengthProfile profile;
    DampingConfig damping;
    InitialData initial;
    int modes = 256;
    double gridH = 0.0;  // characteristic table step; 0 = default
    std::vector<double> timeSamples;
    double quadTol = 1e-10;
    bool forceNumericMoore = false;
    SeedKind seed = SeedKind::Hermite;
    int gridPerUnit = 1 << 14;
    bool wantModesCsv = false;
    bool wantFprimeCsv = false;
};

struct Bundle {
    std::vector<ScenarioSpec> scenarios;
};

Bundle parse_bundle_file(const std::string& path);
Bundle parse_bundle_text(const std::string& text);

// Moore map for a scenario: closed form where the profile admits one,
// numeric recursion otherwise (or when forced).
MooreMap scenario_moore(const ScenarioSpec& sc);

} // namespace varstring
