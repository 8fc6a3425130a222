// SPDX-License-Identifier: Apache-2.0
//
// Evaluates a built-in band for a 1 m^2 target in clutter and prints the range limits.

#include "isac/report.hpp"

#include <cstdio>
#include <iostream>

int main() {
    isac::Scenario s;
    s.name = "fr2-clutter-demo";
    s.system = isac::builtin_config(isac::Band::FR2);
    s.placement = isac::Placement::Outdoor;
    s.target.rcs_m2 = 1.0;
    s.environment.clutter.push_back({100.0, 20.0});
    s.environment.self_interference = isac::SelfInterference::default_for(s.system);
    s.requirements.horizontal_resolution_m = 1.0;
    s.use_angular_resolution = true;

    const isac::KpiReport rep = isac::evaluate(s);
    std::cout << isac::format_text(rep);
    return 0;
}
