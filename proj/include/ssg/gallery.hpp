#pragma once

#include <string>
#include <vector>

#include "ssg/system.hpp"

namespace ssg::gallery {

SystemSpec adding_machine();
// encoding is "01" (Markov shift, forbidden 11) or "edge" (three-edge graph)
SystemSpec golden_rotation(const std::string& encoding = "01");
SystemSpec penrose();
SystemSpec intermediate_growth();
// one vertex with `loops` loops and the identity as its only generator
SystemSpec identity_system(int loops = 2);

std::vector<std::string> names();
SystemSpec by_name(const std::string& name);

}  // namespace ssg::gallery
