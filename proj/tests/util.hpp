#pragma once

#include <random>
#include <string>

#include "ssg/gallery.hpp"
#include "ssg/steinberg.hpp"

namespace ssg::testing {

// Algebra elements written with generator names of a loaded system.
struct Parsed {
  System& sys;
  Algebra& alg;
  Element operator()(const std::string& t) {
    return alg.parse(t, [&](const std::string& s) { return sys.parse_element(s); });
  }
};

inline Word w(const Shift& s, const std::string& text) { return s.parse_word(text); }

}  // namespace ssg::testing
