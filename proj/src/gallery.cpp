#include "ssg/gallery.hpp"

namespace ssg::gallery {

namespace {

const char* kAdding = R"([system]
name adding-machine

[graph]
vertices v
0: v -> v
1: v -> v

[generator a]
0 -> 1 id
1 -> 0 a

[expected]
nucleus-size 3
h0 Z[1/2]
)";

const char* kGolden01 = R"([system]
name golden-rotation

[graph]
letters 0 1
forbid 1,1

[generator R0]
0 -> 1 id when 0

[generator R1]
0 -> 0 R0^-1
1 -> 0 R1^-1

[expected]
nucleus-size 6
n0 2
h0 Z^2
h1 Z
)";

const char* kGoldenEdge = R"([system]
name golden-rotation-edge

[graph]
vertices 0 1
0_0: 0 -> 0
0_1: 0 -> 1
1_0: 1 -> 0

[generator A]
0_0 -> 1_0 id

[generator B]
0_1 -> 0_0 A^-1

[generator C]
1_0 -> 0_0 B^-1
1_0 -> 0_1 C^-1

[expected]
h0 Z^2
h1 Z
)";

// rows of the matrix recursion are outputs, columns are inputs
const char* kPenrose = R"([system]
name penrose

[graph]
vertices v0 v1
0_0: v0 -> v0
0_1: v0 -> v1
1_0: v1 -> v0
1_1: v1 -> v1
2: v1 -> v1

[generator A0]
0_0 -> 1_0 id
0_1 -> 1_1 id

[generator A1]
1_0 -> 0_0 id
1_1 -> 0_1 id

[generator A2]
2 -> 2 C

[generator B]
0_0 -> 0_0 D00
0_1 -> 0_0 D01
0_0 -> 0_1 D10
0_1 -> 0_1 D11

[generator C]
1_0 -> 1_0 B
2 -> 1_1 id
1_1 -> 2 id

[generator D00]
0_1 -> 0_1 C

[generator D01]
2 -> 0_0 A1

[generator D10]
0_0 -> 2 A0

[generator D11]
1_0 -> 1_0 D00
1_1 -> 1_0 D01
1_0 -> 1_1 D10
1_1 -> 1_1 D11
2 -> 2 A2

[expected]
h0 Z^2
h1 (Z/2)^3
)";

const char* kIntermediate = R"([system]
name intermediate-growth

[graph]
letters 0 1
forbid 1,1

[generator b0]
0 -> 1 id when 0
0 -> 0 c2
1 -> 0 id when 0

[generator c0]
0 -> 1 id when 0
0 -> 0 d2
1 -> 0 id when 0

[generator d0]
0 -> 0 id when 0
0 -> 0 b2
1 -> 1 id when 0

[generator b1]
0 -> 0 b0

[generator c1]
0 -> 0 c0

[generator d1]
0 -> 0 d0

[generator b2]
1 -> 1 b1

[generator c2]
1 -> 1 c1

[generator d2]
1 -> 1 d1
)";

}  // namespace

SystemSpec adding_machine() { return parse_system(kAdding); }

SystemSpec golden_rotation(const std::string& encoding) {
  if (encoding == "01") return parse_system(kGolden01);
  if (encoding == "edge") return parse_system(kGoldenEdge);
  throw ValidationError("unknown rotation encoding " + encoding);
}

SystemSpec penrose() { return parse_system(kPenrose); }
SystemSpec intermediate_growth() { return parse_system(kIntermediate); }

SystemSpec identity_system(int loops) {
  std::string t = "[system]\nname identity\n\n[graph]\nvertices v\n";
  for (int i = 0; i < loops; ++i) t += "e" + std::to_string(i) + ": v -> v\n";
  t += "\n[generator one]\n";
  for (int i = 0; i < loops; ++i) t += "e" + std::to_string(i) + " -> e" + std::to_string(i) + " one\n";
  return parse_system(t);
}

std::vector<std::string> names() {
  return {"adding-machine", "golden-rotation", "golden-rotation-edge", "penrose", "intermediate-growth", "identity"};
}

SystemSpec by_name(const std::string& name) {
  if (name == "adding-machine") return adding_machine();
  if (name == "golden-rotation") return golden_rotation("01");
  if (name == "golden-rotation-edge") return golden_rotation("edge");
  if (name == "penrose") return penrose();
  if (name == "intermediate-growth") return intermediate_growth();
  if (name == "identity") return identity_system();
  throw ValidationError("unknown gallery system " + name);
}

}  // namespace ssg::gallery
