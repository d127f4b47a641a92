#pragma once

// Shared 20-polynomial corpus: degrees 1..5, unit content, a mix of
// irreducible/reducible and monic/non-monic members.

#include <vector>

#include "omegaq/intpoly.hpp"

inline const std::vector<omegaq::IntPoly>& corpus20() {
  static const std::vector<omegaq::IntPoly> polys = {
      omegaq::IntPoly{0, 1},            // X
      omegaq::IntPoly{1, 1},            // X+1
      omegaq::IntPoly{3, 1},            // X+3
      omegaq::IntPoly{3, 2},            // 2X+3
      omegaq::IntPoly{-5, 7},           // 7X-5
      omegaq::IntPoly{1, 0, 1},         // X^2+1
      omegaq::IntPoly{0, 1, 1},         // X^2+X
      omegaq::IntPoly{-2, 0, 1},        // X^2-2
      omegaq::IntPoly{1, 3, 1},         // X^2+3X+1
      omegaq::IntPoly{5, 2, 3},         // 3X^2+2X+5
      omegaq::IntPoly{2, 1, 1},         // X^2+X+2 (fixed divisor 2)
      omegaq::IntPoly{1, -1, 0, 1},     // X^3-X+1
      omegaq::IntPoly{2, 0, 0, 1},      // X^3+2
      omegaq::IntPoly{0, -1, 0, 1},     // X^3-X
      omegaq::IntPoly{2, -3, 0, 7},     // 7X^3-3X+2
      omegaq::IntPoly{1, 0, 0, 0, 1},   // X^4+1
      omegaq::IntPoly{1, 0, -1, 0, 1},  // X^4-X^2+1
      omegaq::IntPoly{1, 5, 0, 0, 6},   // 6X^4+5X+1
      omegaq::IntPoly{1, -1, 0, 0, 0, 1},  // X^5-X+1
      omegaq::IntPoly{1, 0, 1, 0, 0, 1},   // X^5+X^2+1
  };
  return polys;
}
