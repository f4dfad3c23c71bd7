#pragma once

#include <random>
#include <string>

#include "ltl/field_expr.hpp"

namespace ltl::testing {

// Random well-formed expression text over the DSL grammar. Depth-bounded;
// avoids sqrt/abs/division so derivative checks stay away from kinks and
// singular points.
inline std::string random_expr(std::mt19937_64& rng, int depth = 0) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth >= 4 || pick(4) == 0) {
    switch (pick(6)) {
      case 0: return "x1";
      case 1: return "x2";
      case 2: return "x3";
      case 3: return "u";
      case 4: return "v";
      default: return std::to_string(1 + pick(9));
    }
  }
  switch (pick(6)) {
    case 0: return "(" + random_expr(rng, depth + 1) + "+" +
                 random_expr(rng, depth + 1) + ")";
    case 1: return "(" + random_expr(rng, depth + 1) + "-" +
                 random_expr(rng, depth + 1) + ")";
    case 2: return "(" + random_expr(rng, depth + 1) + "*" +
                 random_expr(rng, depth + 1) + ")";
    case 3: return "sin(" + random_expr(rng, depth + 1) + ")";
    case 4: return "cos(" + random_expr(rng, depth + 1) + ")";
    default: return "-" + random_expr(rng, depth + 1);
  }
}

inline std::string random_bytes(std::mt19937_64& rng, int max_len = 64) {
  const int len = static_cast<int>(rng() % max_len);
  std::string s(len, ' ');
  // bias toward grammar characters so the parser gets past the first token
  const std::string alphabet = "x123uv+-*/()sincoexpqrtab. _";
  for (char& c : s) {
    if (rng() % 4 == 0)
      c = static_cast<char>(rng() % 256);
    else
      c = alphabet[rng() % alphabet.size()];
  }
  return s;
}

}  // namespace ltl::testing
