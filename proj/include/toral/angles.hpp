#pragma once

// Symbolic slope parsing for the command line: a few named irrational
// tangents plus plain numeric literals.

#include <cmath>
#include <stdexcept>
#include <string>

namespace toral {

struct AngleSpec {
  double tan = 0.0;
  double cos = 1.0;
  double sin = 0.0;
  std::string label;  // canonical spelling of the input
};

inline AngleSpec angle_from_tangent(double t, std::string label) {
  AngleSpec a;
  a.tan = t;
  a.cos = 1.0 / std::hypot(1.0, t);
  a.sin = t * a.cos;
  a.label = std::move(label);
  return a;
}

/// Accepts "sqrt2", "1/sqrt2", "golden", or a numeric literal.
inline AngleSpec parse_angle(const std::string& s) {
  if (s == "sqrt2") return angle_from_tangent(std::sqrt(2.0), "sqrt2");
  if (s == "1/sqrt2") return angle_from_tangent(1.0 / std::sqrt(2.0), "1/sqrt2");
  if (s == "golden") return angle_from_tangent(0.5 * (1.0 + std::sqrt(5.0)), "golden");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("unrecognized angle '" + s +
                                "' (expected sqrt2, 1/sqrt2, golden, or a number)");
  }
  if (used != s.size())
    throw std::invalid_argument("unrecognized angle '" + s +
                                "' (expected sqrt2, 1/sqrt2, golden, or a number)");
  return angle_from_tangent(v, s);
}

}  // namespace toral
