#pragma once

// Polynomial coefficients of the level-one area generating function
//
//   A1 = (num1 + num2*beta + num3*delta)
//      / (den1 + den2*alpha + den3*beta + den4*gamma + den5*delta + den6*(alpha*delta - beta*gamma))
//
// Entry k of each list is the coefficient of q^k.

#include <array>
#include <string_view>
#include <vector>

namespace polyhex::closed_form_table {

enum class Multiplier { one, alpha, beta, gamma, delta, alpha_delta_minus_beta_gamma };

struct Term {
  std::string_view name;
  Multiplier multiplier;
  std::vector<long> coeffs;
};

inline const std::array<Term, 3>& numerator() {
  static const std::array<Term, 3> terms = {{
      {"num1", Multiplier::one, {0, 1, -8, 24, -32, 17, 4, -8, 2}},
      {"num2", Multiplier::beta, {0, -1, 5, -13, 23, -22, 12, -2}},
      {"num3", Multiplier::delta, {0, 0, 0, 0, -2, 8, -12, 8, -2}},
  }};
  return terms;
}

inline const std::array<Term, 6>& denominator() {
  static const std::array<Term, 6> terms = {{
      {"den1", Multiplier::one, {1, -11, 46, -93, 88, -27, -24, 19, -3}},
      {"den2", Multiplier::alpha, {0, 0, 2, -8, 8, -4, -6, 4}},
      {"den3", Multiplier::beta, {-1, 10, -34, 67, -81, 54, -16, 1}},
      {"den4", Multiplier::gamma, {0, 0, 0, 0, 2, -8, 8, 0, -2}},
      {"den5", Multiplier::delta, {0, 0, 0, 0, 6, -22, 34, -22, 4}},
      {"den6", Multiplier::alpha_delta_minus_beta_gamma, {0, 0, 0, 0, 2, -6, 10, -6}},
  }};
  return terms;
}

}  // namespace polyhex::closed_form_table
