#pragma once

// Reverse iterates of the Jacob's ladder. The reverse map is taken to be the
// exact solution Y of
//
//   integral_T^Y |zeta(1/2 + it)|^2 dt = (1 - c) T,
//
// evaluated through the J(T) prefix cache; phi_1 itself is never formed.

#include <vector>

#include "zetalab/config.hpp"

namespace zetalab {

class Context;

namespace ladders {

struct Constants {
  double c = kEulerGamma;
  double one_minus_c = 1.0 - kEulerGamma;

  static Constants from(double c);
};

/// (1 - c) T / ln T, the asymptotic step length.
double predictor(double T, const Constants& k);

struct StepResult {
  double Y = 0.0;
  double residual = 0.0;  // |J(Y) - J(T) - (1-c)T| / ((1-c)T)
  double segment_integral = 0.0;
  double secant_Y = 0.0;  // independent Illinois refinement on the same bracket
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int bisection_steps = 0;
  int secant_steps = 0;
};

/// tol is relative to (1 - c) T. Throws BracketFailure when no bracket is
/// found by T + 256 h0.
StepResult reverse_step(Context& ctx, double T, double tol);

struct LadderSequence {
  double base_T = 0.0;
  Constants constants;
  std::vector<double> iterates;            // T^1 .. T^k
  std::vector<double> segment_integrals;   // integral over [T^{r-1}, T^r]
  std::vector<double> residuals;
  std::vector<double> secant_iterates;
};

LadderSequence reverse_iterates(Context& ctx, double T, int k, double tol);

struct PartitionReport {
  std::vector<double> equidistance;    // (T^r - T^{r-1}) / (T^{r+1} - T^r), r = 1..k-1
  std::vector<double> segment_ratios;  // I_r / I_{r+1}, r = 1..k-1
  std::vector<double> step_law;        // (T^r - T^{r-1}) / ((1-c) T^r / ln T^r), r = 1..k
  double sum_excess = 0.0;             // (sum T^r - kT) / (k^2 T / ln T)
};

/// Needs k >= 2.
PartitionReport check_partition(const LadderSequence& seq);

enum class CouplingKind { Zeta, S1 };

struct Coupling {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double A = 0.0;  // lower end of the ladder segment
  double Y = 0.0;  // its reverse step
  double constant = 0.0;  // zeta(2 sigma) or c-bar(l)
};

/// Zeta kind: lhs = integral_1^T |zeta(sigma + it)|^2, A = zeta(2 sigma) T / (1 - c).
/// S1 kind:   lhs = integral_0^T |S_1|^{2l},          A = c-bar(l) T / (1 - c).
/// rhs = integral_A^{Y} |zeta(1/2 + it)|^2 with Y the reverse step of A.
Coupling coupling_check(Context& ctx, CouplingKind kind, double sigma, int l, double T, double tol);

}  // namespace ladders
}  // namespace zetalab
