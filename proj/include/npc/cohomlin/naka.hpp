#pragma once

#include "npc/algebra/polynomial.hpp"

#include <string>

namespace npc {

struct NakaPairResult {
  bool applicable = false;
  bool found = false;
  bool verified = false;
  std::string reason;
  Rational a;
  Rational b;
  Polynomial p_tilde{2};
  Polynomial q_tilde{2};
};

/// (x1^2+x2^2)(dP/dx2 - dQ/dx1) - 2(P x2 - Q x1).
Polynomial naka_pair_defect(const Polynomial& p, const Polynomial& q);

/*
 * P = a x1 + b x2 + s P~, Q = -b x1 + a x2 + s Q~ with s = x1^2 + x2^2 and
 * dP~/dx2 = dQ~/dx1, solved exactly and re-verified.
 */
NakaPairResult naka_pair(const Polynomial& p, const Polynomial& q);

struct NakaTripleResult {
  bool applicable = false;
  bool found = false;
  bool verified = false;
  std::string reason;
  Rational a;
  Polynomial a_tilde{3};
  Polynomial b_tilde{3};
  Polynomial c_tilde{3};
};

/// The three relations, each r^2 (dU/dxj - dV/dxi) - 2(U xj - V xi) for (U,V) in (A,B), (A,C), (B,C).
std::vector<Polynomial> naka_triple_defects(const Polynomial& a, const Polynomial& b, const Polynomial& c);

/// A = a x1 + r^2 A~, B = a x2 + r^2 B~, C = a x3 + r^2 C~ with closed (A~, B~, C~).
NakaTripleResult naka_triple(const Polynomial& a, const Polynomial& b, const Polynomial& c);

}  // namespace npc
