#include "npc/cohomlin/naka.hpp"

#include "npc/algebra/exact_matrix.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace npc {

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

Polynomial sum_of_squares(std::size_t n) {
  Polynomial s(n);
  for (std::size_t i = 0; i < n; ++i) s += var(n, i) * var(n, i);
  return s;
}

Polynomial relation(const Polynomial& u, const Polynomial& v, std::size_t i, std::size_t j) {
  const std::size_t n = u.nvars();
  return sum_of_squares(n) * (u.derivative(j) - v.derivative(i)) -
         Rational(2) * (u * var(n, j) - v * var(n, i));
}

// Linear system whose equations are polynomial identities, one row per
// (equation, monomial).
class IdentitySystem {
 public:
  explicit IdentitySystem(std::size_t unknowns) : columns_(unknowns) {}

  void add(std::size_t unknown, int equation, const Polynomial& p) {
    for (const auto& [e, c] : p.terms()) columns_[unknown].emplace_back(row(equation, e), c);
  }
  void rhs(int equation, const Polynomial& p) {
    for (const auto& [e, c] : p.terms()) rhs_.emplace_back(row(equation, e), c);
  }

  SolveResult solve() const {
    std::vector<SparseVec> cols = columns_;
    for (auto& c : cols) {
      std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      SparseVec merged;
      for (const auto& [r, v] : c) {
        if (!merged.empty() && merged.back().first == r) merged.back().second += v;
        else merged.emplace_back(r, v);
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& x) { return sgn(x.second) == 0; }),
                   merged.end());
      c = std::move(merged);
    }
    DenseVec b(rows_.size(), Rational(0));
    for (const auto& [r, v] : rhs_) b[r] += v;
    return solve_linear(ExactMatrix::from_columns(cols, rows_.size()), b);
  }

 private:
  std::size_t row(int equation, const Exponent& e) {
    auto [it, inserted] = rows_.try_emplace({equation, e}, rows_.size());
    return it->second;
  }

  std::vector<SparseVec> columns_;
  std::map<std::pair<int, Exponent>, std::size_t> rows_;
  SparseVec rhs_;
};

int tilde_bound(std::initializer_list<const Polynomial*> polys) {
  int deg = -1;
  for (const Polynomial* p : polys) deg = std::max(deg, p->total_degree());
  return std::max(0, deg - 2);
}

Polynomial assemble(const std::vector<Exponent>& monomials, const DenseVec& x, std::size_t offset, std::size_t n) {
  Polynomial p(n);
  for (std::size_t i = 0; i < monomials.size(); ++i) p.add_term(monomials[i], x[offset + i]);
  return p;
}

}  // namespace

Polynomial naka_pair_defect(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != 2 || q.nvars() != 2) throw VariableMismatch("naka_pair expects polynomials in x1, x2");
  return relation(p, q, 0, 1);
}

NakaPairResult naka_pair(const Polynomial& p, const Polynomial& q) {
  NakaPairResult r;
  const Polynomial defect = naka_pair_defect(p, q);
  if (!defect.is_zero()) {
    r.reason = "hypothesis violated: defect " + defect.to_string();
    return r;
  }
  r.applicable = true;
  const std::size_t n = 2;
  const Polynomial s = sum_of_squares(n);
  const Polynomial x1 = var(n, 0);
  const Polynomial x2 = var(n, 1);
  const auto mons = monomials_up_to(n, tilde_bound({&p, &q}));
  const std::size_t t = mons.size();
  IdentitySystem sys(2 + 2 * t);
  sys.add(0, 0, x1);
  sys.add(0, 1, x2);
  sys.add(1, 0, x2);
  sys.add(1, 1, -x1);
  for (std::size_t i = 0; i < t; ++i) {
    const Polynomial m = Polynomial::monomial(mons[i]);
    sys.add(2 + i, 0, s * m);
    sys.add(2 + i, 2, m.derivative(1));
    sys.add(2 + t + i, 1, s * m);
    sys.add(2 + t + i, 2, -m.derivative(0));
  }
  sys.rhs(0, p);
  sys.rhs(1, q);
  const SolveResult solved = sys.solve();
  if (!solved.feasible) {
    r.reason = "no decomposition within the degree bound";
    return r;
  }
  r.found = true;
  r.a = solved.solution[0];
  r.b = solved.solution[1];
  r.p_tilde = assemble(mons, solved.solution, 2, n);
  r.q_tilde = assemble(mons, solved.solution, 2 + t, n);
  r.verified = (r.a * x1 + r.b * x2 + s * r.p_tilde == p) && (-r.b * x1 + r.a * x2 + s * r.q_tilde == q) &&
               r.p_tilde.derivative(1) == r.q_tilde.derivative(0);
  return r;
}

std::vector<Polynomial> naka_triple_defects(const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  if (a.nvars() != 3 || b.nvars() != 3 || c.nvars() != 3) {
    throw VariableMismatch("naka_triple expects polynomials in x1, x2, x3");
  }
  return {relation(a, b, 0, 1), relation(a, c, 0, 2), relation(b, c, 1, 2)};
}

NakaTripleResult naka_triple(const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  NakaTripleResult r;
  const auto defects = naka_triple_defects(a, b, c);
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (!defects[i].is_zero()) {
      r.reason = "hypothesis violated in relation " + std::to_string(i + 1) + ": defect " + defects[i].to_string();
      return r;
    }
  }
  r.applicable = true;
  const std::size_t n = 3;
  const Polynomial s = sum_of_squares(n);
  const auto mons = monomials_up_to(n, tilde_bound({&a, &b, &c}));
  const std::size_t t = mons.size();
  IdentitySystem sys(1 + 3 * t);
  for (std::size_t i = 0; i < 3; ++i) sys.add(0, static_cast<int>(i), var(n, i));
  // Closedness relations: eq 3 (A~,B~), eq 4 (A~,C~), eq 5 (B~,C~).
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t k = 0; k < t; ++k) {
    const Polynomial m = Polynomial::monomial(mons[k]);
    for (std::size_t u = 0; u < 3; ++u) sys.add(1 + u * t + k, static_cast<int>(u), s * m);
    for (int e = 0; e < 3; ++e) {
      const int u = pairs[e][0];
      const int v = pairs[e][1];
      sys.add(1 + u * t + k, 3 + e, m.derivative(v));
      sys.add(1 + v * t + k, 3 + e, -m.derivative(u));
    }
  }
  sys.rhs(0, a);
  sys.rhs(1, b);
  sys.rhs(2, c);
  const SolveResult solved = sys.solve();
  if (!solved.feasible) {
    r.reason = "no decomposition within the degree bound";
    return r;
  }
  r.found = true;
  r.a = solved.solution[0];
  r.a_tilde = assemble(mons, solved.solution, 1, n);
  r.b_tilde = assemble(mons, solved.solution, 1 + t, n);
  r.c_tilde = assemble(mons, solved.solution, 1 + 2 * t, n);
  const Polynomial x1 = var(n, 0);
  const Polynomial x2 = var(n, 1);
  const Polynomial x3 = var(n, 2);
  r.verified = (r.a * x1 + s * r.a_tilde == a) && (r.a * x2 + s * r.b_tilde == b) && (r.a * x3 + s * r.c_tilde == c) &&
               r.a_tilde.derivative(1) == r.b_tilde.derivative(0) && r.a_tilde.derivative(2) == r.c_tilde.derivative(0) &&
               r.b_tilde.derivative(2) == r.c_tilde.derivative(1);
  return r;
}

}  // namespace npc
