#pragma once

#include "npc/exterior/calculus.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace npc {

struct FundamentalIdentityViolation {
  std::vector<std::size_t> f_tuple;  // indices into the family
  std::vector<std::size_t> g_tuple;
  RationalFunction residual;
};

struct FundamentalIdentityReport {
  bool pass = true;
  std::string family_name;
  std::vector<RationalFunction> family;
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  /// The first few violations, in enumeration order.
  std::vector<FundamentalIdentityViolation> violations;
};

struct DecomposabilityReport {
  bool pass = true;
  std::optional<Form> witness;
  std::optional<Multivector> residual;
};

struct ValidityReport {
  FundamentalIdentityReport fundamental_identity;
  DecomposabilityReport decomposability;
  bool valid() const { return fundamental_identity.pass && decomposability.pass; }
};

/*
 * Nambu-Poisson candidate of order n >= 3: an n-vector with polynomial
 * components, plus validity evidence attached after checking.
 */
class NambuStructure {
 public:
  NambuStructure(Multivector lambda, int order);

  const ChartPtr& chart() const { return lambda_.chart(); }
  std::size_t dim() const { return lambda_.dim(); }
  int order() const { return order_; }
  const Multivector& lambda() const { return lambda_; }
  const std::optional<ValidityReport>& validity() const { return validity_; }

  NambuStructure with_validity(ValidityReport report) const;

  /// Lambda = f * @1^...^@m with m == n.
  bool is_top_order() const { return dim() == static_cast<std::size_t>(order_); }
  /// The coefficient f of a top-order structure.
  Polynomial top_coefficient() const;
  /// All components constant.
  bool has_constant_coefficients() const;

 private:
  Multivector lambda_;
  int order_;
  std::optional<ValidityReport> validity_;
};

/// {f1,...,fn} = <df1 ^ ... ^ dfn, Lambda>.
RationalFunction nambu_bracket(const NambuStructure& s, std::span<const RationalFunction> fs);

/// #_k(alpha) = i(alpha) Lambda.
Multivector sharp(const NambuStructure& s, int k, const Form& alpha);

/// X_{f1...f_{n-1}} = #_{n-1}(df1 ^ ... ^ df_{n-1}).
Multivector hamiltonian_vf(const NambuStructure& s, std::span<const RationalFunction> fs);

/// [[alpha, beta]] = L_{#alpha} beta + (-1)^n #_n(d alpha) beta on (n-1)-forms.
Form leibniz_bracket(const NambuStructure& s, const Form& alpha, const Form& beta);

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace npc
