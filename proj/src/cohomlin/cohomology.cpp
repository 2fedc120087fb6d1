#include "npc/cohomlin/cohomology.hpp"

#include "npc/modular/modular_class.hpp"


namespace npc {

namespace {

struct EncodedColumns {
  std::vector<SparseVec> columns;
  std::size_t rows = 0;
};

EncodedColumns encode_images(const TruncatedBasis& domain, const std::function<GradedTensor(const GradedTensor&)>& op) {
  SupportIndex index;
  EncodedColumns out;
  out.columns.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) out.columns.push_back(index.encode(op(domain.tensor(i))));
  out.rows = index.size();
  return out;
}

std::vector<DenseVec> kernel(const EncodedColumns& enc, std::size_t cols) {
  ExactMatrix m = matrix_from_columns(enc.columns, enc.rows);
  if (m.cols() != cols) throw std::logic_error("column count mismatch");
  return nullspace(m);
}

std::size_t span_rank(const std::vector<SparseVec>& vectors, std::size_t dim) {
  EchelonBasis basis(dim);
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

Form sharp_of_d(const NambuStructure& s, const Form& alpha) { return contract_form(ext_d(alpha), s.lambda()); }

FoliatedResult foliated_at(const NambuStructure& s, int k, int bound) {
  if (k < 0 || k > s.order()) throw DegreeError("foliated cohomology degree out of range");
  FoliatedResult r;
  r.degree = k;
  r.bound = bound;
  const TruncatedBasis dom(s.chart(), Variance::form, k, bound);
  const bool constrained = k < s.order() && static_cast<std::size_t>(k + 1) <= s.dim();
  std::size_t cocycle_dim = dom.size();
  if (constrained) {
    const auto enc = encode_images(dom, [&](const GradedTensor& a) { return sharp_of_d(s, a); });
    cocycle_dim = kernel(enc, dom.size()).size();
  }
  std::vector<SparseVec> boundary;
  if (k > 0) {
    const TruncatedBasis prev(s.chart(), Variance::form, k - 1, bound + 1);
    for (std::size_t i = 0; i < prev.size(); ++i) boundary.push_back(dom.coordinates(ext_d(prev.tensor(i))));
  }
  for (const Form& alpha : ker_sharp_basis(s, k, bound)) {
    if (constrained && !sharp_of_d(s, alpha).is_zero()) {
      throw std::logic_error("d does not preserve ker #: foliated differential undefined");
    }
    boundary.push_back(dom.coordinates(alpha));
  }
  r.cocycles = cocycle_dim;
  r.coboundaries = span_rank(boundary, dom.size());
  r.dimension = r.cocycles - r.coboundaries;
  return r;
}

void append_labels(const ChartPtr& chart, Variance variance, const SupportIndex& rows, const DenseVec& y,
                   std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    const TensorKey& key = rows.key(i);
    labels.push_back(rational_to_string(y[i]) + " : " + key_label(chart, variance, key.first, key.second));
  }
}

}  // namespace

std::vector<Form> ker_sharp_basis(const NambuStructure& s, int k, int bound) {
  if (k < 0 || k > s.order()) throw DegreeError("ker # degree out of range");
  const TruncatedBasis dom(s.chart(), Variance::form, k, bound);
  const auto enc = encode_images(dom, [&](const GradedTensor& a) { return contract_form(a, s.lambda()); });
  std::vector<Form> out;
  for (const auto& v : kernel(enc, dom.size())) out.push_back(dom.combine(v));
  return out;
}

FoliatedResult foliated_cohomology_dim(const NambuStructure& s, int k, int bound) {
  FoliatedResult r = foliated_at(s, k, bound);
  if (bound > 0) r.previous = foliated_at(s, k, bound - 1).dimension;
  return r;
}

CocycleCheck np_cocycle_check_top(const Polynomial& f, const Form& alpha) {
  if (!alpha.is_form() || alpha.degree() != 1) throw DegreeError("cocycle check expects a 1-form");
  if (f.nvars() != alpha.dim()) throw ChartMismatch("coefficient and form over different charts");
  const RationalFunction fr(f);
  Form residual = ext_d(alpha) * fr - wedge(differential(alpha.chart(), fr), alpha);
  const bool pass = residual.is_zero();
  return {pass, std::move(residual)};
}

CocycleCheck np_cocycle_check_top(const NambuStructure& s, const Form& alpha) {
  if (!s.is_top_order()) throw std::invalid_argument("cocycle check needs a top-order structure (m = n)");
  return np_cocycle_check_top(s.top_coefficient(), alpha);
}

namespace {

struct TopComplex {
  ChartPtr chart;
  TruncatedBasis forms;
  std::vector<DenseVec> cocycles;
  std::vector<SparseVec> coboundaries;
};

TopComplex build_top_complex(const Polynomial& f, int bound) {
  if (f.is_zero()) throw std::invalid_argument("top-order coefficient must be nonzero");
  const int df = f.total_degree();
  if (bound < df - 1) throw std::invalid_argument("degree bound must be at least deg f - 1");
  ChartPtr chart = make_chart(f.nvars());
  TopComplex tc{chart, TruncatedBasis(chart, Variance::form, 1, bound), {}, {}};
  const RationalFunction fr(f);
  const Form dfr = differential(chart, fr);
  auto op = [&](const GradedTensor& a) { return ext_d(a) * fr - wedge(dfr, a); };
  const auto enc = encode_images(tc.forms, op);
  tc.cocycles = kernel(enc, tc.forms.size());
  for (const auto& e : monomials_up_to(f.nvars(), bound + 1 - df)) {
    if (total_degree(e) == 0) continue;
    const Form b = differential(chart, RationalFunction(Polynomial::monomial(e))) * fr;
    if (!op(b).is_zero()) throw std::logic_error("coboundary f dg failed the cocycle equation");
    tc.coboundaries.push_back(tc.forms.coordinates(b));
  }
  return tc;
}

}  // namespace

H1TopResult np_h1_top(const Polynomial& f, int bound) {
  const TopComplex tc = build_top_complex(f, bound);
  H1TopResult r;
  r.bound = bound;
  r.cocycles = tc.cocycles.size();
  EchelonBasis span(tc.forms.size());
  for (const auto& b : tc.coboundaries) span.insert(b);
  r.coboundaries = span.rank();
  for (const auto& z : tc.cocycles) {
    const SparseVec zs = to_sparse(z);
    if (span.insert(zs)) r.representatives.push_back(tc.forms.combine(zs));
  }
  if (span.rank() != r.cocycles) throw std::logic_error("coboundaries are not contained in cocycles");
  r.dimension = r.cocycles - r.coboundaries;
  return r;
}

CongruenceResult h1_top_congruence(const Polynomial& f, int bound, const Form& rep, const Form& target) {
  const TopComplex tc = build_top_complex(f, bound);
  std::vector<SparseVec> columns = tc.coboundaries;
  columns.push_back(tc.forms.coordinates(target));
  const ExactMatrix m = matrix_from_columns(columns, tc.forms.size());
  const SolveResult solved = solve_linear(m, to_dense(tc.forms.coordinates(rep), tc.forms.size()));
  CongruenceResult r;
  r.member = solved.feasible;
  if (solved.feasible) r.target_coefficient = solved.solution.back();
  return r;
}

std::vector<SparseVec> tangent_basis(const NambuStructure& s, int k, int bound) {
  const TruncatedBasis dom(s.chart(), Variance::multivector, k, bound);
  std::vector<SparseVec> out;
  const std::vector<Form> kers = k == 0 ? std::vector<Form>{} : ker_sharp_basis(s, 1, bound);
  if (kers.empty()) {
    for (std::size_t i = 0; i < dom.size(); ++i) out.push_back({{i, Rational(1)}});
    return out;
  }
  // One block of rows per kernel element.
  std::vector<SupportIndex> blocks(kers.size());
  std::vector<std::vector<SparseVec>> parts(dom.size(), std::vector<SparseVec>(kers.size()));
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Multivector p = dom.tensor(i);
    for (std::size_t j = 0; j < kers.size(); ++j) parts[i][j] = blocks[j].encode(contract_form(kers[j], p));
  }
  std::vector<std::size_t> offset(kers.size() + 1, 0);
  for (std::size_t j = 0; j < kers.size(); ++j) offset[j + 1] = offset[j] + blocks[j].size();
  std::vector<SparseVec> columns(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (std::size_t j = 0; j < kers.size(); ++j) {
      for (const auto& [r, v] : parts[i][j]) columns[i].emplace_back(offset[j] + r, v);
    }
  }
  for (const auto& v : nullspace(matrix_from_columns(columns, offset.back()))) out.push_back(to_sparse(v));
  return out;
}

HomologyResult canonical_homology_dim(const NambuStructure& s, const VolumeSpec& v, int k, int bound) {
  if (k < 0 || k > s.order()) throw DegreeError("canonical homology degree out of range");
  if (!(*v.chart == *s.chart())) throw ChartMismatch("volume and structure live on different charts");
  HomologyResult r;
  r.degree = k;
  r.bound = bound;
  const TruncatedBasis dom(s.chart(), Variance::multivector, k, bound);
  const std::vector<SparseVec> chains = tangent_basis(s, k, bound);
  r.chains = chains.size();
  if (k == 0) {
    r.cycles = chains.size();
  } else {
    SupportIndex rows;
    std::vector<SparseVec> images;
    for (const auto& c : chains) images.push_back(rows.encode(delta(v, dom.combine(c))));
    r.cycles = chains.size() - span_rank(images, rows.size());
  }
  if (k < s.order() && static_cast<std::size_t>(k + 1) <= s.dim()) {
    const TruncatedBasis up(s.chart(), Variance::multivector, k + 1, bound + 1);
    std::vector<SparseVec> images;
    for (const auto& c : tangent_basis(s, k + 1, bound + 1)) images.push_back(dom.coordinates(delta(v, up.combine(c))));
    r.boundaries = span_rank(images, dom.size());
    std::vector<SparseVec> all = chains;
    all.insert(all.end(), images.begin(), images.end());
    if (span_rank(all, dom.size()) != chains.size()) {
      throw std::logic_error("boundaries are not tangent at this bound");
    }
  }
  r.dimension = r.cycles - r.boundaries;
  return r;
}

MembershipResult subcomplex_check(const NambuStructure& s, const VolumeSpec& v, int bound) {
  MembershipResult r{false, modular_tensor(s, v), std::nullopt, {}, {}};
  const TruncatedBasis dom(s.chart(), Variance::form, 1, bound);
  SupportIndex rows;
  std::vector<SparseVec> columns;
  for (std::size_t i = 0; i < dom.size(); ++i) columns.push_back(rows.encode(contract_form(dom.tensor(i), s.lambda())));
  const SparseVec target = rows.encode(r.modular);
  const SolveResult solved = solve_linear(matrix_from_columns(columns, rows.size()), to_dense(target, rows.size()));
  if (solved.feasible) {
    r.member = true;
    r.witness = dom.combine(solved.solution);
    return r;
  }
  r.certificate = solved.certificate;
  append_labels(s.chart(), Variance::multivector, rows, r.certificate, r.certificate_labels);
  return r;
}

DualityReport duality_report(const NambuStructure& s, const VolumeSpec& v, int bound) {
  DualityReport rep;
  rep.bound = bound;
  rep.order = s.order();
  const int n = s.order();
  const bool regular = s.has_constant_coefficients();
  const bool top = s.is_top_order();
  std::vector<std::string> mismatches;
  for (int k = 0; k <= n; ++k) {
    DualityRow row;
    row.degree = k;
    row.foliated = foliated_at(s, k, bound).dimension;
    row.canonical = canonical_homology_dim(s, v, n - k, bound).dimension;
    if (k == 0) {
      row.np = row.foliated;
    } else if (top && k == 1) {
      row.np = np_h1_top(s.top_coefficient(), bound).dimension;
    } else if (regular) {
      row.np = row.foliated;
    }
    if (row.np && *row.np != row.canonical) {
      mismatches.push_back("H" + std::to_string(k) + "_NP=" + std::to_string(*row.np) + ", H" +
                           std::to_string(n - k) + "_can=" + std::to_string(row.canonical));
    }
    rep.rows.push_back(row);
  }
  rep.holds = mismatches.empty();
  if (rep.holds) {
    rep.verdict = "duality holds at bound " + std::to_string(bound);
  } else {
    rep.verdict = "duality FAILS: ";
    for (std::size_t i = 0; i < mismatches.size(); ++i) rep.verdict += (i ? "; " : "") + mismatches[i];
  }
  return rep;
}

Cochain form_cochain(const NambuStructure& s, const Form& alpha) {
  return [s, alpha](const std::vector<Form>& args) {
    if (args.size() != static_cast<std::size_t>(alpha.degree())) throw ArityError("cochain arity mismatch");
    GradedTensor p = GradedTensor::scalar(s.chart(), RationalFunction::constant(s.dim(), 1), Variance::multivector);
    for (const Form& a : args) p = wedge(p, sharp(s, s.order() - 1, a));
    return pair(alpha, p);
  };
}

RationalFunction np_coboundary(const NambuStructure& s, const Cochain& c, int k, const std::vector<Form>& args) {
  if (args.size() != static_cast<std::size_t>(k + 1)) throw ArityError("coboundary needs k + 1 arguments");
  RationalFunction sum(s.dim());
  for (int i = 0; i <= k; ++i) {
    std::vector<Form> rest;
    for (int j = 0; j <= k; ++j) {
      if (j != i) rest.push_back(args[j]);
    }
    RationalFunction term = apply_vector(sharp(s, s.order() - 1, args[i]), c(rest));
    sum += (i % 2 == 0) ? term : -term;
  }
  for (int i = 0; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      std::vector<Form> rest;
      for (int l = 0; l <= k; ++l) {
        if (l == i) continue;
        rest.push_back(l == j ? leibniz_bracket(s, args[i], args[j]) : args[l]);
      }
      RationalFunction term = c(rest);
      sum += ((i + 1) % 2 == 0) ? term : -term;
    }
  }
  return sum;
}

}  // namespace npc
