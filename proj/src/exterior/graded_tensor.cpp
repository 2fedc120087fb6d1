#include "npc/exterior/graded_tensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace npc {

Chart::Chart(std::size_t dim, std::vector<std::string> names) : dim_(dim), names_(std::move(names)) {
  if (dim_ < 1) throw std::invalid_argument("chart dimension must be at least 1");
  if (names_.empty()) names_ = default_names(dim_);
  if (names_.size() != dim_) throw std::invalid_argument("chart needs one name per coordinate");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("coordinate names must be distinct");
}

int Chart::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

ChartPtr make_chart(std::size_t dim, std::vector<std::string> names) {
  return std::make_shared<const Chart>(dim, std::move(names));
}

std::vector<IndexSet> index_sets(std::size_t m, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || static_cast<std::size_t>(k) > m) return out;
  IndexSet cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == static_cast<int>(m) - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int shuffle_sign(const IndexSet& a, const IndexSet& b) {
  int count = 0;
  for (int i : a) {
    for (int k : b) {
      if (i > k) ++count;
    }
  }
  return (count % 2 == 0) ? 1 : -1;
}

GradedTensor::GradedTensor(ChartPtr chart, Variance variance, int degree)
    : chart_(std::move(chart)), variance_(variance), degree_(degree) {
  if (!chart_) throw std::invalid_argument("tensor without a chart");
  if (degree_ < 0 || static_cast<std::size_t>(degree_) > chart_->dim()) {
    throw DegreeError("tensor degree " + std::to_string(degree_) + " outside 0.." + std::to_string(chart_->dim()));
  }
}

GradedTensor GradedTensor::scalar(ChartPtr chart, const RationalFunction& f, Variance variance) {
  GradedTensor t(std::move(chart), variance, 0);
  t.set({}, f);
  return t;
}

GradedTensor GradedTensor::basis(ChartPtr chart, Variance variance, IndexSet indices, const RationalFunction& coeff) {
  GradedTensor t(std::move(chart), variance, static_cast<int>(indices.size()));
  t.set(indices, coeff);
  return t;
}

GradedTensor GradedTensor::basis(ChartPtr chart, Variance variance, IndexSet indices) {
  const std::size_t n = chart->dim();
  return basis(std::move(chart), variance, std::move(indices), RationalFunction::constant(n, 1));
}

void GradedTensor::check_indices(const IndexSet& indices) const {
  if (indices.size() != static_cast<std::size_t>(degree_)) throw DegreeError("component index has wrong length");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || static_cast<std::size_t>(indices[i]) >= dim()) {
      throw std::out_of_range("component index outside chart");
    }
    if (i > 0 && indices[i] <= indices[i - 1]) throw std::invalid_argument("component index not strictly increasing");
  }
}

RationalFunction GradedTensor::component(const IndexSet& indices) const {
  auto it = components_.find(indices);
  return it == components_.end() ? RationalFunction(dim()) : it->second;
}

RationalFunction GradedTensor::scalar_value() const {
  if (degree_ != 0) throw DegreeError("scalar value of a tensor of positive degree");
  return component({});
}

void GradedTensor::set(const IndexSet& indices, const RationalFunction& value) {
  check_indices(indices);
  if (value.nvars() != dim()) throw ChartMismatch("coefficient over a different variable list");
  if (value.is_zero()) components_.erase(indices);
  else components_[indices] = value;
}

void GradedTensor::add(const IndexSet& indices, const RationalFunction& value) {
  if (value.is_zero()) return;
  check_indices(indices);
  auto it = components_.find(indices);
  if (it == components_.end()) {
    if (value.nvars() != dim()) throw ChartMismatch("coefficient over a different variable list");
    components_.emplace(indices, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) components_.erase(it);
}

bool GradedTensor::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& kv) { return kv.second.is_polynomial(); });
}

int GradedTensor::coefficient_degree() const {
  int d = -1;
  for (const auto& [i, c] : components_) {
    auto p = c.as_polynomial();
    if (!p) throw std::domain_error("coefficient degree of a non-polynomial tensor");
    d = std::max(d, p->total_degree());
  }
  return d;
}

void GradedTensor::check_same_space(const GradedTensor& other) const {
  if (!(*chart_ == *other.chart_)) throw ChartMismatch("tensors live on different charts");
  if (variance_ != other.variance_) throw VarianceMismatch("cannot combine a form with a multivector");
  if (degree_ != other.degree_) throw DegreeError("tensors have different degrees");
}

GradedTensor& GradedTensor::operator+=(const GradedTensor& other) {
  check_same_space(other);
  for (const auto& [i, c] : other.components_) add(i, c);
  return *this;
}

GradedTensor& GradedTensor::operator-=(const GradedTensor& other) {
  check_same_space(other);
  for (const auto& [i, c] : other.components_) add(i, -c);
  return *this;
}

GradedTensor& GradedTensor::operator*=(const RationalFunction& f) {
  if (f.is_zero()) {
    components_.clear();
    return *this;
  }
  for (auto it = components_.begin(); it != components_.end();) {
    it->second *= f;
    if (it->second.is_zero()) it = components_.erase(it);
    else ++it;
  }
  return *this;
}

GradedTensor GradedTensor::operator-() const {
  GradedTensor out(*this);
  for (auto& [i, c] : out.components_) c = -c;
  return out;
}

bool operator==(const GradedTensor& a, const GradedTensor& b) {
  if (!(*a.chart_ == *b.chart_) || a.degree_ != b.degree_) return false;
  if (a.variance_ != b.variance_ && a.degree_ != 0) return false;
  if (a.components_.size() != b.components_.size()) return false;
  auto ib = b.components_.begin();
  for (const auto& [i, c] : a.components_) {
    if (ib->first != i || !(ib->second == c)) return false;
    ++ib;
  }
  return true;
}

namespace {

bool is_single_term(const RationalFunction& c) { return c.is_polynomial() && c.numerator().term_count() == 1; }

std::string render(const GradedTensor& t, bool dsl) {
  if (t.is_zero()) return "0";
  const auto& names = t.chart()->names();
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : t.components()) {
    std::string basis;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (a) basis += "^";
      if (t.is_form()) basis += "d" + names[idx[a]];
      else basis += "@" + std::to_string(idx[a] + 1);
    }
    std::string coeff = dsl ? c.to_dsl(names) : c.to_string(names);
    bool negative = false;
    if (is_single_term(c) && coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    std::string term;
    if (basis.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = basis;
    } else if (is_single_term(c)) {
      term = coeff + "*" + basis;
    } else {
      term = "(" + coeff + ")*" + basis;
    }
    if (first) os << (negative ? "-" : "") << term;
    else os << (negative ? " - " : " + ") << term;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string GradedTensor::to_string() const { return render(*this, false); }
std::string GradedTensor::to_dsl() const { return render(*this, true); }

}  // namespace npc
