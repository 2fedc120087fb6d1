#pragma once

#include "npc/modular/volume.hpp"
#include "npc/nambu/structure.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace npc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string token, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

enum class BindingKind { scalar, form, mv, lambda, volume };

std::string kind_keyword(BindingKind kind);

struct Binding {
  BindingKind kind;
  std::string name;
  std::optional<RationalFunction> scalar;
  std::optional<GradedTensor> tensor;
  std::optional<VolumeSpec> volume;
  std::optional<NambuStructure> structure;
  int line = 0;
};

/// Partial product of a volume expression: u * exp(-w), times std when has_std.
struct VolumeFactor {
  Polynomial u;
  Polynomial w;
  bool has_std = false;
};

/// Result of evaluating an expression: exactly one member is set.
struct Value {
  std::optional<RationalFunction> scalar;
  std::optional<GradedTensor> tensor;
  std::optional<VolumeFactor> volume;

  std::string type_name() const;
};

class ModelFile {
 public:
  ModelFile() = default;
  explicit ModelFile(ChartPtr chart) : chart_(std::move(chart)) {}

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Binding>& bindings() const { return bindings_; }
  const Binding* find(const std::string& name) const;
  const Binding& get(const std::string& name) const;
  void add(Binding b);

  const NambuStructure& structure(const std::string& name) const;
  const VolumeSpec& volume(const std::string& name) const;

  friend bool operator==(const ModelFile& a, const ModelFile& b);

 private:
  ChartPtr chart_;
  std::vector<Binding> bindings_;
  std::map<std::string, std::size_t> index_;
};

ModelFile parse_model(const std::string& text);
std::string serialize(const ModelFile& model);

/// Evaluates an expression against a parsed model (bindings and coordinates in scope).
Value evaluate_expression(const ModelFile& model, const std::string& text);

/// An expression that must denote a scalar (or a degree-0 tensor).
RationalFunction evaluate_scalar(const ModelFile& model, const std::string& text);
/// An expression that must denote a form or multivector.
GradedTensor evaluate_tensor(const ModelFile& model, const std::string& text);

}  // namespace npc
