#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace npc {

/// Coordinate chart: dimension and distinct coordinate names.
class Chart {
 public:
  explicit Chart(std::size_t dim, std::vector<std::string> names = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Index of a coordinate name, or -1.
  int index_of(const std::string& name) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.dim_ == b.dim_ && a.names_ == b.names_; }

 private:
  std::size_t dim_;
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::size_t dim, std::vector<std::string> names = {});

}  // namespace npc
