#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modwave/grid.hpp"

namespace modwave {

struct PhysicalTag {};
struct FrequencyTag {};

/// Complex samples on a SpectralGrid. The tag separates functions of x from
/// functions of xi so the two cannot be mixed up at call sites.
template <class Tag>
class Field {
 public:
  explicit Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size()) {}

  Field(GridPtr grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size()) {
      throw InvalidArgument("field length " + std::to_string(values_.size()) +
                            " does not match grid size " + std::to_string(grid_->size()));
    }
    for (const cplx& z : values_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NumericalError("field contains non-finite values");
      }
    }
  }

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const cplx> values() const { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }

  /// Moves the samples out, leaving this field empty.
  std::vector<cplx> release() && { return std::move(values_); }

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
};

using PhysicalField = Field<PhysicalTag>;
using FrequencyField = Field<FrequencyTag>;

template <class Tag>
void require_same_grid(const Field<Tag>& a, const Field<Tag>& b) {
  if (!a.grid().same_as(b.grid())) throw InvalidArgument("fields live on different grids");
}

template <class Tag>
Field<Tag> operator+(const Field<Tag>& a, const Field<Tag>& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Field<Tag>(a.grid_ptr(), std::move(out));
}

template <class Tag>
Field<Tag> operator-(const Field<Tag>& a, const Field<Tag>& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Field<Tag>(a.grid_ptr(), std::move(out));
}

template <class Tag>
Field<Tag> operator*(cplx c, const Field<Tag>& a) {
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a[i];
  return Field<Tag>(a.grid_ptr(), std::move(out));
}

}  // namespace modwave
