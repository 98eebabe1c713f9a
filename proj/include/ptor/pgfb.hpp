#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ptor/grid.hpp"

namespace ptor {

enum class FieldKind : std::uint8_t {
  scalar_real = 0,
  scalar_complex = 1,
  metric = 2,
  connection = 3,
  endo_one_form = 4,
  one_form = 5,
  vector = 6,
};

int pgfb_components(FieldKind kind);

/// Untyped field as stored on disk: n·n nodes, components innermost,
/// complex data interleaved (re, im).
struct RawField {
  TorusGrid grid;
  FieldKind kind;
  int ncomp;
  std::vector<double> v;
};

void write_pgfb(const std::string& path, FieldKind kind, int n, int ncomp,
                const double* data);

/// Throws parse_error naming the byte offset of the first malformed field.
RawField read_pgfb(const std::string& path,
                   std::complex<double> tau = {0.0, 1.0});

template <class Field>
void write_pgfb(const std::string& path, const Field& f, FieldKind kind) {
  write_pgfb(path, kind, f.grid.n, Field::ncomp, f.v.data());
}

inline void write_pgfb(const std::string& path, const ComplexField& f) {
  write_pgfb(path, FieldKind::scalar_complex, f.grid.n, 2,
             reinterpret_cast<const double*>(f.v.data()));
}

}  // namespace ptor
