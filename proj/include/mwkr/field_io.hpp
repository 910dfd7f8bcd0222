#pragma once

// Column text format shared by every sampled field:
//
//   # mwfield <matrix|vector|scalar>
//   n L N d
//   one row per grid point, in linear index order
//
// Matrix rows hold the d*d entries row-major as (re im) pairs, vector rows the
// d components as (re im) pairs, scalar rows a single real (d is 1). Numbers
// are written in shortest round-trip form, so save/load is bit-exact.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mwkr/fields.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

enum class FieldKind { matrix, vector, scalar };

struct FieldHeader {
  FieldKind kind;
  Grid grid;
  int dim;
};

void write_weight_field(std::ostream& out, const MatrixWeightField& w);
void write_vector_field(std::ostream& out, const SampledVectorField& f);
void write_scalar_field(std::ostream& out, const Grid& grid, std::span<const double> values);

/// Throws FormatError on malformed input and NotPSD / NotHermitian on invalid
/// matrix values.
MatrixWeightField read_weight_field(std::istream& in);
SampledVectorField read_vector_field(std::istream& in);
std::pair<Grid, std::vector<double>> read_scalar_field(std::istream& in);

void save_weight_field(const std::filesystem::path& path, const MatrixWeightField& w);
void save_vector_field(const std::filesystem::path& path, const SampledVectorField& f);
void save_scalar_field(const std::filesystem::path& path, const Grid& grid, std::span<const double> values);
MatrixWeightField load_weight_field(const std::filesystem::path& path);
SampledVectorField load_vector_field(const std::filesystem::path& path);
std::pair<Grid, std::vector<double>> load_scalar_field(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace mwkr
