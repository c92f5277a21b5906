#pragma once

#include <filesystem>
#include <iosfwd>

#include "schur/csr.hpp"
#include "schur/dense.hpp"

namespace schur::mm {

enum class Symmetry { General, Symmetric };

/// Reads "coordinate real general|symmetric" (also accepts "integer" and
/// "pattern" fields).  Symmetric files are expanded to both triangles.
CsrMatrix read_csr(std::istream& in);
CsrMatrix read_csr(const std::filesystem::path& path);

/// With Symmetry::Symmetric only the lower triangle is written.
void write_csr(std::ostream& out, const CsrMatrix& a, Symmetry sym = Symmetry::General);
void write_csr(const std::filesystem::path& path, const CsrMatrix& a,
               Symmetry sym = Symmetry::General);

/// "array real general", column-major as the format prescribes.
void write_dense(std::ostream& out, ConstDenseView a);
void write_dense(const std::filesystem::path& path, ConstDenseView a);
DenseMatrix read_dense(std::istream& in);

}  // namespace schur::mm
