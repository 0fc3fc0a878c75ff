#pragma once

// Plain-text covariance matrix files:
//   line 1: number of modes n
//   then 2n rows of 2n whitespace-separated numbers (row-major)

#include "gielab/symplectic.hpp"

#include <iosfwd>
#include <string>

namespace gielab {

CovarianceMatrix read_cm(std::istream& in);
CovarianceMatrix read_cm_file(const std::string& path);
void write_cm(std::ostream& out, const CovarianceMatrix& gamma);

}  // namespace gielab
