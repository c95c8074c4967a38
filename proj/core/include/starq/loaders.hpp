#pragma once

#include "starq/glue.hpp"
#include "starq/liealg.hpp"

#include <iosfwd>
#include <string>

namespace starq {

class LoadError : public std::runtime_error {
public:
    LoadError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

/// Line-based algebra format:
///   dim N
///   basis X Y Z
///   bracket X Y = Z          (unspecified brackets default to 0)
/// '#' starts a comment.  Dual coordinates are the lowercased basis names.
/// Antisymmetry and the Jacobi identity are validated; violations raise
/// LoadError with a witness.
LieAlgebra load_algebra(std::istream& in);
LieAlgebra load_algebra_file(const std::string& path);

/// Gluing instance format:
///   charts N
///   order K
///   vars q p
///   weight 1 = q
///   weight 2 = 1 - q
///   transition 2 1 = exp(h * d/dq * d/dp)
/// Chart 1 carries the truncated standard Moyal product; every other chart r
/// needs `transition r 1` and receives the transported product.  Remaining
/// transitions come from inverses and compositions.
GluingInstance load_gluing(std::istream& in);
GluingInstance load_gluing_file(const std::string& path);

} // namespace starq
