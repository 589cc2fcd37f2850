#pragma once

#include "k3gw/gaussian.hpp"

#include <vector>

namespace k3gw {

using GQMatrix = std::vector<std::vector<GQ>>;

struct LinearSolution {
    enum class Status { unique, inconsistent, underdetermined };
    Status status = Status::inconsistent;
    std::vector<GQ> x;  // a particular solution when consistent (free variables set to 0)
    int rank = 0;
};

// Exact Gauss-Jordan elimination for A x = b over Q(i).
LinearSolution solve_linear(GQMatrix A, std::vector<GQ> b);

GQ determinant(GQMatrix A);

}  // namespace k3gw
