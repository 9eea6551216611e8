#pragma once

// Named target unitaries.
//
// Wire convention: the first qubit named in a gate's description is the highest wire.
// Controlled gates put the control on the high wire: |0><0| (x) I + |1><1| (x) U.

#include <string>
#include <string_view>
#include <vector>

#include "qcs/matrix.hpp"

namespace qcs {

/// Names accepted by build_target, in catalog order.
const std::vector<std::string>& target_names();

/// Throws std::invalid_argument for an unknown name.
RingMatrix build_target(std::string_view name);

/// A catalog name, or a path to a JSON matrix file.
RingMatrix load_target(const std::string& name_or_path);

/// Controlled version of a single-qubit gate, control on wire 1.
RingMatrix controlled(const RingMatrix& u);

/// Permutation matrix of a reversible function on basis indices.
RingMatrix permutation_matrix(int n, std::size_t (*f)(std::size_t));

}  // namespace qcs
