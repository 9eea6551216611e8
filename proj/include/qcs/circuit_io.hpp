#pragma once

// Line-oriented circuit text.
//
//   # comment
//   qubits 3
//   ancillas 1          (optional; the last K wires)
//   H 0
//   CNOT 0 1
//
// Gate lists are scheduled ASAP. Lines of the form "-- layer d" (as emitted) fix layer
// boundaries instead, so emitted circuits parse back to the same layering.

#include <string>
#include <string_view>

#include "qcs/gates.hpp"

namespace qcs {

/// Throws FormatError on malformed input.
Circuit parse_circuit(std::string_view text);
std::string emit_circuit(const Circuit& c);

Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

}  // namespace qcs
