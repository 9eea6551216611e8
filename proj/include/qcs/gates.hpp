#pragma once

// Instruction sets, depth-1 layers, circuits and circuit metrics.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qcs/matrix.hpp"

namespace qcs {

/// Per-wire gate codes; these are also the low nibble of the on-disk layer byte.
enum class GateCode : std::uint8_t { I = 0, H = 1, P = 2, PDG = 3, T = 4, TDG = 5, CnotControl = 6, CnotTarget = 7 };

enum class GateSetId : std::uint8_t { CliffordT = 0, CliffordOnly = 1 };

struct GateSet {
    GateSetId id;
    std::string_view name;
    /// Single-wire choices for a layer slot, identity first.
    std::vector<GateCode> singles;
    bool has_cnot = true;
};

const GateSet& gate_set(GateSetId id);

GateCode inverse(GateCode g) noexcept;
bool is_t_like(GateCode g) noexcept;
std::string_view gate_name(GateCode g) noexcept;

/// Single 2x2 gate matrix; H, P, PDG, T, TDG, I.
RingMatrix single_gate_matrix(GateCode g);

/// One time slice: a byte per wire. Low nibble is the GateCode, high nibble is partner+1 for CNOT roles.
struct Layer {
    std::array<std::uint8_t, kMaxQubits> slot{};

    GateCode code(int w) const noexcept { return static_cast<GateCode>(slot[static_cast<std::size_t>(w)] & 0x0F); }
    int partner(int w) const noexcept { return (slot[static_cast<std::size_t>(w)] >> 4) - 1; }

    void set_single(int w, GateCode g) { slot[static_cast<std::size_t>(w)] = static_cast<std::uint8_t>(g); }
    void set_cnot(int control, int target);
    void clear(int w) { slot[static_cast<std::size_t>(w)] = 0; }

    bool is_identity() const noexcept;
    bool wire_busy(int w) const noexcept { return slot[static_cast<std::size_t>(w)] != 0; }
    bool has_t() const noexcept;
    int gate_count() const noexcept;

    /// Checks pairing consistency on the first n wires.
    bool valid(int n) const noexcept;

    friend bool operator==(const Layer&, const Layer&) = default;
    friend auto operator<=>(const Layer&, const Layer&) = default;
};

enum class GateKind : std::uint8_t { H, P, PDG, T, TDG, CNOT };

/// Gate-list element. For CNOT, `wire` is the control and `target` the target.
struct Gate {
    GateKind kind;
    int wire = 0;
    int target = -1;
    friend bool operator==(const Gate&, const Gate&) = default;
};

std::string_view gate_kind_name(GateKind k) noexcept;

struct CostVector {
    long x_h = 0, x_p = 0, x_c = 0, x_t = 0;
    friend bool operator==(const CostVector&, const CostVector&) = default;
};

class Circuit {
public:
    Circuit() = default;
    /// `n_qubits` counts every wire; the last `n_ancillas` of them are ancillas.
    explicit Circuit(int n_qubits, int n_ancillas = 0);
    Circuit(int n_qubits, std::vector<Layer> layers, int n_ancillas = 0);

    int n_qubits() const noexcept { return n_qubits_; }
    int n_ancillas() const noexcept { return n_ancillas_; }
    int depth() const noexcept { return static_cast<int>(layers_.size()); }

    const std::vector<Layer>& layers() const noexcept { return layers_; }
    std::vector<Layer>& layers() noexcept { return layers_; }
    void push_back(const Layer& l) { layers_.push_back(l); }
    /// Appends `other`'s layers after this circuit's layers.
    void append(const Circuit& other);

    /// Gates in layer order, wires ascending within a layer.
    std::vector<Gate> gates() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int n_qubits_ = 0;
    int n_ancillas_ = 0;
    std::vector<Layer> layers_;
};

/// V_{n,G}: every depth-1 layer including the all-identity one, in canonical order.
std::vector<Layer> enumerate_layers(int n, const GateSet& gs);
/// Closed count of enumerate_layers.
std::size_t layer_count(int n, const GateSet& gs);

RingMatrix layer_matrix(const Layer& l, int n);
/// M <- layer * M.
void apply_layer_left(RingMatrix& m, const Layer& l);
/// M <- M * layer.
void apply_layer_right(RingMatrix& m, const Layer& l);

/// Product of layer matrices, layer 0 applied first.
RingMatrix evaluate(const Circuit& c);

Circuit invert(const Circuit& c);
Layer relabel(const Layer& l, const QubitPermutation& perm, int n);
Circuit relabel(const Circuit& c, const QubitPermutation& perm);

/// ASAP layering of a gate list.
Circuit schedule(int n_qubits, std::span<const Gate> gates, int n_ancillas = 0);
/// ASAP layering where each block (gates on disjoint wires) must share one layer.
Circuit schedule_blocks(int n_qubits, std::span<const std::vector<Gate>> blocks, int n_ancillas = 0);
/// Re-schedules an already layered circuit ASAP.
Circuit compact(const Circuit& c);

int t_depth(const Circuit& c);
int gate_count(const Circuit& c);
CostVector cost_vector(const Circuit& c);

/// Lexicographic comparison of layer encodings; the tie-break order used everywhere.
std::strong_ordering encoding_cmp(const Circuit& x, const Circuit& y);

}  // namespace qcs
