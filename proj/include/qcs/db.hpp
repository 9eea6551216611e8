#pragma once

// Per-depth databases of minimal-depth class representatives.
//
// Only circuits are stored (n bytes per layer); unitaries are recomputed on demand.
// Each level is sorted by key, so probes are binary searches.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcs/canon.hpp"
#include "qcs/gates.hpp"

namespace qcs {

enum class DbMode : std::uint8_t { Classed = 0, Full = 1 };

struct CircuitRecord {
    Key128 key;
    Circuit circuit;
    int gate_count = 0;
};

/// All representatives whose minimal depth equals `depth`.
class DbLevel {
public:
    DbLevel() = default;
    DbLevel(int n_qubits, int depth) : n_(n_qubits), depth_(depth) {}

    int depth() const noexcept { return depth_; }
    std::size_t size() const noexcept { return keys_.size(); }
    std::size_t stride() const noexcept { return static_cast<std::size_t>(n_ * depth_); }

    const Key128& key(std::size_t i) const { return keys_[i]; }
    int gate_count(std::size_t i) const { return gate_counts_[i]; }
    Circuit circuit(std::size_t i) const;
    CircuitRecord record(std::size_t i) const { return {keys_[i], circuit(i), gate_counts_[i]}; }
    std::span<const std::uint8_t> circuit_bytes(std::size_t i) const {
        return {bytes_.data() + i * stride(), stride()};
    }

    std::optional<std::size_t> find(const Key128& k) const;

    /// Appends a record; keys must arrive in strictly increasing order.
    void push_back(const Key128& k, std::span<const std::uint8_t> circuit_bytes, int gate_count);
    void reserve(std::size_t n);

    friend bool operator==(const DbLevel&, const DbLevel&) = default;

private:
    int n_ = 0;
    int depth_ = 0;
    std::vector<Key128> keys_;
    std::vector<std::uint16_t> gate_counts_;
    std::vector<std::uint8_t> bytes_;
};

/// Which circuit a class keeps when several of minimal depth reach it.
enum class TieBreak : std::uint8_t {
    /// Fewest gates, then layer encoding.
    GateCount,
    /// Fewest T layers, then fewest gates, then layer encoding.
    TDepth,
};

struct GenerateOptions {
    /// 0 means all available threads.
    int threads = 0;
    /// Stop (keeping completed levels) once the record total would exceed this.
    std::size_t max_records = 0;
    TieBreak tie_break = TieBreak::GateCount;
    /// Called after each completed level.
    std::function<void(int depth, std::size_t size, double seconds)> on_level;
};

class CircuitDatabase {
public:
    CircuitDatabase() = default;
    CircuitDatabase(int n_qubits, GateSetId gs, DbMode mode) : n_(n_qubits), gate_set_(gs), mode_(mode) {}

    int n_qubits() const noexcept { return n_; }
    GateSetId gate_set_id() const noexcept { return gate_set_; }
    DbMode mode() const noexcept { return mode_; }
    int max_depth() const noexcept { return static_cast<int>(levels_.size()); }
    /// Generation hit its record budget before reaching the requested depth.
    bool truncated() const noexcept { return truncated_; }
    void set_truncated(bool t) noexcept { truncated_ = t; }

    /// Level of depth d (1-based).
    const DbLevel& level(int d) const { return levels_.at(static_cast<std::size_t>(d - 1)); }
    std::vector<std::size_t> level_sizes() const;
    std::size_t total_records() const;
    void add_level(DbLevel l);

    friend bool operator==(const CircuitDatabase& a, const CircuitDatabase& b) {
        return a.n_ == b.n_ && a.gate_set_ == b.gate_set_ && a.mode_ == b.mode_ && a.levels_ == b.levels_;
    }

private:
    int n_ = 0;
    GateSetId gate_set_ = GateSetId::CliffordT;
    DbMode mode_ = DbMode::Classed;
    bool truncated_ = false;
    std::vector<DbLevel> levels_;
};

CircuitDatabase generate(int n, GateSetId gs, int max_depth, DbMode mode, const GenerateOptions& opts = {});

/// Exact key match across all levels; the caller confirms by matrix comparison.
std::optional<std::pair<int, CircuitRecord>> lookup(const CircuitDatabase& db, const Key128& key);

/// Canonical key of U for this database's mode.
Key128 class_key(const CircuitDatabase& db, const RingMatrix& u);

std::vector<std::uint8_t> serialize(const CircuitDatabase& db);
CircuitDatabase deserialize(std::span<const std::uint8_t> bytes);
void save(const CircuitDatabase& db, const std::string& path);
CircuitDatabase load(const std::string& path);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

}  // namespace qcs
