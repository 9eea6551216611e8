#include "qcs/db.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_map>
#include <unordered_set>

#include "qcs/errors.hpp"

namespace qcs {

// ---------------------------------------------------------------- DbLevel

Circuit DbLevel::circuit(std::size_t i) const {
    Circuit c(n_);
    auto b = circuit_bytes(i);
    for (int d = 0; d < depth_; ++d) {
        Layer l;
        std::memcpy(l.slot.data(), b.data() + static_cast<std::size_t>(d * n_), static_cast<std::size_t>(n_));
        c.push_back(l);
    }
    return c;
}

std::optional<std::size_t> DbLevel::find(const Key128& k) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || !(*it == k)) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
}

void DbLevel::push_back(const Key128& k, std::span<const std::uint8_t> circuit_bytes, int gate_count) {
    if (circuit_bytes.size() != stride()) throw std::invalid_argument("record circuit has the wrong depth");
    if (!keys_.empty() && !(keys_.back() < k)) throw std::invalid_argument("level keys must be strictly increasing");
    keys_.push_back(k);
    gate_counts_.push_back(static_cast<std::uint16_t>(gate_count));
    bytes_.insert(bytes_.end(), circuit_bytes.begin(), circuit_bytes.end());
}

void DbLevel::reserve(std::size_t n) {
    keys_.reserve(n);
    gate_counts_.reserve(n);
    bytes_.reserve(n * stride());
}

// ---------------------------------------------------------------- CircuitDatabase

std::vector<std::size_t> CircuitDatabase::level_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels_) out.push_back(l.size());
    return out;
}

std::size_t CircuitDatabase::total_records() const {
    std::size_t t = 0;
    for (const auto& l : levels_) t += l.size();
    return t;
}

void CircuitDatabase::add_level(DbLevel l) {
    if (l.depth() != max_depth() + 1) throw std::invalid_argument("levels must be added in depth order");
    levels_.push_back(std::move(l));
}

std::optional<std::pair<int, CircuitRecord>> lookup(const CircuitDatabase& db, const Key128& key) {
    for (int d = 1; d <= db.max_depth(); ++d)
        if (auto i = db.level(d).find(key)) return std::pair{d, db.level(d).record(*i)};
    return std::nullopt;
}

Key128 class_key(const CircuitDatabase& db, const RingMatrix& u) {
    return canonicalizer(db.n_qubits(), db.mode() == DbMode::Classed).key(u);
}

// ---------------------------------------------------------------- generation

namespace {

constexpr std::size_t kMaxRecordBytes = 64;

struct Candidate {
    Key128 key;
    std::uint16_t gate_count;
    /// Primary order; gate count, or T-depth then gate count.
    std::uint32_t rank;
    std::array<std::uint8_t, kMaxRecordBytes> bytes;
};

// Candidate order: lower rank first, then the layer encoding.
bool better(std::uint32_t rank, const std::uint8_t* bytes, std::uint32_t other_rank, const std::uint8_t* other,
            std::size_t stride) {
    if (rank != other_rank) return rank < other_rank;
    return std::memcmp(bytes, other, stride) < 0;
}

class LevelAccumulator {
public:
    explicit LevelAccumulator(std::size_t stride) : stride_(stride) {}

    void offer(const Candidate& c) {
        auto [it, inserted] = index_.try_emplace(c.key, static_cast<std::uint32_t>(gcs_.size()));
        if (inserted) {
            gcs_.push_back(c.gate_count);
            ranks_.push_back(c.rank);
            bytes_.insert(bytes_.end(), c.bytes.begin(), c.bytes.begin() + static_cast<std::ptrdiff_t>(stride_));
            return;
        }
        const std::size_t slot = it->second;
        std::uint8_t* cur = bytes_.data() + slot * stride_;
        if (better(c.rank, c.bytes.data(), ranks_[slot], cur, stride_)) {
            gcs_[slot] = c.gate_count;
            ranks_[slot] = c.rank;
            std::memcpy(cur, c.bytes.data(), stride_);
        }
    }

    std::size_t size() const noexcept { return gcs_.size(); }

    DbLevel finish(int n, int depth) {
        std::vector<std::pair<Key128, std::uint32_t>> order(index_.begin(), index_.end());
        std::sort(order.begin(), order.end());
        DbLevel level(n, depth);
        level.reserve(order.size());
        for (const auto& [k, slot] : order)
            level.push_back(k, {bytes_.data() + slot * stride_, stride_}, gcs_[slot]);
        return level;
    }

private:
    std::size_t stride_;
    std::unordered_map<Key128, std::uint32_t, Key128Hash> index_;
    std::vector<std::uint16_t> gcs_;
    std::vector<std::uint32_t> ranks_;
    std::vector<std::uint8_t> bytes_;
};

// Encodes `layers` after applying the class transform (relabel, then invert).
void encode_transformed(std::span<const Layer> layers, int n, const Canonicalizer::Variant& v, std::uint8_t* out) {
    const std::size_t depth = layers.size();
    for (std::size_t i = 0; i < depth; ++i) {
        const Layer& src = v.inverted ? layers[depth - 1 - i] : layers[i];
        Layer l = v.perm.is_identity() ? src : relabel(src, v.perm, n);
        if (v.inverted)
            for (int w = 0; w < n; ++w) {
                const GateCode g = l.code(w);
                if (g != GateCode::CnotControl && g != GateCode::CnotTarget) l.set_single(w, inverse(g));
            }
        std::memcpy(out + i * static_cast<std::size_t>(n), l.slot.data(), static_cast<std::size_t>(n));
    }
}

}  // namespace

CircuitDatabase generate(int n, GateSetId gs_id, int max_depth, DbMode mode, const GenerateOptions& opts) {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
    if (n < 1 || n > 8) throw std::invalid_argument("database generation supports 1..8 qubits");
    if (static_cast<std::size_t>(n * max_depth) > kMaxRecordBytes)
        throw std::invalid_argument("n * max_depth exceeds the record size limit");

    const GateSet& gs = gate_set(gs_id);
    // The identity layer only matters at depth 1, where it gives the identity class its record.
    const std::vector<Layer> all_layers = enumerate_layers(n, gs);
    std::vector<Layer> layers;
    for (const auto& l : all_layers)
        if (!l.is_identity()) layers.push_back(l);

    const Canonicalizer& canon = canonicalizer(n, mode == DbMode::Classed);
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

    CircuitDatabase db(n, gs_id, mode);
    std::unordered_set<Key128, Key128Hash> seen;

    for (int depth = 1; depth <= max_depth; ++depth) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t stride = static_cast<std::size_t>(n * depth);
        LevelAccumulator acc(stride);

        // Parents: the previous level, or the empty circuit for depth 1.
        const std::size_t n_parents = depth == 1 ? 1 : db.level(depth - 1).size();
        auto parent_circuit = [&](std::size_t i) { return depth == 1 ? Circuit(n) : db.level(depth - 1).circuit(i); };
        auto parent_gc = [&](std::size_t i) { return depth == 1 ? 0 : db.level(depth - 1).gate_count(i); };

        constexpr std::size_t kChunk = 1024;
        bool over_budget = false;
        for (std::size_t begin = 0; begin < n_parents && !over_budget; begin += kChunk) {
            const std::size_t end = std::min(n_parents, begin + kChunk);
#pragma omp parallel num_threads(threads)
            {
                std::vector<Candidate> local;
                std::vector<Layer> seq(static_cast<std::size_t>(depth));
                RingMatrix m(n), canon_out(n);
#pragma omp for schedule(dynamic, 8)
                for (std::size_t p = begin; p < end; ++p) {
                    const Circuit pc = parent_circuit(p);
                    const RingMatrix pm = evaluate(pc);
                    const int pgc = parent_gc(p);
                    const auto& ext = depth == 1 ? all_layers : layers;
                    for (std::size_t li = 0; li < ext.size(); ++li) {
                        for (int side = 0; side < 2; ++side) {
                            if (depth == 1 && side == 1) continue;
                            m = pm;
                            if (side == 0)
                                apply_layer_left(m, ext[li]);
                            else
                                apply_layer_right(m, ext[li]);
                            const int v = canon.canonicalize_into(m, canon_out);
                            const Key128 k = fingerprint(canon_out);
                            if (seen.contains(k)) continue;
                            // Left extension appends the layer; right extension prepends it.
                            const auto& pl = pc.layers();
                            if (side == 0) {
                                std::copy(pl.begin(), pl.end(), seq.begin());
                                seq.back() = ext[li];
                            } else {
                                seq.front() = ext[li];
                                std::copy(pl.begin(), pl.end(), seq.begin() + 1);
                            }
                            Candidate c;
                            c.key = k;
                            c.gate_count = static_cast<std::uint16_t>(pgc + ext[li].gate_count());
                            c.rank = c.gate_count;
                            if (opts.tie_break == TieBreak::TDepth) {
                                std::uint32_t td = 0;
                                for (const auto& l : seq) td += l.has_t() ? 1U : 0U;
                                c.rank |= td << 16;
                            }
                            encode_transformed(seq, n, canon.variants()[static_cast<std::size_t>(v)], c.bytes.data());
                            local.push_back(c);
                        }
                    }
                }
#pragma omp critical(qcs_generate_merge)
                for (const auto& c : local) acc.offer(c);
            }
            if (opts.max_records && db.total_records() + acc.size() > opts.max_records) over_budget = true;
        }
        if (over_budget) {
            db.set_truncated(true);
            break;
        }

        DbLevel level = acc.finish(n, depth);
        for (std::size_t i = 0; i < level.size(); ++i) seen.insert(level.key(i));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::size_t sz = level.size();
        db.add_level(std::move(level));
        if (opts.on_level) opts.on_level(depth, sz, secs);
    }
    return db;
}

// ---------------------------------------------------------------- serialization

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

constexpr char kMagic[6] = {'Q', 'C', 'D', 'B', '1', '\0'};
constexpr std::uint8_t kFormatVersion = 1;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
    template <typename T>
    T get() {
        need(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{b_[pos_ + i]} << (8 * i);
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }
    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n);
        auto s = b_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t pos() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return b_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (b_.size() - pos_ < n) throw TruncatedFileError("database file is truncated");
    }
    std::span<const std::uint8_t> b_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const CircuitDatabase& db) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    put_le<std::uint8_t>(out, kFormatVersion);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(db.n_qubits()));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(db.gate_set_id()));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(db.mode()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(db.max_depth()));
    for (int d = 1; d <= db.max_depth(); ++d) {
        const DbLevel& l = db.level(d);
        put_le<std::uint64_t>(out, l.size());
        for (std::size_t i = 0; i < l.size(); ++i) {
            put_le<std::uint64_t>(out, l.key(i).hi);
            put_le<std::uint64_t>(out, l.key(i).lo);
            put_le<std::uint16_t>(out, static_cast<std::uint16_t>(d));
            auto b = l.circuit_bytes(i);
            out.insert(out.end(), b.begin(), b.end());
            put_le<std::uint16_t>(out, static_cast<std::uint16_t>(l.gate_count(i)));
        }
    }
    put_le<std::uint64_t>(out, fnv1a64(out));
    return out;
}

CircuitDatabase deserialize(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw FormatError("not a QCDB1 database (bad magic)");
    r.bytes(sizeof kMagic);
    const auto version = r.get<std::uint8_t>();
    if (version != kFormatVersion)
        throw VersionMismatchError("unsupported database format version " + std::to_string(version));
    const int n = r.get<std::uint8_t>();
    const auto gs = r.get<std::uint8_t>();
    const auto mode = r.get<std::uint8_t>();
    if (n < 1 || n > kMaxQubits) throw FormatError("database qubit count out of range");
    if (gs > 1) throw FormatError("unknown gate set id in database");
    if (mode > 1) throw FormatError("unknown database mode flags");
    CircuitDatabase db(n, static_cast<GateSetId>(gs), static_cast<DbMode>(mode));
    const auto n_levels = r.get<std::uint32_t>();
    for (std::uint32_t d = 1; d <= n_levels; ++d) {
        const auto count = r.get<std::uint64_t>();
        const std::size_t per_record = 16 + 2 + static_cast<std::size_t>(n) * d + 2;
        if (count > r.remaining() / per_record) throw TruncatedFileError("database file is truncated");
        DbLevel level(n, static_cast<int>(d));
        level.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            Key128 k;
            k.hi = r.get<std::uint64_t>();
            k.lo = r.get<std::uint64_t>();
            const auto layer_count = r.get<std::uint16_t>();
            if (layer_count != d) throw FormatError("record depth does not match its level");
            auto b = r.bytes(static_cast<std::size_t>(n) * d);
            for (std::uint32_t j = 0; j < d; ++j) {
                Layer l;
                std::memcpy(l.slot.data(), b.data() + j * static_cast<std::size_t>(n), static_cast<std::size_t>(n));
                if (!l.valid(n)) throw FormatError("malformed layer encoding in database");
            }
            const auto gc = r.get<std::uint16_t>();
            try {
                level.push_back(k, b, gc);
            } catch (const std::invalid_argument&) {
                throw FormatError("database level keys are not strictly increasing");
            }
        }
        db.add_level(std::move(level));
    }
    const std::size_t body = r.pos();
    const auto sum = r.get<std::uint64_t>();
    if (sum != fnv1a64(bytes.first(body))) throw ChecksumError("database checksum mismatch");
    if (r.remaining() != 0) throw FormatError("trailing bytes after database checksum");
    return db;
}

void save(const CircuitDatabase& db, const std::string& path) {
    const auto bytes = serialize(db);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for " + path);
}

CircuitDatabase load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace qcs
