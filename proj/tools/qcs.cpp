// qcs: command-line front end.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "qcs/circuit_io.hpp"
#include "qcs/db.hpp"
#include "qcs/errors.hpp"
#include "qcs/phasepoly.hpp"
#include "qcs/reference.hpp"
#include "qcs/search.hpp"
#include "qcs/targets.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kFormat = 3, kNotFound = 4, kResource = 5 };

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Common {
    int threads = 0;
};

qcs::GateSetId parse_gate_set(const std::string& s) {
    if (s == "clifford-t") return qcs::GateSetId::CliffordT;
    if (s == "clifford") return qcs::GateSetId::CliffordOnly;
    throw std::invalid_argument("unknown gate set '" + s + "' (clifford-t or clifford)");
}

qcs::DbMode parse_mode(const std::string& s) {
    if (s == "classed") return qcs::DbMode::Classed;
    if (s == "full") return qcs::DbMode::Full;
    throw std::invalid_argument("unknown database mode '" + s + "' (classed or full)");
}

void print_levels(const qcs::CircuitDatabase& db) {
    for (std::size_t s : db.level_sizes()) std::cout << s << " ";
    std::cout << "\n";
}

qcs::TieBreak parse_tie_break(const std::string& s) {
    if (s == "gates") return qcs::TieBreak::GateCount;
    if (s == "tdepth") return qcs::TieBreak::TDepth;
    throw std::invalid_argument("unknown tie-break '" + s + "' (gates or tdepth)");
}

qcs::CircuitDatabase obtain_db(const std::string& path, int n, int depth, qcs::DbMode mode, int threads,
                               qcs::TieBreak tie) {
    if (!path.empty()) {
        auto db = qcs::load(path);
        if (db.n_qubits() != n) throw std::invalid_argument("database " + path + " is for " +
                                                            std::to_string(db.n_qubits()) + " qubits, need " +
                                                            std::to_string(n));
        if (db.mode() != mode) throw std::invalid_argument("database " + path + " has the wrong mode for this search");
        return db;
    }
    qcs::GenerateOptions o;
    o.threads = threads;
    o.tie_break = tie;
    return qcs::generate(n, qcs::GateSetId::CliffordT, depth, mode, o);
}

int report(const qcs::SearchResult& r, double gen_s, double search_s, const std::string& out, const char* what) {
    std::printf("generation: %.3f s\nsearch: %.3f s\n", gen_s, search_s);
    if (!r.found) {
        std::printf("not found: no circuit with %s <= %d\n", what, r.proof_bound);
        return kNotFound;
    }
    std::printf("depth: %d\nt-depth: %d\nphase: %d\n", r.depth, r.t_depth, r.phase_exponent);
    std::cout << qcs::emit_circuit(r.circuit);
    if (!out.empty()) qcs::write_circuit_file(r.circuit, out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Clifford+T circuit synthesis"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads (0 = all)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a circuit database");
    int gen_n = 2, gen_d = 3;
    std::size_t gen_max = 0;
    std::string gen_out, gen_mode = "classed", gen_gs = "clifford-t", gen_tie = "gates";
    gen->add_option("-n,--qubits", gen_n, "qubits")->required();
    gen->add_option("-d,--depth", gen_d, "maximal depth")->required();
    gen->add_option("--mode", gen_mode, "classed or full");
    gen->add_option("--gate-set", gen_gs, "clifford-t or clifford");
    gen->add_option("--max-records", gen_max, "record budget (0 = none)");
    gen->add_option("--tie-break", gen_tie, "circuit kept per class: gates or tdepth");
    gen->add_option("-o,--output", gen_out, "QCDB1 output file");

    // search
    auto* search = app.add_subcommand("search", "synthesize a target");
    std::string s_target, s_db, s_mode = "depth", s_objective = "depth", s_out, s_tie = "gates";
    int s_depth = 6, s_anc = 0;
    search->add_option("-t,--target", s_target, "catalog name or JSON matrix file")->required();
    search->add_option("--db", s_db, "QCDB1 database (generated in memory if omitted)");
    search->add_option("-d,--max-depth", s_depth, "depth bound (T-depth bound in tdepth mode)");
    search->add_option("--mode", s_mode, "depth, tdepth or ancilla");
    search->add_option("-m,--ancillas", s_anc, "ancillas (ancilla mode)");
    search->add_option("--objective", s_objective, "depth or tdepth");
    search->add_option("--tie-break", s_tie, "tie-break of an in-memory database: gates or tdepth");
    search->add_option("-o,--output", s_out, "write the circuit here");

    // verify
    auto* verify = app.add_subcommand("verify", "check a circuit against a target");
    std::string v_circuit, v_target;
    verify->add_option("-c,--circuit", v_circuit, "circuit file")->required();
    verify->add_option("-t,--target", v_target, "catalog name or JSON matrix file")->required();

    // tpar
    auto* tpar = app.add_subcommand("tpar", "T-parallelize with ancillas");
    std::string t_circuit, t_out;
    int t_m = 0;
    bool t_merge = false;
    tpar->add_option("-c,--circuit", t_circuit, "circuit file")->required();
    tpar->add_option("-m,--ancillas", t_m, "ancillas");
    tpar->add_flag("--merge", t_merge, "merge repeated phase terms");
    tpar->add_option("-o,--output", t_out, "write the circuit here");

    // peephole
    auto* peep = app.add_subcommand("peephole", "windowed re-synthesis");
    std::string p_circuit, p_out;
    std::vector<std::string> p_dbs;
    qcs::PeepholeOptions p_opts;
    peep->add_option("-c,--circuit", p_circuit, "circuit file")->required();
    peep->add_option("--window", p_opts.window, "window length in layers");
    peep->add_option("--width", p_opts.max_width, "maximal window width in wires");
    peep->add_option("--passes", p_opts.max_passes, "pass budget");
    peep->add_option("--db", p_dbs, "classed databases (default: 1 qubit depth 4, 2 qubits depth 3)");
    peep->add_option("-o,--output", p_out, "write the circuit here");

    // cost
    auto* cost = app.add_subcommand("cost", "controlled-version cost accounting");
    std::string c_circuit;
    cost->add_option("-c,--circuit", c_circuit, "circuit file")->required();

    // clifford
    auto* cliff = app.add_subcommand("clifford", "generate the Clifford group");
    int cl_n = 2;
    bool cl_long = false;
    cliff->add_option("-n,--qubits", cl_n, "qubits")->required();
    cliff->add_flag("--long-run", cl_long, "allow the 3-qubit group");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            qcs::GenerateOptions o;
            o.threads = common.threads;
            o.max_records = gen_max;
            o.tie_break = parse_tie_break(gen_tie);
            o.on_level = [](int d, std::size_t size, double s) {
                std::fprintf(stderr, "depth %d: %zu records, %.3f s\n", d, size, s);
            };
            const auto t0 = Clock::now();
            const auto db = qcs::generate(gen_n, parse_gate_set(gen_gs), gen_d, parse_mode(gen_mode), o);
            print_levels(db);
            std::printf("generation: %.3f s\n", since(t0));
            if (!gen_out.empty()) qcs::save(db, gen_out);
            if (db.truncated()) {
                std::fprintf(stderr, "record budget reached after depth %d\n", db.max_depth());
                return kResource;
            }
            return kOk;
        }

        if (*search) {
            const qcs::RingMatrix target = qcs::load_target(s_target);
            qcs::SearchOptions so;
            so.threads = common.threads;
            if (s_objective == "tdepth")
                so.objective = qcs::Objective::TDepth;
            else if (s_objective != "depth")
                throw std::invalid_argument("unknown objective '" + s_objective + "'");
            const int n = target.n_qubits();
            auto t0 = Clock::now();
            if (s_mode == "depth") {
                const auto db = obtain_db(s_db, n, (s_depth + 1) / 2, qcs::DbMode::Classed, common.threads,
                                        parse_tie_break(s_tie));
                const double g = since(t0);
                t0 = Clock::now();
                const auto r = qcs::mitm_search(target, db, s_depth, so);
                return report(r, g, since(t0), s_out, "depth");
            }
            if (s_mode == "tdepth") {
                const auto cs = qcs::clifford_generate(n);
                const double g = since(t0);
                t0 = Clock::now();
                const auto r = qcs::mitm_search_tdepth(target, cs, s_depth);
                return report(r, g, since(t0), s_out, "T-depth");
            }
            if (s_mode == "ancilla") {
                const auto db = obtain_db(s_db, n + s_anc, (s_depth + 1) / 2, qcs::DbMode::Full, common.threads,
                                        parse_tie_break(s_tie));
                const double g = since(t0);
                t0 = Clock::now();
                const auto r = qcs::ancilla_search(target, s_anc, db, s_depth, so);
                return report(r, g, since(t0), s_out, "depth");
            }
            throw std::invalid_argument("unknown search mode '" + s_mode + "'");
        }

        if (*verify) {
            const qcs::Circuit c = qcs::read_circuit_file(v_circuit);
            const qcs::RingMatrix target = qcs::load_target(v_target);
            // Dense evaluation, independent of the layer kernels used during search.
            const qcs::RingMatrix u = qcs::reference::evaluate(c);
            if (c.n_ancillas() == 0) {
                if (u.n_qubits() != target.n_qubits()) throw std::invalid_argument("circuit and target widths differ");
                if (u == target) {
                    std::printf("equal: exact\n");
                    return kOk;
                }
                if (auto k = qcs::phase_between(u, target)) {
                    std::printf("equal: up to phase w^%d\n", *k);
                    return kOk;
                }
            } else {
                if (c.n_qubits() - c.n_ancillas() != target.n_qubits())
                    throw std::invalid_argument("circuit data width differs from the target");
                if (auto k = qcs::ancilla_phase(c, target)) {
                    std::printf("equal: on the ancilla-zero subspace, phase w^%d\n", *k);
                    return kOk;
                }
            }
            std::printf("not equal\n");
            return kNotFound;
        }

        if (*tpar) {
            const qcs::Circuit c = qcs::read_circuit_file(t_circuit);
            qcs::ParallelizeOptions po;
            po.merge_duplicates = t_merge;
            bool pure = true;
            long k = 0;
            for (const auto& g : c.gates()) {
                if (g.kind == qcs::GateKind::T) ++k;
                else if (g.kind != qcs::GateKind::CNOT) pure = false;
            }
            const qcs::Circuit out = pure ? qcs::parallelize(c, t_m, po) : qcs::parallelize_regions(c, t_m, po);
            std::printf("t-depth before: %d\nt-depth after: %d\n", qcs::t_depth(c), qcs::t_depth(out));
            if (pure) std::printf("bound: %ld\n", (k + t_m) / (t_m + 1));
            std::cout << qcs::emit_circuit(out);
            if (!t_out.empty()) qcs::write_circuit_file(out, t_out);
            return kOk;
        }

        if (*peep) {
            const qcs::Circuit c = qcs::read_circuit_file(p_circuit);
            std::vector<std::unique_ptr<qcs::CircuitDatabase>> owned;
            std::vector<const qcs::CircuitDatabase*> dbs(static_cast<std::size_t>(p_opts.max_width) + 1, nullptr);
            auto put = [&](qcs::CircuitDatabase db) {
                const auto w = static_cast<std::size_t>(db.n_qubits());
                if (w >= dbs.size()) return;
                owned.push_back(std::make_unique<qcs::CircuitDatabase>(std::move(db)));
                dbs[w] = owned.back().get();
            };
            if (p_dbs.empty()) {
                put(qcs::generate(1, qcs::GateSetId::CliffordT, 4, qcs::DbMode::Classed));
                if (p_opts.max_width >= 2) put(qcs::generate(2, qcs::GateSetId::CliffordT, 3, qcs::DbMode::Classed));
            }
            for (const auto& path : p_dbs) put(qcs::load(path));
            const auto t0 = Clock::now();
            const auto r = qcs::peephole(c, dbs, p_opts);
            std::printf("peephole: %.3f s, %d replacements\n", since(t0), r.replacements);
            std::printf("depth: %d -> %d\ngates: %d -> %d\nt-depth: %d -> %d\nphase: %d\n", c.depth(), r.circuit.depth(),
                        qcs::gate_count(c), qcs::gate_count(r.circuit), qcs::t_depth(c), qcs::t_depth(r.circuit),
                        r.phase_exponent);
            std::cout << qcs::emit_circuit(r.circuit);
            if (!p_out.empty()) qcs::write_circuit_file(r.circuit, p_out);
            return kOk;
        }

        if (*cost) {
            const qcs::Circuit c = qcs::read_circuit_file(c_circuit);
            const auto x = qcs::cost_vector(c);
            const auto y = qcs::controlled_cost(x);
            std::printf("cost (H, P, CNOT, T): %ld %ld %ld %ld\n", x.x_h, x.x_p, x.x_c, x.x_t);
            std::printf("controlled cost: %ld %ld %ld %ld\n", y.cost.x_h, y.cost.x_p, y.cost.x_c, y.cost.x_t);
            std::printf("controlled t-depth bound: %ld\n", y.t_depth_bound);
            return kOk;
        }

        if (*cliff) {
            if (cl_n >= 3 && !cl_long) throw qcs::ResourceError("the 3-qubit Clifford group needs --long-run");
            qcs::CliffordOptions co;
            if (cl_long) co.max_elements = 100'000'000;
            const auto t0 = Clock::now();
            const auto cs = qcs::clifford_generate(cl_n, co);
            std::printf("%zu\n", cs.size());
            std::fprintf(stderr, "generation: %.3f s\n", since(t0));
            return kOk;
        }
    } catch (const qcs::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIo;
    } catch (const qcs::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFormat;
    } catch (const qcs::ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kResource;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "error: out of memory\n");
        return kResource;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
