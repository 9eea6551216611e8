#include "qcs/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(std::string_view tok, int line_no) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError("line " + std::to_string(line_no) + ": expected an integer, got '" + std::string(tok) + "'");
    return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    int n = -1, anc = 0, line_no = 0;
    bool layered = false, any_gate = false;
    std::vector<std::vector<Gate>> layers(1);
    std::istringstream in{std::string(text)};
    std::string raw;
    auto fail = [&](const std::string& msg) { throw FormatError("line " + std::to_string(line_no) + ": " + msg); };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line.starts_with("--")) {
            if (n < 0) fail("layer marker before the qubits header");
            if (!layered && any_gate) fail("layer markers must precede every gate");
            if (!layered) layers.clear();
            layers.emplace_back();
            layered = true;
            continue;
        }
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;

        if (tok[0] == "qubits") {
            if (n >= 0) fail("repeated qubits header");
            if (tok.size() != 2) fail("usage: qubits N");
            n = parse_int(tok[1], line_no);
            if (n < 1 || n > kMaxQubits) fail("qubit count must be in 1.." + std::to_string(kMaxQubits));
            continue;
        }
        if (n < 0) fail("the qubits header must come first");
        if (tok[0] == "ancillas") {
            if (any_gate) fail("ancillas header after gates");
            if (tok.size() != 2) fail("usage: ancillas K");
            anc = parse_int(tok[1], line_no);
            if (anc < 0 || anc >= n) fail("ancilla count must be in 0..qubits-1");
            continue;
        }

        Gate g{GateKind::H, 0, -1};
        static const std::pair<std::string_view, GateKind> singles[] = {
            {"H", GateKind::H}, {"P", GateKind::P}, {"PDG", GateKind::PDG}, {"T", GateKind::T}, {"TDG", GateKind::TDG}};
        bool known = false;
        for (const auto& [name, kind] : singles)
            if (tok[0] == name) {
                if (tok.size() != 2) fail(std::string(name) + " takes one wire");
                g = {kind, parse_int(tok[1], line_no), -1};
                known = true;
            }
        if (tok[0] == "CNOT") {
            if (tok.size() != 3) fail("CNOT takes a control and a target");
            g = {GateKind::CNOT, parse_int(tok[1], line_no), parse_int(tok[2], line_no)};
            if (g.wire == g.target) fail("CNOT control equals target");
            known = true;
        }
        if (!known) fail("unknown gate '" + std::string(tok[0]) + "'");
        if (g.wire < 0 || g.wire >= n || (g.kind == GateKind::CNOT && (g.target < 0 || g.target >= n)))
            fail("wire out of range for " + std::to_string(n) + " qubits");
        any_gate = true;
        layers.back().push_back(g);
    }
    if (n < 0) throw FormatError("missing qubits header");

    if (!layered) return schedule(n, layers.front(), anc);
    Circuit c(n, anc);
    for (const auto& gates : layers) {
        if (gates.empty()) {
            c.push_back(Layer{});
            continue;
        }
        const Circuit one = schedule(n, gates);
        if (one.depth() != 1) throw FormatError("gates inside one marked layer share a wire");
        c.push_back(one.layers().front());
    }
    return c;
}

std::string emit_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits() << "\n";
    if (c.n_ancillas()) out << "ancillas " << c.n_ancillas() << "\n";
    for (int d = 0; d < c.depth(); ++d) {
        out << "-- layer " << d << "\n";
        for (const Gate& g : Circuit(c.n_qubits(), {c.layers()[static_cast<std::size_t>(d)]}).gates()) {
            out << gate_kind_name(g.kind) << " " << g.wire;
            if (g.kind == GateKind::CNOT) out << " " << g.target;
            out << "\n";
        }
    }
    return out.str();
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_circuit(ss.str());
}

void write_circuit_file(const Circuit& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << emit_circuit(c);
    if (!f) throw IoError("write failed for " + path);
}

}  // namespace qcs
