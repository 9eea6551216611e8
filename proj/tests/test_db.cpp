#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "qcs/errors.hpp"
#include "qcs/reference.hpp"
#include "support.hpp"

using namespace qcs;

TEST_CASE("db: per-depth class counts") {
    const auto& db = test::db2();
    CHECK(db.level_sizes() == std::vector<std::size_t>{14, 104, 901, 6180, 37878});
    const CircuitDatabase one = generate(1, GateSetId::CliffordT, 3, DbMode::Classed);
    CHECK(one.level(1).size() < 6);
    const CircuitDatabase full = generate(2, GateSetId::CliffordT, 2, DbMode::Full);
    CHECK(full.level(1).size() > db.level(1).size());
}

TEST_CASE("db: stored circuits have their level depth and key") {
    const auto& db = test::db2();
    const Canonicalizer& canon = canonicalizer(2);
    for (int d = 1; d <= 3; ++d) {
        const DbLevel& l = db.level(d);
        for (std::size_t i = 0; i < l.size(); ++i) {
            const Circuit c = l.circuit(i);
            CHECK(c.depth() == d);
            CHECK(canon.key(evaluate(c)) == l.key(i));
            CHECK(gate_count(c) == l.gate_count(i));
            if (i > 0) CHECK(l.key(i - 1) < l.key(i));
        }
    }
}

TEST_CASE("db: matches serial reference generation") {
    const CircuitDatabase fast = generate(2, GateSetId::CliffordT, 3, DbMode::Classed);
    const CircuitDatabase ref = reference::generate(2, GateSetId::CliffordT, 3, DbMode::Classed);
    CHECK(fast == ref);
    const CircuitDatabase fast1 = generate(1, GateSetId::CliffordT, 6, DbMode::Full);
    CHECK(fast1 == reference::generate(1, GateSetId::CliffordT, 6, DbMode::Full));
}

TEST_CASE("db: matches pruning-free enumeration") {
    const auto levels = reference::brute_force_levels(2, GateSetId::CliffordT, 3);
    const auto& db = test::db2();
    for (int d = 1; d <= 3; ++d) {
        std::set<Key128> keys;
        for (std::size_t i = 0; i < db.level(d).size(); ++i) keys.insert(db.level(d).key(i));
        CHECK(keys == levels[static_cast<std::size_t>(d - 1)]);
    }
}

TEST_CASE("db: thread count does not change the result") {
    GenerateOptions one;
    one.threads = 1;
    GenerateOptions many;
    many.threads = 4;
    CHECK(generate(2, GateSetId::CliffordT, 4, DbMode::Classed, one) ==
          generate(2, GateSetId::CliffordT, 4, DbMode::Classed, many));
}

TEST_CASE("db: tie-break changes circuits, not classes") {
    GenerateOptions o;
    o.tie_break = TieBreak::TDepth;
    const CircuitDatabase t = generate(2, GateSetId::CliffordT, 4, DbMode::Classed, o);
    const CircuitDatabase g = generate(2, GateSetId::CliffordT, 4, DbMode::Classed);
    for (int d = 1; d <= 4; ++d) {
        REQUIRE(t.level(d).size() == g.level(d).size());
        for (std::size_t i = 0; i < t.level(d).size(); ++i) {
            CHECK(t.level(d).key(i) == g.level(d).key(i));
            CHECK(t_depth(t.level(d).circuit(i)) <= t_depth(g.level(d).circuit(i)));
        }
    }
}

TEST_CASE("db: record budget truncates") {
    GenerateOptions o;
    o.max_records = 200;
    const CircuitDatabase db = generate(2, GateSetId::CliffordT, 5, DbMode::Classed, o);
    CHECK(db.truncated());
    CHECK(db.total_records() <= 200);
    CHECK(db.max_depth() == 2);
}

TEST_CASE("db: lookup") {
    const auto& db = test::db2();
    Layer cx;
    cx.set_cnot(1, 0);
    const auto hit = lookup(db, class_key(db, layer_matrix(cx, 2)));
    REQUIRE(hit);
    CHECK(hit->first == 1);
    CHECK(class_key(db, evaluate(hit->second.circuit)) == class_key(db, layer_matrix(cx, 2)));
    CHECK(!lookup(db, Key128{1, 2}));
}

TEST_CASE("db: serialization") {
    const CircuitDatabase db = generate(2, GateSetId::CliffordT, 3, DbMode::Classed);
    const auto bytes = serialize(db);
    CHECK(deserialize(bytes) == db);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(deserialize(bad), FormatError);

    bad = bytes;
    bad[6] = 9;
    CHECK_THROWS_AS(deserialize(bad), VersionMismatchError);

    bad = bytes;
    bad.resize(bytes.size() / 2);
    CHECK_THROWS_AS(deserialize(bad), TruncatedFileError);

    bad = bytes;
    bad[bytes.size() - 20] ^= 0x01;
    CHECK_THROWS_AS(deserialize(bad), FormatError);

    bad = bytes;
    bad[bytes.size() - 1] ^= 0x40;
    CHECK_THROWS_AS(deserialize(bad), ChecksumError);

    bad = bytes;
    bad.push_back(0);
    CHECK_THROWS_AS(deserialize(bad), FormatError);

    const auto path = (std::filesystem::temp_directory_path() / "qcs_test_db.qcdb").string();
    save(db, path);
    CHECK(load(path) == db);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load(path), IoError);
}
