#include "hardinian/oeis.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>
#include <filesystem>
#include <fstream>

#include "hardinian/counting.hpp"

using namespace hardinian;

namespace {

const std::filesystem::path fixtures_dir{HARDINIAN_FIXTURES_DIR};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hardinian-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("parse_bfile basics") {
    const BFile b = parse_bfile("1 0\n2 1\n3 5");
    CHECK(b.offset == 1);
    REQUIRE(b.entries.size() == 3);
    CHECK(b.entries[0] == std::make_pair(1L, mpz_class(0)));
    CHECK(b.entries[2] == std::make_pair(3L, mpz_class(5)));
}

TEST_CASE("parse_bfile skips comments and blank lines") {
    const BFile b = parse_bfile("# comment\n\n1 0\n");
    REQUIRE(b.entries.size() == 1);
    CHECK(b.entries[0] == std::make_pair(1L, mpz_class(0)));
}

TEST_CASE("parse_bfile rejects gaps and malformed lines with line numbers") {
    CHECK_THROWS_WITH(parse_bfile("1 0\n3 5"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_bfile("1 0\noops"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_bfile("1 0\n2 xyz"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_AS(parse_bfile("5 1\n4 2"), std::runtime_error);
}

TEST_CASE("parse_bfile handles negative indices and big values") {
    const BFile b = parse_bfile("-2 9\n-1 123456789012345678901234567890\n0 1\n");
    CHECK(b.offset == -2);
    CHECK(b.entries[1].second == mpz_class("123456789012345678901234567890"));
}

TEST_CASE("parse_bfile tolerates CRLF and trailing spaces, rejects extra fields") {
    const BFile b = parse_bfile("1 7\r\n2 8 \r\n");
    CHECK(b.entries[1].second == 8);
    CHECK_THROWS_WITH(parse_bfile("1 7 9\n"), Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("oeis id validation") {
    CHECK(valid_oeis_id("A253217"));
    CHECK_FALSE(valid_oeis_id("B123456"));
    CHECK_FALSE(valid_oeis_id("A12345"));
    CHECK_FALSE(valid_oeis_id("A1234567"));
    CHECK_FALSE(valid_oeis_id("A12345x"));
    CHECK_THROWS_AS(parse_bfile("1 0", "B123"), std::invalid_argument);
}

TEST_CASE("write_bfile round-trips canonical files byte-exactly") {
    for (const char* name : {"b253217.txt", "b253026.txt", "h1_diag_fixture.txt"}) {
        const std::string text = slurp(fixtures_dir / name);
        const BFile parsed = parse_bfile(text);
        // canonical: strip comment lines, then compare modulo trailing newline
        std::string canonical;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            canonical += line;
            canonical += '\n';
        }
        CHECK(write_bfile(parsed) == canonical);
        // full round trip through the writer
        CHECK(write_bfile(parse_bfile(write_bfile(parsed))) == write_bfile(parsed));
    }
}

TEST_CASE("write/parse round trip on random sequences") {
    std::mt19937_64 rng(424243);
    for (int trial = 0; trial < 200; ++trial) {
        BFile b;
        b.offset = static_cast<long>(rng() % 41) - 20;
        const int len = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < len; ++i) {
            mpz_class v(static_cast<long>(rng() % 1000000) - 500000);
            const int blowup = static_cast<int>(rng() % 4);
            for (int s = 0; s < blowup; ++s) v *= v;  // occasionally enormous
            b.entries.emplace_back(b.offset + i, v);
        }
        const BFile back = parse_bfile(write_bfile(b));
        CHECK(back.offset == b.offset);
        REQUIRE(back.entries.size() == b.entries.size());
        CHECK(back.entries == b.entries);
        CHECK(write_bfile(back) == write_bfile(b));
    }
}

TEST_CASE("fetch serves warm caches offline and errors on cold ones") {
    TempDir cache;
    std::filesystem::copy_file(fixtures_dir / "b253217.txt", cache.path / "b253217.txt");
    const BFile warm = fetch("A253217", cache.path, /*offline=*/true);
    CHECK(warm.id == "A253217");
    CHECK_FALSE(warm.entries.empty());

    CHECK_THROWS_WITH(fetch("A253026", cache.path, /*offline=*/true),
                      Catch::Matchers::ContainsSubstring("cache miss"));
    CHECK_THROWS_AS(fetch("B123", cache.path, true), std::invalid_argument);
}

TEST_CASE("fetch over HTTP stores the cache atomically") {
    // Point the client at an unroutable base so the network path fails fast;
    // the cache must stay cold.
    TempDir cache;
    ::setenv("HARDINIAN_OEIS_BASE_URL", "http://127.0.0.1:1", 1);
    CHECK_THROWS_AS(fetch("A253217", cache.path, /*offline=*/false), std::runtime_error);
    ::unsetenv("HARDINIAN_OEIS_BASE_URL");
    CHECK_FALSE(std::filesystem::exists(cache.path / "b253217.txt"));
}

TEST_CASE("crosscheck of the r=1 diagonal against the closed-form fixture") {
    const BFile remote = parse_bfile(slurp(fixtures_dir / "h1_diag_fixture.txt"), "A000000");
    const Sequence local = diag_sequence(1, 5, CountMethod::closed);
    const CrosscheckReport report = crosscheck(local, remote);
    CHECK(report.pass);
    CHECK(report.checked.size() == 5);
}

TEST_CASE("crosscheck reports the offending index on mismatch") {
    const BFile remote = parse_bfile("1 0\n2 1\n3 5\n4 21\n5 85\n");
    Sequence local = diag_sequence(1, 5, CountMethod::closed);
    local.values[3] = 22;  // perturb n = 4
    const CrosscheckReport report = crosscheck(local, remote);
    CHECK_FALSE(report.pass);
    CHECK(report.mismatches() == 1);
    long bad = -1;
    for (const auto& e : report.checked)
        if (!e.equal) bad = e.local_index;
    CHECK(bad == 4);
}

TEST_CASE("crosscheck applies the affine index map") {
    // remote indexed from 11: remote(n) = n + 10
    const BFile remote = parse_bfile("11 0\n12 1\n13 5\n");
    const Sequence local = diag_sequence(1, 3, CountMethod::closed);
    const CrosscheckReport report = crosscheck(local, remote, IndexMap{1, 10});
    CHECK(report.pass);
    CHECK(report.checked.size() == 3);
}

TEST_CASE("crosscheck with empty overlap is an error") {
    const BFile remote = parse_bfile("100 7\n101 8\n");
    const Sequence local = diag_sequence(1, 5, CountMethod::closed);
    CHECK_THROWS_AS(crosscheck(local, remote), std::invalid_argument);
}

TEST_CASE("crosscheck outcome is symmetric under swapping with the inverse map") {
    const BFile remote = parse_bfile("11 0\n12 1\n13 5\n14 21\n15 86\n");  // last differs
    const Sequence local = diag_sequence(1, 5, CountMethod::closed);
    const CrosscheckReport forward = crosscheck(local, remote, IndexMap{1, 10});

    const Sequence remote_as_local = sequence_from_bfile(remote);
    const BFile local_as_remote = bfile_from_sequence(local);
    const CrosscheckReport backward =
        crosscheck(remote_as_local, local_as_remote, IndexMap{1, -10});
    CHECK(forward.pass == backward.pass);
    CHECK(forward.mismatches() == backward.mismatches());
}

TEST_CASE("committed A253217 fixture matches the computed r=2 diagonal") {
    const BFile remote = parse_bfile(slurp(fixtures_dir / "b253217.txt"), "A253217");
    const Sequence local = diag_sequence(2, 20, CountMethod::jacobi);
    const CrosscheckReport report = crosscheck(local, remote);
    CHECK(report.pass);
    CHECK(report.checked.size() >= 18);
}

TEST_CASE("committed A253026 fixture matches the r=1 table read by antidiagonals") {
    const BFile remote = parse_bfile(slurp(fixtures_dir / "b253026.txt"), "A253026");
    Sequence local;
    local.offset = 1;
    for (long d = 2; local.values.size() < 60; ++d)
        for (long i = 1; i < d; ++i) local.values.push_back(h1_rect_closed(i, d - i));
    const CrosscheckReport report = crosscheck(local, remote);
    CHECK(report.pass);
    CHECK(report.checked.size() >= 50);
}
