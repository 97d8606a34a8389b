#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "toeplitz/rational.hpp"
#include "toeplitz/sequence_io.hpp"

using namespace toeplitz;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 1) - Rat(4, 7) - Rat(3, 14) == Rat(3, 14));
    CHECK(Rat(3, 7) * Rat(3, 6) == Rat(3, 14));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(1, -2).num == -1);
    CHECK(Rat(0, 5) == Rat(0, 1));
    CHECK(Rat(7, 10) > Rat(3, 5));
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse_block handles digits and negatives") {
    Sequence b = parse_block("0100");
    CHECK(b == Sequence{0, 1, 0, 0});
    CHECK(parse_block("1-101-10") == Sequence{1, -1, 0, 1, -1, 0});
    CHECK(render_block(parse_block("1-10")) == "1-0");  // '-1' renders as '-'
    CHECK_THROWS(parse_block(""));
    CHECK_THROWS(parse_block("01x0"));
    CHECK_THROWS(parse_block("01-"));
}

TEST_CASE("sequence file round trip is the identity") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        SequenceFile f;
        int alpha_size = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < alpha_size; ++i) f.alphabet.push_back(i - 1);
        std::size_t len = rng() % 5000;
        f.payload.resize(len);
        for (auto& s : f.payload)
            s = static_cast<std::int8_t>(f.alphabet[rng() % f.alphabet.size()]);
        f.metadata["scale"] = "3^k";
        f.metadata["construction"] = "readout";

        auto path = temp_path("toepseq_roundtrip.seq");
        write_sequence_file(path, f);
        auto g = read_sequence_file(path);
        CHECK(g.alphabet == f.alphabet);
        CHECK(g.payload == f.payload);
        CHECK(g.metadata.at("scale") == "3^k");
        CHECK(g.metadata.at("construction") == "readout");
    }
}

TEST_CASE("sequence file rejects malformed input") {
    auto path = temp_path("toepseq_bad.seq");

    SUBCASE("bad magic") {
        std::ofstream(path) << "wrong v1 alphabet=0,1 length=0\n";
        CHECK_THROWS(read_sequence_file(path));
    }
    SUBCASE("truncated payload") {
        std::ofstream(path) << "toepseq v1 alphabet=0,1 length=10\nab";
        CHECK_THROWS(read_sequence_file(path));
    }
    SUBCASE("trailing bytes") {
        std::ofstream out(path);
        out << "toepseq v1 alphabet=0,1 length=1\n";
        out.put(0);
        out.put(0);
        out.close();
        CHECK_THROWS(read_sequence_file(path));
    }
    SUBCASE("payload byte outside alphabet") {
        std::ofstream out(path);
        out << "toepseq v1 alphabet=0,1 length=1\n";
        out.put(7);
        out.close();
        CHECK_THROWS(read_sequence_file(path));
    }
    SUBCASE("symbol not in alphabet on write") {
        SequenceFile f;
        f.alphabet = {0, 1};
        f.payload = {0, 5};
        CHECK_THROWS(write_sequence_file(path, f));
    }
    SUBCASE("metadata with spaces") {
        SequenceFile f;
        f.alphabet = {0};
        f.metadata["note"] = "has space";
        CHECK_THROWS(write_sequence_file(path, f));
    }
}

TEST_CASE("wrap collects the distinct symbols") {
    auto f = SequenceFile::wrap(Sequence{1, 0, -1, 1, 1});
    CHECK(f.alphabet == std::vector<int>{-1, 0, 1});
    CHECK(f.payload.size() == 5);
}
