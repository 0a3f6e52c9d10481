#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "scalefree/io.hpp"
#include "scalefree/rng.hpp"

using namespace scalefree;

TEST_CASE("fmt17 round-trips doubles bit-exactly") {
    SplitMix64 rng(123);
    for (int i = 0; i < 2000; ++i) {
        const double mag = std::exp((rng.uniform01() - 0.5) * 600.0);
        const double x = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * mag;
        CAPTURE(x);
        CHECK(parse_double(fmt17(x)) == x);
    }
    CHECK(parse_double(fmt17(0.0)) == 0.0);
    CHECK(parse_double(fmt17(5e-324)) == 5e-324);  // subnormal
    CHECK(fmt17(1.0).find(',') == std::string::npos);
}

TEST_CASE("parse_double rejects junk") {
    CHECK_THROWS_AS(parse_double("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
    CHECK(parse_double(" 2.5") == 2.5);
}

TEST_CASE("path CSV round trip") {
    SamplePath path;
    SplitMix64 rng(9);
    path.n = 300;
    path.dt = 1.0;
    for (std::size_t i = 0; i < path.n; ++i) path.values.push_back(rng.normal());
    path.epochs.push_back(0);
    path.signs.push_back(1);

    std::stringstream ss;
    write_path_csv(ss, path);
    const SamplePath back = read_path_csv(ss);
    CHECK(back.values == path.values);
    CHECK(back.dt == path.dt);
}

TEST_CASE("read_path_csv validates the header") {
    std::stringstream no_value("index,time\n0,1\n");
    CHECK_THROWS_AS(read_path_csv(no_value), std::invalid_argument);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_path_csv(empty), std::invalid_argument);
    std::stringstream bad_row("value\n1.0\nnot_a_number\n");
    CHECK_THROWS_AS(read_path_csv(bad_row), std::invalid_argument);
}
