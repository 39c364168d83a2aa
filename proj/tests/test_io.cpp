#include <random>
#include <sstream>

#include <doctest.h>

#include "mpe/io.hpp"
#include "mpe/rng.hpp"

using namespace mpe;

TEST_CASE("format_double emits 12 significant digits and no negative zero") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(1e-5) == "1e-05");
}

TEST_CASE("formatted doubles survive a parse/format round trip") {
    std::mt19937 gen(101);
    std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
    std::uniform_int_distribution<int> exponent(-12, 12);
    for (int i = 0; i < 2000; ++i) {
        const double v = mantissa(gen) * std::pow(10.0, exponent(gen));
        const std::string once = format_double(v);
        const std::string twice = format_double(std::stod(once));
        CHECK(once == twice);
    }
}

TEST_CASE("csv writer and parser invert each other") {
    std::ostringstream out;
    CsvWriter w(out);
    w.comment("seed = 7");
    w.header({"a", "b"});
    w.row({1.5, -2.25e-7});
    w.row({0.0, 3.0});

    std::istringstream in(out.str());
    const CsvTable table = parse_csv(in);
    CHECK(table.comments == std::vector<std::string>{"seed = 7"});
    CHECK(table.columns == std::vector<std::string>{"a", "b"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][0] == 1.5);
    CHECK(table.rows[0][1] == -2.25e-7);

    std::ostringstream rewritten;
    write_csv(rewritten, table);
    CHECK(rewritten.str() == out.str());
}

TEST_CASE("csv parser rejects malformed input") {
    std::istringstream ragged("a,b\n1.0\n");
    CHECK_THROWS(parse_csv(ragged));
    std::istringstream text("a,b\n1.0,hello\n");
    CHECK_THROWS(parse_csv(text));
    std::istringstream empty("");
    CHECK_THROWS(parse_csv(empty));
}

TEST_CASE("config files parse to key/value maps") {
    std::istringstream in(
        "# engine configuration\n"
        "kappa = 0.5\n"
        "theta_steps=200   # inline comment\n"
        "\n"
        "out = data.csv\n");
    const auto values = parse_config_file(in);
    REQUIRE(values.size() == 3);
    CHECK(values.at("kappa") == "0.5");
    CHECK(values.at("theta_steps") == "200");
    CHECK(values.at("out") == "data.csv");
}

TEST_CASE("config files reject duplicates and malformed lines") {
    std::istringstream dup("a = 1\na = 2\n");
    CHECK_THROWS(parse_config_file(dup));
    std::istringstream bare("just a line\n");
    CHECK_THROWS(parse_config_file(bare));
    std::istringstream noval("key =\n");
    CHECK_THROWS(parse_config_file(noval));
}

TEST_CASE("counter rng is a pure function of its key") {
    const CounterRng a(12345), b(12345), c(54321);
    CHECK(a.uniform(3, 1000) == b.uniform(3, 1000));
    CHECK(a.uniform(3, 1000) != c.uniform(3, 1000));
    CHECK(a.uniform(3, 1000) != a.uniform(4, 1000));
    CHECK(a.uniform(3, 1000) != a.uniform(3, 1001));
}

TEST_CASE("counter rng draws are uniform enough for a coarse moment check") {
    const CounterRng rng(777);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform(0, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}
