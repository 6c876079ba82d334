#include "deepesn/data.hpp"
#include "deepesn/errors.hpp"
#include "deepesn/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace deepesn;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path;
}

std::filesystem::path laser_file()
{
    return std::filesystem::path(DEEPESN_SOURCE_DIR) / "data" / "santafe_laser.txt";
}

} // namespace

TEST_CASE("NARMA-10 recurrence")
{
    SUBCASE("zero inputs from zero history")
    {
        const auto task = narma_from_inputs(std::vector<double>(5, 0.0));
        CHECK(task.targets[0] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(task.targets[1] == doctest::Approx(0.1305).epsilon(1e-15));
        CHECK(task.train_len == 5);
        CHECK(task.test_len == 0);
    }
    SUBCASE("offset-only coefficients give a constant target")
    {
        NarmaParams p;
        p.state_coeff = 0.0;
        p.sum_coeff = 0.0;
        p.input_coeff = 0.0;
        p.offset = 0.42;
        const auto task = generate_narma10(200, 3, p);
        for (double y : task.targets) CHECK(y == 0.42);
    }
    SUBCASE("input cross term enters after the order delay")
    {
        // u = (0.5, 0, ..., 0, 0.5, 0.5): at t = 12 the term u(2)*u(11) is 0,
        // at t = 11 the term is u(1)*u(10) = 0.25
        std::vector<double> u(12, 0.0);
        u[0] = 0.5;
        u[9] = 0.5;
        NarmaParams p;
        p.state_coeff = 0.0;
        p.sum_coeff = 0.0;
        p.offset = 0.0;
        const auto task = narma_from_inputs(u, p);
        for (std::size_t t = 0; t < 10; ++t) CHECK(task.targets[t] == 0.0);
        CHECK(task.targets[10] == doctest::Approx(1.5 * 0.25));
        CHECK(task.targets[11] == 0.0);
    }
    SUBCASE("generated series: inputs in range, finite, deterministic")
    {
        const auto a = generate_narma10(10000, 1);
        const auto b = generate_narma10(10000, 1);
        const auto c = generate_narma10(10000, 2);
        CHECK(a.inputs == b.inputs);
        CHECK(a.targets == b.targets);
        CHECK(a.inputs != c.inputs);
        for (double u : a.inputs) {
            CHECK(u >= 0.0);
            CHECK(u <= 0.5);
        }
        for (double y : a.targets) CHECK(std::isfinite(y));
        CHECK_NOTHROW(a.validate());
    }
    SUBCASE("divergence guard gives up after ten seeds")
    {
        NarmaParams p;
        p.offset = 5e3;
        CHECK_THROWS_AS(generate_narma10(20, 1, p), Error);
    }
    CHECK_THROWS_AS(generate_narma10(0, 1), InvalidArgument);
}

TEST_CASE("load_laser")
{
    const auto path = write_temp("deepesn_laser_small.txt", "85\n170\n");
    const auto scaled = load_laser(path, 0.01);
    REQUIRE(scaled.size() == 2);
    CHECK(scaled[0] == doctest::Approx(0.85).epsilon(1e-15));
    CHECK(scaled[1] == doctest::Approx(1.70).epsilon(1e-15));
    CHECK(load_laser(path, 1.0) == std::vector<double>{85.0, 170.0});

    SUBCASE("write-back at scale 1 is the identity")
    {
        const auto raw = write_temp("deepesn_laser_rt.txt", "86\n141\n95\n41\n");
        const auto once = load_laser(raw, 1.0);
        std::ostringstream back;
        for (double v : once) back << format_exact(v) << '\n';
        CHECK(load_laser(write_temp("deepesn_laser_rt2.txt", back.str()), 1.0) == once);
    }
    SUBCASE("comma format")
    {
        const auto csv = write_temp("deepesn_laser_comma.txt", "1,2,3\n4,5\n");
        CHECK(load_laser(csv, 1.0, LaserFormat::comma) == std::vector<double>{1, 2, 3, 4, 5});
    }
    SUBCASE("errors")
    {
        CHECK_THROWS_AS(load_laser("/nonexistent/laser.txt"), DataError);
        CHECK_THROWS_AS(load_laser(write_temp("deepesn_laser_empty.txt", "\n\n")), DataError);
        try {
            load_laser(write_temp("deepesn_laser_bad.txt", "1\n2\nabc\n"));
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
    }
    SUBCASE("bundled Santa Fe series supplies train 5000 + test 5092")
    {
        const auto series = load_laser(laser_file());
        CHECK(series.size() >= 10093);
        const auto task = next_step_task(series, 5000, 5092);
        CHECK(task.train_len == 5000);
        CHECK(task.test_len == 5092);
        const auto parts = split(task);
        CHECK(parts.train_inputs.size() == 5000);
        CHECK(parts.test_targets.size() == 5092);
        CHECK(series[0] == doctest::Approx(0.86));
    }
}

TEST_CASE("next_step_task and split")
{
    const std::vector<double> series{1, 2, 3, 4};
    const auto task = next_step_task(series, 2, 1);
    const auto parts = split(task);
    CHECK(parts.train_inputs == std::vector<double>{1, 2});
    CHECK(parts.train_targets == std::vector<double>{2, 3});
    CHECK(parts.test_inputs == std::vector<double>{3});
    CHECK(parts.test_targets == std::vector<double>{4});

    SUBCASE("constant series")
    {
        const auto c = next_step_task(std::vector<double>(10, 0.3), 5, 4);
        CHECK(c.inputs == c.targets);
    }
    SUBCASE("targets are the inputs shifted by one everywhere")
    {
        std::vector<double> s(300);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(0.1 * double(i));
        const auto t = next_step_task(s, 200, 99);
        for (std::size_t i = 0; i + 1 < t.inputs.size(); ++i) CHECK(t.targets[i] == t.inputs[i + 1]);
    }
    SUBCASE("exact fit leaves no residual samples")
    {
        const auto t = next_step_task(std::vector<double>(11, 1.0), 6, 4);
        const auto p = split(t);
        CHECK(p.train_inputs.size() + p.test_inputs.size() == t.inputs.size());
    }
    SUBCASE("NARMA resplit into 5000 / 5000 with an aligned boundary")
    {
        const auto narma = resplit(generate_narma10(10000, 4), 5000, 5000);
        const auto p = split(narma);
        CHECK(p.train_inputs.size() == 5000);
        CHECK(p.test_inputs.size() == 5000);
        CHECK(p.train_targets.back() == narma.targets[4999]);
        CHECK(p.test_inputs.front() == narma.inputs[5000]);
        CHECK_THROWS_AS(resplit(narma, 5000, 5001), DimensionError);
    }
    try {
        next_step_task(series, 3, 1);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("at least 5") != std::string::npos);
    }
}

TEST_CASE("TimeSeriesTask validation and CSV export")
{
    TimeSeriesTask bad{"x", {1, 2}, {1}, 1, 0};
    CHECK_THROWS_AS(bad.validate(), DimensionError);
    TimeSeriesTask nan{"x", {1, NAN}, {1, 2}, 1, 0};
    CHECK_THROWS_AS(nan.validate(), DataError);

    const auto path = std::filesystem::temp_directory_path() / "deepesn_task.csv";
    write_task_csv(narma_from_inputs({0.0, 0.0}), path);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "t,u,y_tg\n1,0,0.10000000000000001\n2,0,0.1305\n");
}
