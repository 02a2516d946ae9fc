#include <catch2/catch_amalgamated.hpp>

#include "tfd/config.hpp"
#include "tfd/table.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace tfd;
using Catch::Approx;

TEST_CASE("csv formatting") {
    Table t;
    t.name = "demo";
    t.columns = {"x", "label", "flag"};
    t.add_row({1.0 / 3.0, std::string("alpha"), true});
    t.add_row({-0.0, std::string("beta"), false});
    const std::string csv = to_csv(t);
    CHECK(csv == "x,label,flag\n0.33333333333333331,alpha,true\n-0,beta,false\n");

    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("json round trip preserves every cell (property)") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::uniform_int_distribution<int> shape(1, 5);
    for (int trial = 0; trial < 30; ++trial) {
        Table t;
        t.name = "r" + std::to_string(trial);
        const int cols = shape(rng);
        for (int c = 0; c < cols; ++c) t.columns.push_back("c" + std::to_string(c));
        const int rows = shape(rng);
        for (int r = 0; r < rows; ++r) {
            std::vector<Table::Cell> row;
            for (int c = 0; c < cols; ++c) {
                switch ((r + c) % 3) {
                    case 0: row.push_back(u(rng)); break;
                    case 1: row.push_back(std::string("s") + std::to_string(c)); break;
                    default: row.push_back((r + c) % 2 == 0);
                }
            }
            t.add_row(std::move(row));
        }
        Table back = table_from_json(to_json(t));
        REQUIRE(back.columns == t.columns);
        REQUIRE(back.rows.size() == t.rows.size());
        for (size_t r = 0; r < t.rows.size(); ++r) {
            for (size_t c = 0; c < t.columns.size(); ++c) {
                CHECK(back.rows[r][c] == t.rows[r][c]);  // doubles round-trip bit-exactly
            }
        }
        CHECK(to_json(back) == to_json(t));
    }
}

TEST_CASE("run config") {
    RunConfig cfg;
    CHECK(cfg.n_max == 40);
    CHECK(cfg.tol("tail") == 1e-10);
    CHECK_THROWS_AS(cfg.tol("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(cfg.set_tolerance("tail", -1.0), std::invalid_argument);

    SECTION("validation") {
        cfg.n_max = 0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        cfg.n_max = 4;
        cfg.format = "yaml";
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }

    SECTION("line parsing") {
        RunConfig c;
        apply_config_line(c, "n_max=12", 1);
        apply_config_line(c, "  format=json  # trailing comment", 2);
        apply_config_line(c, "tol.kms=1e-5", 3);
        apply_config_line(c, "", 4);
        apply_config_line(c, "# only comment", 5);
        CHECK(c.n_max == 12);
        CHECK(c.format == "json");
        CHECK(c.tol("kms") == 1e-5);
        CHECK_THROWS_AS(apply_config_line(c, "wat", 6), std::invalid_argument);
        CHECK_THROWS_AS(apply_config_line(c, "mystery=1", 7), std::invalid_argument);
        CHECK_THROWS_AS(apply_config_line(c, "n_max=abc", 8), std::invalid_argument);
    }
}
