#include "doctest.h"
#include "sfcsim/toml_lite.hpp"

using namespace sfcsim;
using nlohmann::json;

TEST_CASE("scalars, tables and arrays of tables") {
    const auto doc = parse_toml(R"(
# comment
title = "demo"   # trailing comment
count = 42
ratio = 2.5
negative = -30
flag = true
off = false

[owner]
name = "ops"

[owner.contact]
mail = "x@y"

[[servers]]
host = "a"
port = 1

[[servers]]
host = "b"
port = 2
)");
    CHECK(doc["title"] == "demo");
    CHECK(doc["count"] == 42);
    CHECK(doc["ratio"] == 2.5);
    CHECK(doc["negative"] == -30);
    CHECK(doc["flag"] == true);
    CHECK(doc["off"] == false);
    CHECK(doc["owner"]["name"] == "ops");
    CHECK(doc["owner"]["contact"]["mail"] == "x@y");
    REQUIRE(doc["servers"].size() == 2);
    CHECK(doc["servers"][1]["port"] == 2);
}

TEST_CASE("arrays and inline tables") {
    const auto doc = parse_toml(R"(
nodes = ["A", "B", "C"]
costs = [1, 2, 3]
mixed = [
  1,
  2,  # comment inside
]
link = { a = "A", b = "B", cost = 160 }
)");
    CHECK(doc["nodes"] == json::array({"A", "B", "C"}));
    CHECK(doc["costs"] == json::array({1, 2, 3}));
    CHECK(doc["mixed"] == json::array({1, 2}));
    CHECK(doc["link"]["cost"] == 160);
}

TEST_CASE("string escapes and dotted keys") {
    const auto doc = parse_toml(R"(
a.b.c = "x\ny\"z\""
)");
    CHECK(doc["a"]["b"]["c"] == "x\ny\"z\"");
}

TEST_CASE("numbers with underscores and exponents") {
    const auto doc = parse_toml("big = 1_000_000\nsmall = 1e-3\n");
    CHECK(doc["big"] == 1000000);
    CHECK(doc["small"] == 0.001);
}

TEST_CASE("parse errors carry a line number") {
    auto expect_error = [](const std::string& text, std::size_t line) {
        try {
            parse_toml(text);
            FAIL("expected TomlError for: " << text);
        } catch (const TomlError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_error("key = \n", 1);
    expect_error("a = 1\nb = ???\n", 2);
    expect_error("a = 1\na = 2\n", 2);
    expect_error("[table\n", 1);
    expect_error("x = \"unterminated\n", 1);
    expect_error("arr = [1, 2\n\n", 3);
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), TomlError);
}
