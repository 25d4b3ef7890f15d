#include <doctest.h>

#include "dcs/error.hpp"
#include "dcs/label.hpp"

using namespace dcs;

TEST_CASE("label canonical text round-trips") {
    Label get1{"get", {1}};
    CHECK(get1.str() == "get.1");
    CHECK(Label::parse("get.1") == get1);
    CHECK(Label::parse("accept") == Label{"accept", {}});
    CHECK(Label::parse("x.0.12").indices == std::vector<int32_t>{0, 12});
    CHECK(Label::parse(Label{"ret", {0, 3, 7}}.str()) == Label{"ret", {0, 3, 7}});
}

TEST_CASE("label order is name first, then numeric indices") {
    CHECK(Label::parse("a") < Label::parse("b"));
    CHECK(Label::parse("get.2") < Label::parse("get.10")); // numeric, not text
    CHECK(Label::parse("get") < Label::parse("get.0"));
    CHECK(Label::parse("get.1.2") < Label::parse("get.2"));
}

TEST_CASE("label parse rejects malformed text") {
    CHECK_THROWS_AS(Label::parse(""), Error);
    CHECK_THROWS_AS(Label::parse("get."), Error);
    CHECK_THROWS_AS(Label::parse("get.x"), Error);
    CHECK_THROWS_AS(Label::parse("get.1x"), Error);
}
