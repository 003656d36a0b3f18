#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "stueckelberg/config.hpp"

using namespace stueckelberg;

namespace {

bool throws_mentioning(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("parsing key-value text") {
  const Config c = Config::parse(
      "# header comment\n"
      "bloch.t1_us = 14\n"
      "\n"
      "  bloch.t2star_us=364  \n"
      "drive.amp_rad_us = 0.37   \n"
      "# trailing comment\n");
  CHECK(c.entries().size() == 3);
  CHECK(c.get_double("bloch.t1_us", 0) == 14.0);
  CHECK(c.get_double("bloch.t2star_us", 0) == 364.0);
  CHECK(c.get_double("drive.amp_rad_us", 0) == 0.37);
  CHECK(c.has("bloch.t1_us"));
  CHECK_FALSE(c.has("bloch.t1"));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(throws_mentioning([] { Config::parse("a.b = 1\nno equals sign here\n"); }, "line 2"));
  CHECK(throws_mentioning([] { Config::parse("x = 1\nx = 2\n"); }, "duplicate key"));
  CHECK(throws_mentioning([] { Config::parse("x = 1\nx = 2\n"); }, "line 2"));
  CHECK(throws_mentioning([] { Config::parse("bad key! = 2\n"); }, "bad key"));
  CHECK(throws_mentioning([] { Config::parse(".leading = 2\n"); }, "bad key"));
  CHECK(throws_mentioning([] { Config::parse("k =\n"); }, "no value"));
}

TEST_CASE("typed getters are strict about their type") {
  Config c;
  c.set("n", "12");
  c.set("x", "3.5");
  c.set("flag", "true");
  c.set("off", "0");
  c.set("word", "pulsed");

  CHECK(c.get_int("n", 0) == 12);
  CHECK(c.get_double("n", 0) == 12.0);
  CHECK(c.get_double("x", 0) == 3.5);
  CHECK(c.get_bool("flag", false));
  CHECK_FALSE(c.get_bool("off", true));
  CHECK(c.get_string("word", "") == "pulsed");

  // Fallbacks apply only to absent keys.
  CHECK(c.get_double("absent", 2.5) == 2.5);
  CHECK(c.get_int("absent", 7) == 7);
  CHECK(c.get_bool("absent", true));
  CHECK(c.get_string("absent", "dflt") == "dflt");

  CHECK_THROWS_AS((void)c.get_double("word", 0), std::invalid_argument);
  CHECK_THROWS_AS((void)c.get_int("x", 0), std::invalid_argument);  // 3.5 is not integral
  CHECK_THROWS_AS((void)c.get_bool("word", false), std::invalid_argument);
  CHECK_THROWS_AS((void)c.get_bool("n", false), std::invalid_argument);  // only true/1/false/0
  CHECK(throws_mentioning([&] { (void)c.get_double("word", 0); }, "is not a number"));
}

TEST_CASE("canonical serialization") {
  Config c;
  c.set("zeta.last", "3");
  c.set("alpha.first", "1");
  c.set("mid.key", "2");
  CHECK(c.serialize() ==
        "alpha.first = 1\n"
        "mid.key = 2\n"
        "zeta.last = 3\n");
  // Round trip through parse.
  CHECK(Config::parse(c.serialize()) == c);

  CHECK_THROWS_AS(c.set("white space", "1"), std::invalid_argument);
  c.set("alpha.first", "42");  // set overwrites silently
  CHECK(c.get_int("alpha.first", 0) == 42);
}

TEST_CASE("unknown keys are named with a suggestion") {
  Config c;
  c.set("bloch.t1_uss", "14");
  const std::vector<std::string> known{"bloch.t1_us", "bloch.t2star_us", "seed"};
  CHECK(throws_mentioning([&] { c.require_known_keys(known); },
                          "unknown config key 'bloch.t1_uss'"));
  CHECK(throws_mentioning([&] { c.require_known_keys(known); },
                          "nearest valid key is 'bloch.t1_us'"));

  Config ok;
  ok.set("seed", "3");
  ok.require_known_keys(known);  // no throw

  CHECK(nearest_key("sed", known) == "seed");
  CHECK(nearest_key("anything", {}) == "");
}
