#include <doctest.h>

#include "msd/stemmer.hpp"

using msd::porter_stem;

TEST_CASE("inflected forms share one stem") {
    CHECK(porter_stem("stemming") == porter_stem("stemmed"));
    CHECK(porter_stem("stemming") == "stem");
    CHECK(porter_stem("connects") == porter_stem("connected"));
    CHECK(porter_stem("connections") == porter_stem("connecting"));
}

TEST_CASE("classic suffix rules") {
    // Hand-evaluated against the published rule tables.
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("ties") == "ti");
    CHECK(porter_stem("caress") == "caress");
    CHECK(porter_stem("cats") == "cat");
    CHECK(porter_stem("feed") == "feed");
    CHECK(porter_stem("agreed") == "agre");
    CHECK(porter_stem("plastered") == "plaster");
    CHECK(porter_stem("bled") == "bled");
    CHECK(porter_stem("motoring") == "motor");
    CHECK(porter_stem("sing") == "sing");
    CHECK(porter_stem("conflated") == "conflat");
    CHECK(porter_stem("sized") == "size");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("tanned") == "tan");
    CHECK(porter_stem("falling") == "fall");
    CHECK(porter_stem("hissing") == "hiss");
    CHECK(porter_stem("fizzed") == "fizz");
    CHECK(porter_stem("filing") == "file");
    CHECK(porter_stem("happy") == "happi");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("rational") == "ration");
    CHECK(porter_stem("digitizer") == "digit");
    CHECK(porter_stem("operator") == "oper");
    CHECK(porter_stem("feudalism") == "feudal");
    CHECK(porter_stem("hopefulness") == "hope");
    CHECK(porter_stem("formality") == "formal");
    CHECK(porter_stem("formative") == "form");
    CHECK(porter_stem("electrical") == "electr");
    CHECK(porter_stem("goodness") == "good");
    CHECK(porter_stem("revival") == "reviv");
    CHECK(porter_stem("adjustable") == "adjust");
    CHECK(porter_stem("adoption") == "adopt");
    CHECK(porter_stem("effective") == "effect");
    CHECK(porter_stem("probate") == "probat");
    CHECK(porter_stem("controlling") == "control");
    CHECK(porter_stem("rolling") == "roll");
}

TEST_CASE("short and unusual tokens pass through") {
    CHECK(porter_stem("io") == "io");
    CHECK(porter_stem("db") == "db");
    CHECK(porter_stem("x") == "x");
    CHECK(porter_stem("") == "");
}

TEST_CASE("stemming identifiers common in code") {
    CHECK(porter_stem("parser") == porter_stem("parsers"));
    CHECK(porter_stem("handler") == porter_stem("handlers"));
    CHECK(porter_stem("visitor") == porter_stem("visitors"));
    CHECK(porter_stem("initialize") == porter_stem("initialized"));
}
