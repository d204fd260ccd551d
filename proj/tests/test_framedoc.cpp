#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/framedoc.hpp"

using namespace kripke;

namespace {

// Expect InvalidInput whose message contains every listed fragment.
void check_parse_error(const std::string& text, std::initializer_list<const char*> fragments) {
    try {
        parse_frame_document(text);
        FAIL("expected InvalidInput for:\n" << text);
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        for (const char* frag : fragments) {
            INFO("message: " << msg);
            CHECK(msg.find(frag) != std::string::npos);
        }
    }
}

void check_morphism_error(const std::string& text, std::initializer_list<const char*> fragments) {
    try {
        parse_morphism_document(text);
        FAIL("expected InvalidInput for:\n" << text);
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        for (const char* frag : fragments) {
            INFO("message: " << msg);
            CHECK(msg.find(frag) != std::string::npos);
        }
    }
}

} // namespace

TEST_CASE("frame document parses worlds, edges, labels, comments") {
    FrameDocument d = parse_frame_document(
        "# a triangle with a tail\n"
        "worlds: 4\n"
        "\n"
        "label: 0 start\n"
        "edge: 0 1\n"
        "edge: 1 2\n"
        "edge: 2 0\n"
        "edge: 2 3\n"
        "label: 3 end\n");
    CHECK(d.frame.n == 4);
    CHECK(d.frame.has(0, 1));
    CHECK(d.frame.has(2, 3));
    CHECK(!d.frame.has(3, 2));
    REQUIRE(d.labels.size() == 4);
    CHECK(d.labels[0] == "start");
    CHECK(d.labels[1] == "");
    CHECK(d.labels[3] == "end");
}

TEST_CASE("frame document printing is canonical and round-trips") {
    FrameDocument d;
    d.frame = chain(3);
    std::string once = print_frame_document(d);
    FrameDocument back = parse_frame_document(once);
    CHECK(back.frame == d.frame);
    CHECK(print_frame_document(back) == once);
    // A label survives the round trip.
    d.labels = {"", "mid", ""};
    std::string with_label = print_frame_document(d);
    FrameDocument back2 = parse_frame_document(with_label);
    REQUIRE(back2.labels.size() == 3);
    CHECK(back2.labels[1] == "mid");
    CHECK(print_frame_document(back2) == with_label);
}

TEST_CASE("round trip over every labeled frame up to size 3") {
    for (int n = 0; n <= 3; ++n) {
        for_each_frame(n, [&](const Frame& f) {
            FrameDocument d{f, {}};
            FrameDocument back = parse_frame_document(print_frame_document(d));
            CHECK(back.frame == f);
            return true;
        });
    }
}

TEST_CASE("frame document parse errors carry line numbers") {
    check_parse_error("", {"has no 'worlds'"});
    check_parse_error("edge: 0 1\n", {"line 1", "before"});
    check_parse_error("worlds: 2\nworlds: 3\n", {"line 2", "duplicate"});
    check_parse_error("worlds: -1\n", {"line 1"});
    check_parse_error("worlds: 2\nedge: 0 5\n", {"line 2", "out of range"});
    check_parse_error("worlds: 2\nedge: 0\n", {"line 2"});
    check_parse_error("worlds: 2\nbogus: 1\n", {"line 2", "unknown key"});
    check_parse_error("worlds: 2\nno colon here\n", {"line 2"});
    check_parse_error("worlds: 2\nlabel: 9 x\n", {"line 2", "label world"});
    check_parse_error("worlds: 2\nlabel: 0 a\nlabel: 0 b\n", {"line 3", "duplicate"});
}

TEST_CASE("morphism document parses and validates structure") {
    MorphismDocument m = parse_morphism_document(
        "dom-worlds: 3\n"
        "dom-edge: 0 1\n"
        "dom-edge: 1 2\n"
        "cod-worlds: 2\n"
        "cod-edge: 0 1\n"
        "send: 0 0\n"
        "send: 1 1\n"
        "send: 2 1\n");
    CHECK(m.dom.frame.n == 3);
    CHECK(m.cod.frame.n == 2);
    CHECK(m.map == std::vector<int>{0, 1, 1});
}

TEST_CASE("morphism document printing round-trips byte-identically") {
    PMorphism f = make_pmorphism(chain(3), chain(2), {0, 1, 1});
    MorphismDocument m = to_document(f);
    std::string once = print_morphism_document(m);
    MorphismDocument back = parse_morphism_document(once);
    CHECK(back.dom.frame == m.dom.frame);
    CHECK(back.cod.frame == m.cod.frame);
    CHECK(back.map == m.map);
    CHECK(print_morphism_document(back) == once);
}

TEST_CASE("to_pmorphism validates, to_document repackages") {
    MorphismDocument m;
    m.dom.frame = chain(2);
    m.cod.frame = chain(2);
    m.map = {0, 0};
    CHECK_THROWS_AS(to_pmorphism(m), InvalidInput);
    m.map = {1, 1};
    PMorphism f = to_pmorphism(m);
    CHECK(f.map == std::vector<int>{1, 1});
    MorphismDocument m2 = to_document(f);
    CHECK(m2.dom.frame == chain(2));
    CHECK(m2.map == f.map);
}

TEST_CASE("morphism document parse errors") {
    check_morphism_error("cod-worlds: 1\nsend: 0 0\n", {"dom-worlds"});
    check_morphism_error("dom-worlds: 1\nsend: 0 0\n", {"cod-worlds"});
    check_morphism_error(
        "dom-worlds: 2\ncod-worlds: 1\nsend: 0 0\n",
        {"send", "1"});  // world 1 never sent
    check_morphism_error(
        "dom-worlds: 1\ncod-worlds: 1\nsend: 0 0\nsend: 0 0\n",
        {"line 4", "duplicate"});
    check_morphism_error(
        "dom-worlds: 1\ncod-worlds: 1\nsend: 0 3\n",
        {"line 3", "out of range"});
    check_morphism_error(
        "dom-worlds: 1\ncod-worlds: 1\nedge: 0 0\nsend: 0 0\n",
        {"line 3", "unknown key"});
    check_morphism_error(
        "dom-worlds: 1\ndom-edge: 0 4\ncod-worlds: 1\nsend: 0 0\n",
        {"line 2", "out of range"});
}

TEST_CASE("file io reports the path on failure") {
    CHECK_THROWS_AS(read_frame_file("/nonexistent/definitely-missing.frame"), InvalidInput);
    try {
        read_frame_file("/nonexistent/definitely-missing.frame");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("definitely-missing.frame") != std::string::npos);
    }
    // Write then read back.
    FrameDocument d{fork(2), {}};
    std::string path = "framedoc_test_roundtrip.tmp";
    write_frame_file(path, d);
    FrameDocument back = read_frame_file(path);
    CHECK(back.frame == d.frame);
    std::remove(path.c_str());

    PMorphism f = make_pmorphism(chain(2), chain(1), {0, 0});
    std::string mpath = "framedoc_test_roundtrip_m.tmp";
    write_morphism_file(mpath, to_document(f));
    MorphismDocument mback = read_morphism_file(mpath);
    CHECK(to_pmorphism(mback) == f);
    std::remove(mpath.c_str());
}

TEST_CASE("dot output names every world and edge") {
    FrameDocument d{chain(2), {"low", "high"}};
    std::string dot = to_dot(d);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("low") != std::string::npos);
    CHECK(dot.find("high") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
