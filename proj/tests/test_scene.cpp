#include "biharm/error.hpp"
#include "biharm/scene.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace biharm;

namespace {

const std::string kSlice = R"j({
  "ambient": {"model": "sphere", "dim": 3},
  "immersion": {"vars": ["u", "v"], "components": ["u", "v", "r"], "params": {"r": 1}},
  "warp": {"expr": "exp(t)", "interval": [-1, 1]},
  "analysis": {"points": [[0, 0], [0.5, -0.5]], "tolerance": 1e-8}
})j";

ErrorKind kind_of(const std::string& text) {
    try {
        parse_scene(text, "test.json");
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "scene accepted:\n" << text;
    return ErrorKind::usage;
}

std::string message_of(const std::string& text) {
    try {
        parse_scene(text, "test.json");
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Scene, ParsesAllBlocks) {
    const Scene s = parse_scene(kSlice, "slice.json");
    EXPECT_EQ(s.origin, "slice.json");
    EXPECT_EQ(s.immersion.m(), 2);
    EXPECT_EQ(s.immersion.n(), 3);
    EXPECT_EQ(s.immersion.params.at("r"), 1.0);
    ASSERT_TRUE(s.warped);
    EXPECT_EQ(s.warped->t_lo, -1.0);
    EXPECT_EQ(s.warped->t_hi, 1.0);
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_EQ(s.points[1][1], -0.5);
    EXPECT_EQ(s.tolerance, 1e-8);
}

TEST(Scene, FormatErrors) {
    EXPECT_EQ(kind_of("{"), ErrorKind::scene_format);
    EXPECT_EQ(kind_of("[]"), ErrorKind::scene_format);
    EXPECT_EQ(kind_of(R"j({"immersion": {"vars": ["u"], "components": ["u"]}})j"), ErrorKind::scene_format);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": 3}, "immersion": {"vars": ["u", "v"],
        "components": ["u", "v", "r"], "params": {"r": 1}}, "extra": 1})j"),
              ErrorKind::scene_format);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": "3"}, "immersion": {"vars": ["u", "v"],
        "components": ["u", "v", "1"]}})j"),
              ErrorKind::scene_format);
}

TEST(Scene, InvariantViolations) {
    const std::string bad_count = R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v"]}})j";
    EXPECT_EQ(kind_of(bad_count), ErrorKind::scene_invalid);
    EXPECT_NE(message_of(bad_count).find("component count"), std::string::npos);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "r"]}})j"),
              ErrorKind::scene_invalid);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "torus", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1"]}})j"),
              ErrorKind::scene_invalid);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1"]},
        "warp": {"expr": "t", "interval": [-1, 1]}})j"),
              ErrorKind::scene_invalid);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1"]},
        "warp": {"expr": "exp(k*t)", "interval": [-1, 1]}})j"),
              ErrorKind::scene_invalid);
    EXPECT_EQ(kind_of(R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1"]},
        "analysis": {"points": [[0, 0, 0]]}})j"),
              ErrorKind::scene_invalid);
}

TEST(Scene, DslErrorsKeepOffsetAndOrigin) {
    const std::string text = R"j({"ambient": {"model": "euclidean", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1+"]}})j";
    try {
        parse_scene(text, "bad.json");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
        const std::string msg = e.what();
        EXPECT_NE(msg.find("bad.json"), std::string::npos);
        EXPECT_NE(msg.find("components[2]"), std::string::npos);
    }
}

TEST(Scene, PowerWarpIsPositiveOnItsInterval) {
    const std::string text = R"j({"ambient": {"model": "sphere", "dim": 3},
        "immersion": {"vars": ["u", "v"], "components": ["u", "v", "1"]},
        "warp": {"expr": "(a*t + b)^(1/m)", "params": {"a": 1, "b": 2, "m": 2}, "interval": [-1, 3]}})j";
    EXPECT_NO_THROW(parse_scene(text));
}

TEST(Scene, ShippedScenesLoad) {
    int n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(BIHARM_SCENE_DIR)) {
        SCOPED_TRACE(entry.path().string());
        EXPECT_NO_THROW(load_scene(entry.path()));
        ++n;
    }
    EXPECT_GE(n, 5);
    EXPECT_THROW(load_scene("/nonexistent/scene.json"), SceneError);
}

TEST(Points, ListsAndGrids) {
    const auto a = parse_points("0,1; 2.5,-3", 2);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[1], (std::vector<double>{2.5, -3.0}));
    const auto g = parse_points("grid:0:1:3,-1:1:2", 2);
    ASSERT_EQ(g.size(), 6u);
    for (const auto& p : g) EXPECT_EQ(p.size(), 2u);
    EXPECT_THROW(parse_points("0,1,2", 2), UsageError);
    EXPECT_THROW(parse_points("0,x", 2), UsageError);
    EXPECT_THROW(parse_points("grid:0:1:3", 2), UsageError);
}

TEST(Points, Ranges) {
    const Range r = parse_range("-1:2:4");
    EXPECT_EQ(r.lo, -1.0);
    EXPECT_EQ(r.hi, 2.0);
    EXPECT_EQ(r.count, 4);
    EXPECT_EQ(linspace(r), (std::vector<double>{-1.0, 0.0, 1.0, 2.0}));
    EXPECT_EQ(parse_range("0:1").count, 0);
    EXPECT_THROW(parse_range("0"), UsageError);
    EXPECT_THROW(parse_range("0:1:x"), UsageError);
}
