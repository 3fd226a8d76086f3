#include <doctest.h>

#include <string>

#include "lsys/svg.hpp"

using namespace lsys;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("svg documents are deterministic and well formed") {
    auto make = [] {
        SvgDocument doc;
        doc.add_polyline({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, true, SvgRole::control);
        doc.add_segments({{{1, 0}, {3, 0}}, {{3, 0}, {4, 1}}}, SvgRole::result);
        doc.add_points({{1, 0}, {3, 0}}, SvgRole::result);
        return doc.str();
    };
    const std::string a = make();
    CHECK(a == make());
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(count(a, "<svg") == 1);
    CHECK(count(a, "</svg>") == 1);
    CHECK(count(a, "<polygon class=\"control\"") == 1);
    CHECK(count(a, "<polyline class=\"result\"") == 2);
    CHECK(count(a, "<circle") == 2);
    CHECK(a.find("nan") == std::string::npos);
    CHECK(a.find("inf") == std::string::npos);
}

TEST_CASE("svg mapping fits the margin and flips y") {
    SvgDocument doc;
    doc.add_points({{0, 0}, {10, 10}}, SvgRole::result);
    const std::string s = doc.str();
    CHECK(s.find("cx=\"25.6\" cy=\"486.4\"") != std::string::npos);
    CHECK(s.find("cx=\"486.4\" cy=\"25.6\"") != std::string::npos);
}

TEST_CASE("empty and degenerate documents") {
    CHECK(SvgDocument{}.str().find("</svg>") != std::string::npos);
    SvgDocument one;
    one.add_points({{3, 3}}, SvgRole::control);
    CHECK(one.str().find("cx=\"256\" cy=\"256\"") != std::string::npos);
}
