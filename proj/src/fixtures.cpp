#include "pinch/fixtures.hpp"

#include <filesystem>
#include <fstream>

#include "pinch/parse.hpp"

namespace pinch::fixtures {

FamilyFile simple() {
    FamilyFile f;
    f.coords = {intern_var("z1")};
    f.params = {intern_var("t")};
    f.forms = {QuadraticFamily::from_poly(parse_polynomial("z1^2 + t^2"), f.coords)};
    return f;
}

FamilyFile two_quadrics() {
    FamilyFile f;
    f.coords = {intern_var("z1"), intern_var("z2")};
    f.params = {intern_var("t")};
    f.forms = {
        QuadraticFamily::from_poly(parse_polynomial("z1^2 + z2^2 + z1 t + 1"), f.coords),
        QuadraticFamily::from_poly(parse_polynomial("z1^2 + z2^2 + t^2"), f.coords),
    };
    return f;
}

FeynmanGraph bubble() {
    FeynmanGraph g;
    g.vertices = {"a", "b"};
    g.edges = {{"e1", "a", "b", "m1", GaussianRational(1)},
               {"e2", "a", "b", "m2", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

FeynmanGraph sunrise() {
    FeynmanGraph g;
    g.vertices = {"a", "b"};
    g.edges = {{"e1", "a", "b", "m1", GaussianRational(1)},
               {"e2", "a", "b", "m2", GaussianRational(1)},
               {"e3", "a", "b", "m3", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

FeynmanGraph nested_bubble() {
    FeynmanGraph g;
    g.vertices = {"a", "c", "b"};
    g.edges = {{"e1", "a", "c", "m", GaussianRational(1)},
               {"e2", "c", "b", "m", GaussianRational(1)},
               {"e3", "c", "b", "m", GaussianRational(1)},
               {"e4", "b", "a", "m", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

std::vector<std::string> write_examples(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    auto put = [&](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(dir) / name);
        if (!out) throw std::runtime_error("cannot write " + name + " under " + dir);
        out << body;
        written.push_back(name);
    };
    put("simple.json", family_to_json(simple()));
    put("two_quadrics.json", family_to_json(two_quadrics()));
    put("bubble.json", graph_to_json(bubble()));
    put("sunrise.json", graph_to_json(sunrise()));
    put("nested_bubble.json", graph_to_json(nested_bubble()));
    return written;
}

} // namespace pinch::fixtures
