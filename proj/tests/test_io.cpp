#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sigtree/errors.hpp"
#include "sigtree/io.hpp"
#include "sigtree/signature.hpp"

using namespace sigtree;

TEST_SUITE("io") {

TEST_CASE("CSV with and without header") {
  std::istringstream plain("0,0\n1,0\n1,1\n");
  CHECK(io::read_path_csv(plain) == PolyPath(2, {0, 0, 1, 0, 1, 1}));

  std::istringstream header("x1, x2\n0,0\n\n1.5,-2e-1\n");
  CHECK(io::read_path_csv(header) == PolyPath(2, {0, 0, 1.5, -0.2}));

  std::istringstream timed("t,x1\n0,1\n0.5,2\n2,0\n");
  const PolyPath x = io::read_path_csv(timed);
  CHECK(x.dim() == 1);
  CHECK(x.times() == std::vector<double>{0, 0.5, 2});

  std::istringstream leading("0,1,1\n1,2,2\n");
  const PolyPath y = io::read_path_csv(leading, true);
  CHECK(y.dim() == 2);
  CHECK(y.time(1) == 1.0);
}

TEST_CASE("CSV errors carry line and column") {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      io::read_path_csv(in);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(error_of("0,0\n1,zz\n") == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(error_of("x,y\n0,0\n1\n") == std::pair<std::size_t, std::size_t>{3, 2});
  CHECK(error_of("0,0\n1,nan\n") == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(error_of("x,y\n").first == 1);
  std::istringstream unsorted("t,x\n0,0\n0,1\n");
  CHECK_THROWS_AS(io::read_path_csv(unsorted), ValidationError);
  CHECK_THROWS_AS(io::read_path_csv_file("/nonexistent/path.csv"), ValidationError);
}

TEST_CASE("CSV round trip is exact") {
  std::mt19937_64 rng(70);
  const PolyPath x = oracle::random_path(rng, 3, 7);
  std::stringstream buf;
  io::write_path_csv(buf, x);
  CHECK(io::read_path_csv(buf) == x);
}

TEST_CASE("tensor JSON round trip is exact") {
  std::mt19937_64 rng(71);
  const GroupElement s = sig(oracle::random_path(rng, 3, 6), 4);
  const std::string text = io::dump(io::to_json(s));
  CHECK(text.find("\"dim\":3") != std::string::npos);
  const TensorSeries back = io::tensor_from_json(io::parse(text));
  CHECK(back == s.series());
  CHECK(io::dump(io::to_json(back)) == text);
}

TEST_CASE("tensor JSON validation") {
  CHECK_THROWS_AS(io::tensor_from_json(io::parse(R"({"dim":2,"depth":1,"levels":[[1],[1]]})")), ValidationError);
  CHECK_THROWS_AS(io::tensor_from_json(io::parse(R"({"dim":2,"levels":[[1],[1,2]]})")), ValidationError);
  CHECK_THROWS_AS(io::tensor_from_json(io::parse(R"({"dim":"a","depth":1,"levels":[]})")), ValidationError);
  try {
    io::parse("{\n  \"dim\": 2,\n  \"depth\": ]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(io::dump(io::json(0.1)) == "0.10000000000000001");
  CHECK(io::dump(io::json(1.0)) == "1");
  CHECK(io::dump(io::json{{"b", 2}, {"a", nullptr}}) == R"({"a":null,"b":2})");
}

TEST_CASE("form JSON") {
  const Polynomial1Form f =
      io::form_from_json(io::parse(R"({"terms":[{"alpha":[1,0],"letter":2,"coef":1.5}]})"), 2);
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].coef == 1.5);
  CHECK(io::form_from_json(io::parse(R"([{"alpha":[0],"letter":1,"coef":1}])"), 1).degree() == 0);
  CHECK_THROWS_AS(io::form_from_json(io::parse(R"([{"alpha":[0],"letter":2,"coef":1}])"), 1), ValidationError);
  CHECK_THROWS_AS(io::form_from_json(io::parse(R"({"terms":[{"letter":1}]})"), 1), ValidationError);
}

}  // TEST_SUITE
